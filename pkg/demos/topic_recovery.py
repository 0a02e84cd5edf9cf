"""Watch the topic model recover a planted factorization.

A nonnegative matrix with known low-rank structure is factorized from a
random start; the relative reconstruction error should fall by orders of
magnitude and never increase between epochs. Run it with
``python3 demos/topic_recovery.py``.
"""

from __future__ import annotations

import numpy as np

from venuerec import NmfConfig, fit_nmf, transform
from venuerec.synthetic import planted_low_rank
from venuerec.text import SparseVector


def main() -> None:
    print("=== plant a rank-8 matrix ===")
    matrix = planted_low_rank(num_docs=120, num_terms=200, num_topics=8, seed=1)
    print(f"matrix: {matrix.shape[0]} documents x {matrix.shape[1]} terms, "
          f"built as a product of rank-8 nonnegative factors\n")

    print("=== factorize it back ===")
    config = NmfConfig(num_topics=8, epochs=40, seed=0, tolerance=0.0)
    model, doc_topic = fit_nmf(matrix, config)
    trace = model.error_trace
    print("relative error by epoch (every 5th):")
    for epoch in range(0, len(trace), 5):
        bar = "#" * max(1, int(60 * trace[epoch] / trace[0]))
        print(f"  epoch {epoch + 1:3d}  {trace[epoch]:.5f}  {bar}")
    print(f"final error after {len(trace)} epochs: {trace[-1]:.2e}")
    drops = [after - before for before, after in zip(trace, trace[1:])]
    print(f"largest between-epoch increase: {max(drops):.2e} "
          "(never positive beyond rounding)\n")

    print("=== topics are directions documents project onto ===")
    sample = 7
    weights = doc_topic[sample]
    top = np.argsort(-weights)[:3]
    shares = weights / weights.sum()
    print(f"document {sample} decomposes into topics "
          + ", ".join(f"{t} ({shares[t]:.0%})" for t in top))

    vector = SparseVector.from_dense(matrix[sample])
    unseen = transform(vector, model)
    print(f"transforming the same row as an unseen document agrees on the "
          f"dominant topic: {int(np.argmax(unseen))} vs {int(top[0])}")


if __name__ == "__main__":
    main()
