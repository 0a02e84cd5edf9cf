"""HTTP access to one trained bundle.

The service is a thin stateless layer: the bundle is loaded once and every
request is answered purely from it, so identical requests give identical
responses. All error responses share one JSON shape with an error code and
a human-readable message.
"""

from __future__ import annotations

import socket

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .bundle import ModelBundle
from .recommend import Explanation, recommend

__all__ = ["RecommendRequest", "create_app", "serve"]


class RecommendRequest(BaseModel):
    """Body of POST /recommend; every field has a usable default."""

    title: str = ""
    abstract: str = ""
    keywords: list[str] = Field(default_factory=list)
    k: int = 5
    top_topics: int = 3
    terms_per_topic: int = 5


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


def _explanation_payload(explanation: Explanation) -> list[dict]:
    return [
        {"topic_id": t.topic_id, "weight": t.weight, "terms": list(t.terms)}
        for t in explanation.topics
    ]


def create_app(bundle: ModelBundle) -> FastAPI:
    """Build the application serving ``bundle``."""
    app = FastAPI(title="venuerec", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def on_invalid_request(request, exc: RequestValidationError):
        details = "; ".join(
            ".".join(str(part) for part in error["loc"]) + ": " + error["msg"]
            for error in exc.errors()
        )
        return _error(400, "invalid_request", details or "invalid request body")

    @app.post("/recommend")
    def post_recommend(request: RecommendRequest) -> JSONResponse:
        try:
            result = recommend(
                title=request.title,
                abstract=request.abstract,
                keywords=request.keywords,
                k=request.k,
                bundle=bundle,
                top_topics=request.top_topics,
                terms_per_topic=request.terms_per_topic,
            )
        except ValueError as exc:
            return _error(400, "invalid_parameter", str(exc))
        return JSONResponse(
            {
                "query_topics": _explanation_payload(result.query_topics),
                "recommendations": [
                    {
                        "venue": r.venue,
                        "score": r.score,
                        "topics": _explanation_payload(r.explanation),
                    }
                    for r in result.venues
                ],
            }
        )

    @app.get("/venues")
    def get_venues() -> dict:
        return {"venues": list(bundle.venues.labels)}

    @app.get("/health")
    def get_health() -> dict:
        return {
            "status": "ok",
            "model_version": bundle.format_version,
            "feature_kind": bundle.feature_kind,
            "num_topics": bundle.nmf.num_topics,
            "num_venues": len(bundle.venues),
            "corpus_fingerprint": bundle.corpus_fingerprint,
        }

    return app


def serve(bundle: ModelBundle, addr: str = "127.0.0.1", port: int = 8000) -> None:
    """Run the service until interrupted.

    Raises:
        ValueError: when the address cannot be bound, for example because
            the port is already taken.
    """
    import uvicorn

    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            probe.bind((addr, port))
        except OSError as exc:
            raise ValueError(f"cannot serve on {addr}:{port}: {exc}") from exc
    uvicorn.run(create_app(bundle), host=addr, port=port, log_level="info")
