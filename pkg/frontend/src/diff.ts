/**
 * Rank-movement markers between consecutive responses.
 *
 * Movement is decided purely by venue-name position diffing; scores are
 * never compared, so the markers cannot disagree with the server order.
 */

export type RankMarker = "up" | "down" | "new";

/**
 * Maps each venue in ``next`` to how its rank moved since ``previous``.
 *
 * Venues at an unchanged position get no entry, so an identical ranking
 * produces an empty map. Venues absent from the previous ranking are
 * marked "new". With no previous ranking at all there is nothing to
 * compare against and the map is empty.
 */
export function rankChanges(
  previous: readonly string[] | null,
  next: readonly string[],
): Map<string, RankMarker> {
  const markers = new Map<string, RankMarker>();
  if (previous === null) {
    return markers;
  }
  const previousRank = new Map<string, number>();
  previous.forEach((venue, index) => previousRank.set(venue, index));
  next.forEach((venue, index) => {
    const before = previousRank.get(venue);
    if (before === undefined) {
      markers.set(venue, "new");
    } else if (index < before) {
      markers.set(venue, "up");
    } else if (index > before) {
      markers.set(venue, "down");
    }
  });
  return markers;
}
