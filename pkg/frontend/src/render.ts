/**
 * Pure HTML renderers for the results pane.
 *
 * Every function maps values to a string with no hidden inputs, so the
 * same state always yields byte-identical markup. Venues are rendered
 * strictly in response order; nothing here sorts or rescores.
 */

import type {
  RecommendResponse,
  TopicView,
  VenueRecommendation,
} from "./api.js";
import type { AppState } from "./state.js";
import type { RankMarker } from "./diff.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

function formatWeight(weight: number): string {
  return weight.toFixed(2);
}

function formatScore(score: number): string {
  return score.toFixed(4);
}

function barWidth(score: number): number {
  return Math.round(Math.min(1, Math.max(0, score)) * 100);
}

export function renderTopic(topic: TopicView): string {
  const terms = topic.terms
    .map((term) => `<span class="term">${escapeHtml(term)}</span>`)
    .join(" ");
  return (
    `<li class="topic" data-topic-id="${topic.topic_id}">` +
    `<span class="topic-label">topic ${topic.topic_id}</span> ` +
    `<span class="topic-weight">${formatWeight(topic.weight)}</span> ` +
    `<span class="topic-terms">${terms}</span>` +
    `</li>`
  );
}

export function renderQueryTopics(topics: TopicView[]): string {
  if (topics.length === 0) {
    return (
      `<section class="query-topics">` +
      `<h2>Query topics</h2>` +
      `<p class="empty-note">No recognized topical terms in this query.</p>` +
      `</section>`
    );
  }
  const items = topics.map(renderTopic).join("");
  return (
    `<section class="query-topics">` +
    `<h2>Query topics</h2>` +
    `<ul class="topics">${items}</ul>` +
    `</section>`
  );
}

function renderMarker(marker: RankMarker | undefined): string {
  if (marker === undefined) {
    return "";
  }
  const symbol = marker === "up" ? "▲" : marker === "down" ? "▼" : "new";
  return `<span class="marker marker-${marker}">${symbol}</span>`;
}

export function renderVenueCard(
  recommendation: VenueRecommendation,
  rank: number,
  marker: RankMarker | undefined,
): string {
  const topics = recommendation.topics.map(renderTopic).join("");
  return (
    `<article class="venue-card" data-venue="${escapeHtml(recommendation.venue)}">` +
    `<header>` +
    `<span class="rank">${rank}.</span> ` +
    `<span class="venue-name">${escapeHtml(recommendation.venue)}</span>` +
    renderMarker(marker) +
    `<span class="score">${formatScore(recommendation.score)}</span>` +
    `</header>` +
    `<div class="score-bar"><div class="score-fill" style="width: ${barWidth(recommendation.score)}%"></div></div>` +
    `<ul class="topics">${topics}</ul>` +
    `</article>`
  );
}

export function renderResults(
  response: RecommendResponse,
  markers: Map<string, RankMarker>,
): string {
  const cards = response.recommendations
    .map((rec, index) => renderVenueCard(rec, index + 1, markers.get(rec.venue)))
    .join("");
  return (
    renderQueryTopics(response.query_topics) +
    `<section class="recommendations">` +
    `<h2>Recommendations</h2>` +
    `<div class="venue-list">${cards}</div>` +
    `</section>`
  );
}

export function renderError(message: string): string {
  return `<p class="error" role="alert">${escapeHtml(message)}</p>`;
}

export function renderKeywordChips(keywords: string[]): string {
  return keywords
    .map(
      (word) =>
        `<span class="chip" data-keyword="${escapeHtml(word)}">` +
        `${escapeHtml(word)}` +
        `<button type="button" class="chip-remove" aria-label="remove ${escapeHtml(word)}">×</button>` +
        `</span>`,
    )
    .join("");
}

/**
 * The whole results pane for one state.
 *
 * While a request is in flight the previous results stay visible inside
 * a dimmed wrapper so edits can be compared against them.
 */
export function renderApp(state: AppState): string {
  const parts: string[] = [];
  if (state.error !== null) {
    parts.push(renderError(state.error));
  }
  if (state.inFlight) {
    parts.push(`<p class="loading" role="status">Ranking venues…</p>`);
  }
  if (state.lastResponse !== null) {
    const body = renderResults(state.lastResponse, state.markers);
    if (state.inFlight) {
      parts.push(`<div class="stale">${body}</div>`);
    } else {
      parts.push(body);
    }
  }
  return parts.join("");
}
