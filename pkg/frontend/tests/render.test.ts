import { describe, expect, it } from "vitest";

import type { RecommendResponse } from "../src/api.js";
import type { RankMarker } from "../src/diff.js";
import {
  escapeHtml,
  renderApp,
  renderError,
  renderKeywordChips,
  renderQueryTopics,
  renderResults,
  renderVenueCard,
} from "../src/render.js";
import { initialState, submitStarted, submitSucceeded } from "../src/state.js";

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

const SAMPLE: RecommendResponse = {
  query_topics: [
    { topic_id: 2, weight: 0.8, terms: ["alpha", "beta"] },
    { topic_id: 0, weight: 0.2, terms: ["gamma", "delta"] },
  ],
  recommendations: [
    {
      venue: "venue00",
      score: 0.61,
      topics: [
        { topic_id: 2, weight: 0.9, terms: ["alpha", "beta", "gamma"] },
        { topic_id: 1, weight: 0.1, terms: ["delta", "epsilon", "zeta"] },
      ],
    },
    {
      venue: "venue01",
      score: 0.25,
      topics: [{ topic_id: 0, weight: 1.0, terms: ["eta", "theta", "iota"] }],
    },
  ],
};

describe("escapeHtml", () => {
  it("escapes markup metacharacters", () => {
    expect(escapeHtml(`<b a="1" b='2'>&x</b>`)).toBe(
      "&lt;b a=&quot;1&quot; b=&#39;2&#39;&gt;&amp;x&lt;/b&gt;",
    );
  });
});

describe("renderResults", () => {
  it("renders one card per venue, in response order", () => {
    const html = renderResults(SAMPLE, new Map());
    expect(count(html, 'class="venue-card"')).toBe(2);
    expect(html.indexOf("venue00")).toBeLessThan(html.indexOf("venue01"));
  });

  it("renders every topic and every term of each venue", () => {
    const html = renderVenueCard(SAMPLE.recommendations[0]!, 1, undefined);
    expect(count(html, 'class="topic"')).toBe(2);
    expect(count(html, 'class="term"')).toBe(6);
    expect(html).toContain("topic 2");
    expect(html).toContain("epsilon");
  });

  it("shows the rank and a score bar sized by the score", () => {
    const html = renderVenueCard(SAMPLE.recommendations[1]!, 2, undefined);
    expect(html).toContain('<span class="rank">2.</span>');
    expect(html).toContain("width: 25%");
    expect(html).toContain("0.2500");
  });

  it("renders no markers when the marker map is empty", () => {
    const html = renderResults(SAMPLE, new Map());
    expect(html).not.toContain('class="marker');
  });

  it("renders up, down, and new markers on the named venues", () => {
    const markers = new Map<string, RankMarker>([
      ["venue00", "up"],
      ["venue01", "new"],
    ]);
    const html = renderResults(SAMPLE, markers);
    expect(html).toContain('marker-up">▲');
    expect(html).toContain('marker-new">new');
    expect(html).not.toContain("marker-down");
  });

  it("escapes server-supplied text", () => {
    const hostile: RecommendResponse = {
      query_topics: [],
      recommendations: [
        {
          venue: `<img src=x onerror=alert(1)>`,
          score: 0.5,
          topics: [{ topic_id: 0, weight: 1, terms: [`<script>`] }],
        },
      ],
    };
    const html = renderResults(hostile, new Map());
    expect(html).not.toContain("<img");
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("renderQueryTopics", () => {
  it("lists the query topics with their terms", () => {
    const html = renderQueryTopics(SAMPLE.query_topics);
    expect(count(html, 'class="topic"')).toBe(2);
    expect(html).toContain("alpha");
  });

  it("explains an empty topic list instead of hiding the panel", () => {
    const html = renderQueryTopics([]);
    expect(html).toContain("No recognized topical terms");
  });
});

describe("renderApp", () => {
  it("renders nothing before the first response", () => {
    expect(renderApp(initialState())).toBe("");
  });

  it("is a pure function of the state", () => {
    const state = submitSucceeded(initialState(), SAMPLE);
    expect(renderApp(state)).toBe(renderApp(state));
  });

  it("dims previous results while a request is in flight", () => {
    let state = submitSucceeded(initialState(), SAMPLE);
    expect(renderApp(state)).not.toContain('class="stale"');
    state = submitStarted(state);
    const html = renderApp(state);
    expect(html).toContain('class="stale"');
    expect(count(html, 'class="venue-card"')).toBe(2);
    expect(html).toContain('role="status"');
  });

  it("shows errors inline above the previous results", () => {
    let state = submitSucceeded(initialState(), SAMPLE);
    state = { ...state, error: "HTTP 500" };
    const html = renderApp(state);
    expect(html).toContain('role="alert"');
    expect(html).toContain("HTTP 500");
    expect(count(html, 'class="venue-card"')).toBe(2);
  });

  it("escapes error text", () => {
    expect(renderError("<oops>")).toContain("&lt;oops&gt;");
  });
});

describe("renderKeywordChips", () => {
  it("renders one removable chip per keyword", () => {
    const html = renderKeywordChips(["nlp", "ranking"]);
    expect(count(html, 'class="chip"')).toBe(2);
    expect(count(html, 'class="chip-remove"')).toBe(2);
    expect(html).toContain('data-keyword="nlp"');
  });

  it("renders nothing for an empty list", () => {
    expect(renderKeywordChips([])).toBe("");
  });
});
