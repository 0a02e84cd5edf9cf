/**
 * Application state and its pure transitions.
 *
 * Every transition returns a fresh state object; rendering is a pure
 * function of the result, so the view can always be rebuilt from the
 * latest state alone.
 */

import type { RecommendResponse } from "./api.js";
import { rankChanges, type RankMarker } from "./diff.js";

export interface QueryFormState {
  title: string;
  abstract: string;
  /** Deduplicated, in insertion order. */
  keywords: string[];
  k: number;
}

export interface AppState {
  form: QueryFormState;
  /** Newest completed response, kept on screen through later edits. */
  lastResponse: RecommendResponse | null;
  /** Per-venue rank movement vs. the response before lastResponse. */
  markers: Map<string, RankMarker>;
  /** Inline error text, or null when the last request succeeded. */
  error: string | null;
  /** True from submit until the response or failure arrives. */
  inFlight: boolean;
}

export function initialState(): AppState {
  return {
    form: { title: "", abstract: "", keywords: [], k: 5 },
    lastResponse: null,
    markers: new Map(),
    error: null,
    inFlight: false,
  };
}

/** A query is submittable unless title and abstract are both empty. */
export function canSubmit(form: QueryFormState): boolean {
  return form.title.trim() !== "" || form.abstract.trim() !== "";
}

export function withTitle(state: AppState, title: string): AppState {
  return { ...state, form: { ...state.form, title } };
}

export function withAbstract(state: AppState, abstract: string): AppState {
  return { ...state, form: { ...state.form, abstract } };
}

export function withK(state: AppState, k: number): AppState {
  return { ...state, form: { ...state.form, k } };
}

/** Adds a keyword chip; blank input and duplicates are ignored. */
export function addKeyword(state: AppState, keyword: string): AppState {
  const trimmed = keyword.trim();
  if (trimmed === "" || state.form.keywords.includes(trimmed)) {
    return state;
  }
  return {
    ...state,
    form: { ...state.form, keywords: [...state.form.keywords, trimmed] },
  };
}

export function removeKeyword(state: AppState, keyword: string): AppState {
  return {
    ...state,
    form: {
      ...state.form,
      keywords: state.form.keywords.filter((word) => word !== keyword),
    },
  };
}

/** A request left: prior results stay for comparison, errors clear. */
export function submitStarted(state: AppState): AppState {
  return { ...state, inFlight: true, error: null };
}

/** A response arrived: markers are diffed against the displaced one. */
export function submitSucceeded(
  state: AppState,
  response: RecommendResponse,
): AppState {
  const previous = state.lastResponse
    ? state.lastResponse.recommendations.map((rec) => rec.venue)
    : null;
  const next = response.recommendations.map((rec) => rec.venue);
  return {
    ...state,
    lastResponse: response,
    markers: rankChanges(previous, next),
    error: null,
    inFlight: false,
  };
}

/** The request failed: the form and any prior results are untouched. */
export function submitFailed(state: AppState, message: string): AppState {
  return { ...state, error: message, inFlight: false };
}
