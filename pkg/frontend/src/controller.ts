/**
 * Wiring between form events, the service client, and the renderer.
 *
 * The controller owns the only mutable state in the app and enforces the
 * one-request-at-a-time rule: a new submit aborts the pending request,
 * and a response that was superseded while in flight is dropped.
 */

import type { RecommendRequest, RecommendResponse } from "./api.js";
import {
  addKeyword,
  canSubmit,
  initialState,
  removeKeyword,
  submitFailed,
  submitStarted,
  submitSucceeded,
  withAbstract,
  withK,
  withTitle,
  type AppState,
} from "./state.js";

export interface RecommendApi {
  recommend(
    request: RecommendRequest,
    signal?: AbortSignal,
  ): Promise<RecommendResponse>;
}

const TOP_TOPICS = 3;
const TERMS_PER_TOPIC = 5;

export class AppController {
  private readonly api: RecommendApi;
  private readonly onRender: (state: AppState) => void;
  private current: AppState;
  private pending: AbortController | null = null;

  constructor(api: RecommendApi, onRender: (state: AppState) => void) {
    this.api = api;
    this.onRender = onRender;
    this.current = initialState();
  }

  get state(): AppState {
    return this.current;
  }

  get canSubmitNow(): boolean {
    return canSubmit(this.current.form);
  }

  setTitle(title: string): void {
    this.update(withTitle(this.current, title));
  }

  setAbstract(abstract: string): void {
    this.update(withAbstract(this.current, abstract));
  }

  setK(k: number): void {
    this.update(withK(this.current, k));
  }

  addKeyword(keyword: string): void {
    this.update(addKeyword(this.current, keyword));
  }

  removeKeyword(keyword: string): void {
    this.update(removeKeyword(this.current, keyword));
  }

  /**
   * Sends the current form to the service.
   *
   * Resolves once this request's outcome is rendered, or immediately
   * when the form is empty. A submit while another request is pending
   * aborts the older one; whichever settles late is discarded.
   */
  async submit(): Promise<void> {
    if (!this.canSubmitNow) {
      return;
    }
    this.pending?.abort();
    const controller = new AbortController();
    this.pending = controller;
    this.update(submitStarted(this.current));
    const request: RecommendRequest = {
      title: this.current.form.title,
      abstract: this.current.form.abstract,
      keywords: [...this.current.form.keywords],
      k: this.current.form.k,
      top_topics: TOP_TOPICS,
      terms_per_topic: TERMS_PER_TOPIC,
    };
    try {
      const response = await this.api.recommend(request, controller.signal);
      if (this.pending !== controller) {
        return;
      }
      this.pending = null;
      this.update(submitSucceeded(this.current, response));
    } catch (err) {
      if (this.pending !== controller || controller.signal.aborted) {
        return;
      }
      this.pending = null;
      const message = err instanceof Error ? err.message : String(err);
      this.update(submitFailed(this.current, message));
    }
  }

  private update(next: AppState): void {
    this.current = next;
    this.onRender(next);
  }
}
