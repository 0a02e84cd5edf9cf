/**
 * Browser entry point: binds the static form to the controller and
 * paints the results pane on every state change.
 *
 * The service base URL comes from, in order: a global set before this
 * script (``window.VENUEREC_BASE_URL``), an ``?api=`` query parameter,
 * or the default local service address.
 */

import { ApiClient } from "./api.js";
import { AppController } from "./controller.js";
import { renderApp, renderKeywordChips } from "./render.js";

declare global {
  interface Window {
    VENUEREC_BASE_URL?: string;
  }
}

function baseUrl(): string {
  const fromGlobal = window.VENUEREC_BASE_URL;
  if (fromGlobal) {
    return fromGlobal;
  }
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? "http://127.0.0.1:8000";
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function start(): void {
  const title = el<HTMLInputElement>("title");
  const abstract = el<HTMLTextAreaElement>("abstract");
  const keywordInput = el<HTMLInputElement>("keyword-input");
  const addChip = el<HTMLButtonElement>("keyword-add");
  const chips = el<HTMLDivElement>("chips");
  const kSelect = el<HTMLSelectElement>("k");
  const submit = el<HTMLButtonElement>("submit");
  const results = el<HTMLDivElement>("results");

  const controller = new AppController(new ApiClient(baseUrl()), (state) => {
    results.innerHTML = renderApp(state);
    chips.innerHTML = renderKeywordChips(state.form.keywords);
    submit.disabled = !controller.canSubmitNow;
  });

  title.addEventListener("input", () => controller.setTitle(title.value));
  abstract.addEventListener("input", () =>
    controller.setAbstract(abstract.value),
  );
  kSelect.addEventListener("change", () =>
    controller.setK(Number(kSelect.value)),
  );

  const pushKeyword = () => {
    controller.addKeyword(keywordInput.value);
    keywordInput.value = "";
  };
  addChip.addEventListener("click", pushKeyword);
  keywordInput.addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      event.preventDefault();
      pushKeyword();
    }
  });
  chips.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains("chip-remove")) {
      const chip = target.closest<HTMLElement>(".chip");
      if (chip?.dataset.keyword) {
        controller.removeKeyword(chip.dataset.keyword);
      }
    }
  });

  el<HTMLFormElement>("query-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void controller.submit();
  });

  submit.disabled = true;
}

start();
