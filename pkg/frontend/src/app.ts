import type { ApiClient, DiagnoseResponse } from "./api.js";

export const NEGATIVE_MESSAGE =
  "Fortunately, you have been spared from the presence of Monkeypox. " +
  "It is recommended to consult with a medical professional for further confirmation.";

export const POSITIVE_MESSAGE =
  "Warning: your symptoms are consistent with the presence of Monkeypox. " +
  "It is recommended to consult with a medical professional for further confirmation.";

export interface AppHandle {
  /** Settles when the initial vocabulary load has finished (ok or error). */
  ready: Promise<void>;
  /** Settles when no diagnose request is in flight. */
  whenIdle(): Promise<void>;
}

interface UiState {
  vocabulary: string[];
  selected: Set<string>;
  result: DiagnoseResponse | null;
  error: string | null;
  vocabError: string | null;
}

export function formatProbability(probability: number): string {
  return `${(probability * 100).toFixed(1)}%`;
}

/**
 * Mounts the symptom-entry page into `root`.
 *
 * State machine invariants: `selected` is always a subset of the loaded
 * vocabulary (checkboxes are the only way in), result and error are never
 * shown together, and only the most recent submission may render a result;
 * responses to superseded submissions are discarded.
 */
export function createApp(root: HTMLElement, api: ApiClient): AppHandle {
  const state: UiState = {
    vocabulary: [],
    selected: new Set(),
    result: null,
    error: null,
    vocabError: null,
  };
  let submitSeq = 0;
  let inflight: Promise<void> = Promise.resolve();

  root.innerHTML = `
    <header>
      <h1>Monkeypox symptom triage</h1>
      <ol class="instructions">
        <li>Choose the symptoms you are experiencing from the section below and
            press <strong>Submit</strong>. The outcome appears in the result section.</li>
        <li>To reset the selected symptoms, press <strong>Clear</strong>.</li>
      </ol>
    </header>
    <div class="banner" id="vocab-error" hidden>
      <span id="vocab-error-text"></span>
      <button type="button" id="retry">Retry</button>
    </div>
    <form id="symptom-form">
      <fieldset id="symptoms">
        <legend>Symptoms</legend>
        <div class="grid" id="checkbox-grid"></div>
      </fieldset>
      <div class="actions">
        <button type="button" id="clear">Clear</button>
        <button type="submit" id="submit">Submit</button>
      </div>
    </form>
    <section id="result-section">
      <h2>Result</h2>
      <div class="banner" id="submit-error" hidden></div>
      <div id="result" hidden>
        <p id="result-message"></p>
        <p id="result-probability"></p>
      </div>
    </section>
  `;

  const grid = root.querySelector<HTMLDivElement>("#checkbox-grid")!;
  const vocabErrorBox = root.querySelector<HTMLDivElement>("#vocab-error")!;
  const vocabErrorText = root.querySelector<HTMLSpanElement>("#vocab-error-text")!;
  const submitErrorBox = root.querySelector<HTMLDivElement>("#submit-error")!;
  const resultBox = root.querySelector<HTMLDivElement>("#result")!;
  const resultMessage = root.querySelector<HTMLParagraphElement>("#result-message")!;
  const resultProbability = root.querySelector<HTMLParagraphElement>("#result-probability")!;
  const form = root.querySelector<HTMLFormElement>("#symptom-form")!;

  function renderVocabulary(): void {
    grid.innerHTML = "";
    for (const token of state.vocabulary) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.name = "symptom";
      box.value = token;
      box.addEventListener("change", () => {
        if (box.checked) {
          state.selected.add(token);
        } else {
          state.selected.delete(token);
        }
      });
      label.appendChild(box);
      label.appendChild(document.createTextNode(` ${token}`));
      grid.appendChild(label);
    }
    vocabErrorBox.hidden = state.vocabError === null;
    vocabErrorText.textContent = state.vocabError ?? "";
  }

  function renderOutcome(): void {
    submitErrorBox.hidden = state.error === null;
    submitErrorBox.textContent = state.error ?? "";
    if (state.result === null) {
      resultBox.hidden = true;
      return;
    }
    resultBox.hidden = false;
    resultMessage.textContent =
      state.result.diagnosis === "negative" ? NEGATIVE_MESSAGE : POSITIVE_MESSAGE;
    resultMessage.className = state.result.diagnosis;
    resultProbability.textContent =
      `Estimated likelihood of monkeypox: ${formatProbability(state.result.probability)}.`;
  }

  async function loadVocabulary(): Promise<void> {
    try {
      const body = await api.fetchSymptoms();
      state.vocabulary = body.symptoms;
      state.vocabError = null;
    } catch (err) {
      state.vocabulary = [];
      state.vocabError = `Could not load the symptom list (${(err as Error).message}).`;
    }
    state.selected.clear();
    renderVocabulary();
  }

  function submit(): void {
    const seq = ++submitSeq;
    // vocabulary order, vocabulary members only
    const tokens = state.vocabulary.filter((t) => state.selected.has(t));
    inflight = api
      .diagnose(tokens)
      .then((response) => {
        if (seq !== submitSeq) {
          return; // a newer submission superseded this one
        }
        state.result = response;
        state.error = null;
        renderOutcome();
      })
      .catch((err) => {
        if (seq !== submitSeq) {
          return;
        }
        state.result = null;
        state.error = `Diagnosis failed (${(err as Error).message}). Your selection is unchanged.`;
        renderOutcome();
      });
  }

  function clear(): void {
    state.selected.clear();
    state.result = null;
    state.error = null;
    for (const box of grid.querySelectorAll<HTMLInputElement>("input[type=checkbox]")) {
      box.checked = false;
    }
    renderOutcome();
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    submit();
  });
  root.querySelector<HTMLButtonElement>("#clear")!.addEventListener("click", clear);
  root.querySelector<HTMLButtonElement>("#retry")!.addEventListener("click", () => {
    void loadVocabulary();
  });

  const ready = loadVocabulary();
  return {
    ready,
    whenIdle: () => inflight,
  };
}
