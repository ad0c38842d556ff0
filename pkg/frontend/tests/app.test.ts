import { beforeEach, describe, expect, it } from "vitest";

import type { ApiClient, DiagnoseResponse, SymptomsResponse } from "../src/api.js";
import { NEGATIVE_MESSAGE, POSITIVE_MESSAGE, createApp, formatProbability } from "../src/app.js";

// mirrors the bundled 10-token ingest fixture vocabulary
const FIXTURE_VOCABULARY = [
  "chills", "cough", "fatigue", "fever", "headache",
  "muscle pain", "rash", "skin lesions", "sore throat", "swollen lymph nodes",
];

const NEGATIVE_GOLDEN: DiagnoseResponse = {
  diagnosis: "negative",
  probability: 0.2046,
  unknown_symptoms: [],
  model_id: "89ba50a578f0b585",
};

class StubApi implements ApiClient {
  symptomCalls = 0;
  diagnoseCalls: string[][] = [];
  failSymptoms = false;
  response: DiagnoseResponse = NEGATIVE_GOLDEN;
  pending: Array<(r: DiagnoseResponse) => void> = [];
  manual = false;

  async fetchSymptoms(): Promise<SymptomsResponse> {
    this.symptomCalls += 1;
    if (this.failSymptoms) {
      throw new Error("503");
    }
    return { symptoms: [...FIXTURE_VOCABULARY], model_id: "fixture" };
  }

  diagnose(symptoms: string[]): Promise<DiagnoseResponse> {
    this.diagnoseCalls.push(symptoms);
    if (this.manual) {
      return new Promise((resolve) => this.pending.push(resolve));
    }
    return Promise.resolve(this.response);
  }
}

function checkboxes(root: HTMLElement): HTMLInputElement[] {
  return [...root.querySelectorAll<HTMLInputElement>("input[type=checkbox]")];
}

function check(root: HTMLElement, token: string): void {
  const box = checkboxes(root).find((b) => b.value === token);
  if (!box) throw new Error(`no checkbox for ${token}`);
  box.checked = true;
  box.dispatchEvent(new Event("change"));
}

function clickSubmit(root: HTMLElement): void {
  root.querySelector<HTMLFormElement>("#symptom-form")!.dispatchEvent(new Event("submit"));
}

function clickClear(root: HTMLElement): void {
  root.querySelector<HTMLButtonElement>("#clear")!.click();
}

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<main id="app"></main>';
  root = document.getElementById("app")!;
});

describe("vocabulary loading", () => {
  it("renders every token as a checkbox, in index order", async () => {
    const api = new StubApi();
    const app = createApp(root, api);
    await app.ready;
    const boxes = checkboxes(root);
    expect(boxes.map((b) => b.value)).toEqual(FIXTURE_VOCABULARY);
    expect(root.querySelector("fieldset legend")!.textContent).toBe("Symptoms");
    expect(root.querySelector<HTMLElement>("#vocab-error")!.hidden).toBe(true);
  });

  it("shows a retryable banner and zero checkboxes when the service is down", async () => {
    const api = new StubApi();
    api.failSymptoms = true;
    const app = createApp(root, api);
    await app.ready;
    expect(checkboxes(root)).toHaveLength(0);
    expect(root.querySelector<HTMLElement>("#vocab-error")!.hidden).toBe(false);

    api.failSymptoms = false;
    root.querySelector<HTMLButtonElement>("#retry")!.click();
    await new Promise((r) => setTimeout(r));
    expect(checkboxes(root)).toHaveLength(FIXTURE_VOCABULARY.length);
    expect(root.querySelector<HTMLElement>("#vocab-error")!.hidden).toBe(true);
  });
});

describe("submit", () => {
  it("renders the negative message with the probability as a percentage", async () => {
    const api = new StubApi();
    const app = createApp(root, api);
    await app.ready;
    check(root, "cough");
    check(root, "headache");
    clickSubmit(root);
    await app.whenIdle();

    const message = root.querySelector("#result-message")!.textContent!;
    expect(message).toContain("spared from the presence of Monkeypox");
    expect(message).toBe(NEGATIVE_MESSAGE);
    expect(message).toContain("consult with a medical professional");
    expect(root.querySelector("#result-probability")!.textContent).toContain("20.5%");
    expect(formatProbability(NEGATIVE_GOLDEN.probability)).toBe("20.5%");
  });

  it("renders the warning message for a positive diagnosis, with the consult note", async () => {
    const api = new StubApi();
    api.response = { diagnosis: "positive", probability: 0.9885, unknown_symptoms: [], model_id: "fixture" };
    const app = createApp(root, api);
    await app.ready;
    check(root, "rash");
    clickSubmit(root);
    await app.whenIdle();

    const message = root.querySelector("#result-message")!.textContent!;
    expect(message).toBe(POSITIVE_MESSAGE);
    expect(message).toContain("consult with a medical professional");
    expect(root.querySelector("#result-probability")!.textContent).toContain("98.9%");
  });

  it("sends only vocabulary tokens, in vocabulary order", async () => {
    const api = new StubApi();
    const app = createApp(root, api);
    await app.ready;
    check(root, "rash");
    check(root, "chills");
    clickSubmit(root);
    await app.whenIdle();
    expect(api.diagnoseCalls).toEqual([["chills", "rash"]]);
    for (const sent of api.diagnoseCalls[0]!) {
      expect(FIXTURE_VOCABULARY).toContain(sent);
    }
  });

  it("submits an empty selection and still renders a result", async () => {
    const api = new StubApi();
    const app = createApp(root, api);
    await app.ready;
    clickSubmit(root);
    await app.whenIdle();
    expect(api.diagnoseCalls).toEqual([[]]);
    expect(root.querySelector<HTMLElement>("#result")!.hidden).toBe(false);
  });

  it("shows an error banner and preserves the selection when the request fails", async () => {
    const api = new StubApi();
    const app = createApp(root, api);
    await app.ready;
    check(root, "fever");
    api.diagnose = () => Promise.reject(new Error("500"));
    clickSubmit(root);
    await app.whenIdle();

    expect(root.querySelector<HTMLElement>("#submit-error")!.hidden).toBe(false);
    expect(root.querySelector<HTMLElement>("#result")!.hidden).toBe(true);
    const fever = checkboxes(root).find((b) => b.value === "fever")!;
    expect(fever.checked).toBe(true);
  });

  it("discards responses from superseded submissions", async () => {
    const api = new StubApi();
    api.manual = true;
    const app = createApp(root, api);
    await app.ready;

    check(root, "cough");
    clickSubmit(root);
    check(root, "rash");
    clickSubmit(root);
    expect(api.pending).toHaveLength(2);

    // the newer submission resolves positive first
    api.pending[1]!({ diagnosis: "positive", probability: 0.91, unknown_symptoms: [], model_id: "m" });
    await app.whenIdle();
    expect(root.querySelector("#result-message")!.textContent).toBe(POSITIVE_MESSAGE);

    // the stale negative response must not overwrite it
    api.pending[0]!(NEGATIVE_GOLDEN);
    await new Promise((r) => setTimeout(r));
    expect(root.querySelector("#result-message")!.textContent).toBe(POSITIVE_MESSAGE);
  });
});

describe("clear", () => {
  it("resets selection and result without any network call", async () => {
    const api = new StubApi();
    const app = createApp(root, api);
    await app.ready;
    check(root, "fever");
    check(root, "rash");
    clickSubmit(root);
    await app.whenIdle();
    expect(root.querySelector<HTMLElement>("#result")!.hidden).toBe(false);

    const symptomCallsBefore = api.symptomCalls;
    const diagnoseCallsBefore = api.diagnoseCalls.length;
    clickClear(root);

    expect(checkboxes(root).every((b) => !b.checked)).toBe(true);
    expect(root.querySelector<HTMLElement>("#result")!.hidden).toBe(true);
    expect(checkboxes(root)).toHaveLength(FIXTURE_VOCABULARY.length); // vocabulary untouched
    expect(api.symptomCalls).toBe(symptomCallsBefore);
    expect(api.diagnoseCalls.length).toBe(diagnoseCallsBefore);

    // submitting again after clear sends the empty selection
    clickSubmit(root);
    await app.whenIdle();
    expect(api.diagnoseCalls.at(-1)).toEqual([]);
  });

  it("is a no-op when nothing is selected", async () => {
    const api = new StubApi();
    const app = createApp(root, api);
    await app.ready;
    clickClear(root);
    expect(checkboxes(root).every((b) => !b.checked)).toBe(true);
    expect(api.symptomCalls).toBe(1);
  });
});
