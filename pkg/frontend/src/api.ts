export interface SymptomsResponse {
  symptoms: string[];
  model_id: string;
}

export interface DiagnoseResponse {
  diagnosis: "positive" | "negative";
  probability: number;
  unknown_symptoms: string[];
  model_id: string;
}

export interface ApiClient {
  fetchSymptoms(): Promise<SymptomsResponse>;
  diagnose(symptoms: string[]): Promise<DiagnoseResponse>;
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      if (body?.error?.message) {
        detail = `${body.error.code}: ${body.error.message}`;
      }
    } catch {
      // non-JSON error body; the status code is all we have
    }
    throw new Error(`request failed (${detail})`);
  }
  return response.json() as Promise<T>;
}

/** Talks to the inference service's three endpoints; no other network calls. */
export class HttpApiClient implements ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async fetchSymptoms(): Promise<SymptomsResponse> {
    return parseOrThrow(await fetch(`${this.baseUrl}/api/symptoms`));
  }

  async diagnose(symptoms: string[]): Promise<DiagnoseResponse> {
    return parseOrThrow(
      await fetch(`${this.baseUrl}/api/diagnose`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ symptoms }),
      }),
    );
  }
}
