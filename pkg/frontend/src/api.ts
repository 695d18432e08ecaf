// Thin client over the session endpoints; every mutation the UI makes goes
// through these calls and nothing else.

import type {
  ExecuteResponse,
  FeedbackResponse,
  QuestionResponse,
  SchemaPayload,
  SummaryPayload,
  VocabularyResponse,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function request<T>(fetcher: FetchLike, url: string, init?: RequestInit): Promise<T> {
  const response = await fetcher(url, init);
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const detail =
      body && typeof body === "object" && "detail" in body
        ? (body as { detail: unknown }).detail
        : response.statusText;
    throw Object.assign(new Error(describeDetail(detail)), {
      status: response.status,
      detail,
    });
  }
  return body as T;
}

function describeDetail(detail: unknown): string {
  if (typeof detail === "string") return detail;
  if (detail && typeof detail === "object" && "message" in detail) {
    const d = detail as { message: string; statement_index?: number | null };
    return d.statement_index != null
      ? `statement ${d.statement_index + 1}: ${d.message}`
      : d.message;
  }
  return JSON.stringify(detail);
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetcher: FetchLike = (input, init) => fetch(input, init),
  ) {}

  getSchema(): Promise<SchemaPayload> {
    return request(this.fetcher, `${this.base}/api/schema`);
  }

  getSummary(): Promise<SummaryPayload> {
    return request(this.fetcher, `${this.base}/api/summary`);
  }

  async createSession(): Promise<string> {
    const body = await request<{ session_id: string }>(
      this.fetcher,
      `${this.base}/api/session`,
      { method: "POST" },
    );
    return body.session_id;
  }

  postQuestion(sessionId: string, text: string): Promise<QuestionResponse> {
    return request(
      this.fetcher,
      `${this.base}/api/session/${sessionId}/question`,
      post({ text }),
    );
  }

  executeCandidate(
    sessionId: string,
    turnId: number,
    candidateId: string,
  ): Promise<ExecuteResponse> {
    return request(
      this.fetcher,
      `${this.base}/api/session/${sessionId}/execute`,
      post({ turn_id: turnId, candidate_id: candidateId }),
    );
  }

  executeRawScript(sessionId: string, rawScript: string): Promise<ExecuteResponse> {
    return request(
      this.fetcher,
      `${this.base}/api/session/${sessionId}/execute`,
      post({ raw_script: rawScript }),
    );
  }

  recordFeedback(
    sessionId: string,
    turnId: number,
    stars: number,
  ): Promise<FeedbackResponse> {
    return request(
      this.fetcher,
      `${this.base}/api/session/${sessionId}/feedback`,
      post({ turn_id: turnId, stars }),
    );
  }

  addSynonym(
    sessionId: string,
    property: string,
    surface: string,
    canonical: string,
  ): Promise<VocabularyResponse> {
    return request(
      this.fetcher,
      `${this.base}/api/session/${sessionId}/vocabulary`,
      post({ property, surface, canonical }),
    );
  }
}
