export interface TermsResponse {
  domain: string;
  terms: string[];
}

export interface Bounds {
  min: number;
  max: number;
}

export interface SearchRequest {
  dominating: string;
  sub_dominating?: string[];
  range?: { from: number; to: number };
  count?: number;
}

export interface ResultRow {
  page_id: string;
  url: string;
  relevance: number;
  source: string;
}

export interface SearchResponse {
  results: ResultRow[];
  requested: number;
  fulfilled: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, init);
  if (!response.ok) {
    let detail = `HTTP ${response.status}`;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") {
        detail = body.detail;
      }
    } catch {
      // error body was not JSON; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return response.json() as Promise<T>;
}

export function fetchTerms(): Promise<TermsResponse> {
  return request<TermsResponse>("/api/terms");
}

export function fetchBounds(): Promise<Bounds> {
  return request<Bounds>("/api/bounds");
}

export function postSearch(body: SearchRequest): Promise<SearchResponse> {
  return request<SearchResponse>("/api/search", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
}
