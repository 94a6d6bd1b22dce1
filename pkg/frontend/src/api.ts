// Typed client for the termgraph JSON API. Every response uses the
// envelope {version, data, error}; errors are surfaced as ApiError with
// the server's code and message intact.

export interface Suggestion {
  term_id: number;
  words: string;
  relation_path: string[];
  score: number;
  doc_count: number;
  component_id: number;
  added_words: number | null;
  uniterm_hits: number | null;
}

export interface RefineData {
  query: string;
  normalized: string;
  mode: string;
  k: number;
  total: number;
  offset: number;
  limit: number;
  suggestions: Suggestion[];
}

export interface TermInfo {
  term_id: number;
  words: string;
  surfaces: string[];
  freq_occurrences: number;
  freq_docs: number;
  component_id: number;
}

export interface DocumentRow {
  doc_id: string;
  occurrences: number;
  metadata: Record<string, string>;
}

export interface TermDocsData {
  term_id: number;
  documents: DocumentRow[];
}

export interface ComponentMember extends TermInfo {
  degree: number;
}

export interface ComponentData {
  component_id: number;
  label_id: number;
  members: ComponentMember[];
  edges: { kind: string; a: number; b: number }[];
}

export interface DocData {
  doc_id: string;
  metadata: Record<string, string>;
  n_tokens: number;
  text: string;
}

interface Envelope<T> {
  version: string;
  data: T | null;
  error: { code: string; message: string } | null;
}

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.status = status;
    this.code = code;
  }
}

/** The slice of the API the UI consumes; mocked in tests. */
export interface RefineApi {
  refine(query: string, mode?: string): Promise<RefineData>;
  termDocs(termId: number, limit?: number): Promise<TermDocsData>;
  component(componentId: number): Promise<ComponentData>;
  document(docId: string): Promise<DocData>;
}

type FetchLike = (url: string) => Promise<Response>;

export class ApiClient implements RefineApi {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl: FetchLike = (url) => fetch(url)) {
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`);
    let body: Envelope<T>;
    try {
      body = (await response.json()) as Envelope<T>;
    } catch {
      throw new ApiError(response.status, "bad_envelope", "response is not JSON");
    }
    if (body.error !== null || body.data === null) {
      const err = body.error ?? { code: "unknown", message: "missing data" };
      throw new ApiError(response.status, err.code, err.message);
    }
    return body.data;
  }

  refine(query: string, mode = "auto"): Promise<RefineData> {
    const q = encodeURIComponent(query);
    return this.get<RefineData>(`/api/refine?q=${q}&mode=${encodeURIComponent(mode)}`);
  }

  termDocs(termId: number, limit = 20): Promise<TermDocsData> {
    return this.get<TermDocsData>(`/api/term/${termId}/docs?limit=${limit}`);
  }

  component(componentId: number): Promise<ComponentData> {
    return this.get<ComponentData>(`/api/components/${componentId}`);
  }

  document(docId: string): Promise<DocData> {
    return this.get<DocData>(`/api/docs/${encodeURIComponent(docId)}`);
  }
}
