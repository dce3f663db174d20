// Thin API client. Each panel keeps at most one in-flight request: starting
// a new fetch for the same panel aborts the superseded one.

import {
  AlltimeEntry,
  EditionInfo,
  NetworkPayload,
  PersonPayload,
} from "./types";

export type FetchLike = (
  url: string,
  init?: { signal?: AbortSignal }
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = fetch.bind(globalThis)
  ) {}

  private async get<T>(panel: string, path: string): Promise<T> {
    this.inflight.get(panel)?.abort();
    const controller = new AbortController();
    this.inflight.set(panel, controller);
    try {
      const resp = await this.fetchImpl(this.baseUrl + path, {
        signal: controller.signal,
      });
      if (!resp.ok) {
        const body = (await resp.json().catch(() => ({}))) as { error?: string };
        throw new ApiError(resp.status, body.error ?? `HTTP ${resp.status}`);
      }
      return (await resp.json()) as T;
    } finally {
      if (this.inflight.get(panel) === controller) this.inflight.delete(panel);
    }
  }

  editions(): Promise<{ editions: EditionInfo[] }> {
    return this.get("editions", "/editions");
  }

  network(edition: string, year: number, top: number): Promise<NetworkPayload> {
    return this.get(
      "network",
      `/editions/${edition}/years/${year}/network?top=${top}`
    );
  }

  person(edition: string, id: number): Promise<PersonPayload> {
    return this.get("person", `/editions/${edition}/people/${id}`);
  }

  alltime(
    edition: string,
    top: number,
    panel = "alltime"
  ): Promise<{ entries: AlltimeEntry[] }> {
    return this.get(panel, `/editions/${edition}/rankings/alltime?top=${top}`);
  }
}
