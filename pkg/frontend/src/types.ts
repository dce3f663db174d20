// Payload shapes served by the chronograph API. Every number the UI shows
// comes verbatim from one of these; nothing is recomputed client-side.

export interface NetworkEntry {
  id: number;
  title: string;
  pagerank: number;
  indegree: number;
}

export interface NetworkPayload {
  year: number;
  entries: NetworkEntry[];
  edges: [number, number][];
}

export interface SeriesPoint {
  year: number;
  rank: number;
  pagerank: number;
}

export interface PersonPayload {
  id: number;
  title: string;
  birth: number;
  death: number;
  occupation: string;
  culture: string;
  series: SeriesPoint[];
}

export interface EditionInfo {
  edition: string;
  horizon: [number, number];
  k: number;
  nonempty_year_count: number;
}

export interface AlltimeEntry {
  rank: number;
  id: number;
  title: string;
  score: number;
  indegree: number;
}
