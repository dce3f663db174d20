// ViewState and its pure reducer. The whole UI is a function of
// (ViewState, last fetched payloads), so replaying a recorded action list
// reproduces the exact final state.

export interface ViewState {
  edition: string;
  year: number;
  selectedPerson: number | null;
  topK: number;
  layoutSeed: string;
  splitEdition: string | null; // second edition for side-by-side top lists
}

export type Action =
  | { kind: "setYear"; year: number }
  | { kind: "stepYear"; delta: 1 | -1 }
  | { kind: "selectPerson"; id: number }
  | { kind: "clearSelection" }
  | { kind: "setTopK"; topK: number }
  | { kind: "setEdition"; edition: string }
  | { kind: "setSplitEdition"; edition: string | null }
  | { kind: "jumpToYear"; year: number };

const clamp = (v: number, lo: number, hi: number) =>
  Math.min(hi, Math.max(lo, v));

export function initialState(
  edition: string,
  horizon: [number, number],
  year?: number
): ViewState {
  const y = clamp(year ?? horizon[1], horizon[0], horizon[1]);
  return {
    edition,
    year: y,
    selectedPerson: null,
    topK: 50,
    layoutSeed: `${edition}:${y}`,
    splitEdition: null,
  };
}

export function reduce(
  state: ViewState,
  action: Action,
  horizon: [number, number]
): ViewState {
  switch (action.kind) {
    case "setYear":
    case "jumpToYear": {
      const year = clamp(action.year, horizon[0], horizon[1]);
      return { ...state, year, layoutSeed: `${state.edition}:${year}` };
    }
    case "stepYear": {
      const year = clamp(state.year + action.delta, horizon[0], horizon[1]);
      return { ...state, year, layoutSeed: `${state.edition}:${year}` };
    }
    case "selectPerson":
      return { ...state, selectedPerson: action.id };
    case "clearSelection":
      return { ...state, selectedPerson: null };
    case "setTopK":
      return { ...state, topK: clamp(Math.round(action.topK), 1, 100) };
    case "setEdition":
      return {
        ...state,
        edition: action.edition,
        layoutSeed: `${action.edition}:${state.year}`,
      };
    case "setSplitEdition":
      return { ...state, splitEdition: action.edition };
  }
}

export function replay(
  start: ViewState,
  actions: Action[],
  horizon: [number, number]
): ViewState {
  return actions.reduce((s, a) => reduce(s, a, horizon), start);
}

// BC years render as "N BC"; URLs stay astronomical.
export function formatYear(year: number): string {
  return year <= 0 ? `${1 - year} BC` : `${year}`;
}
