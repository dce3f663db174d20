// App controller. Holds the ViewState, records every dispatched action (so a
// session can be replayed through the pure reducer), and turns state changes
// into API calls: a debounced network fetch while the year slider is scrubbed,
// and exactly one person-detail fetch per selection.

import { ApiClient } from "./api";
import { debounce, Debounced } from "./debounce";
import { Action, initialState, reduce, replay, ViewState } from "./state";
import { AlltimeEntry, NetworkPayload, PersonPayload } from "./types";

export interface ControllerOptions {
  debounceMs?: number;
  onNetwork?: (payload: NetworkPayload, state: ViewState) => void;
  onPerson?: (payload: PersonPayload, state: ViewState) => void;
  onTopLists?: (
    lists: { edition: string; entries: AlltimeEntry[] }[],
    state: ViewState
  ) => void;
  onError?: (err: unknown) => void;
}

export class Controller {
  state: ViewState;
  readonly actionLog: Action[] = [];
  private fetchNetworkDebounced: Debounced<[]>;
  private fetchedPerson: number | null = null;
  private readonly startEdition: string;

  constructor(
    private api: ApiClient,
    edition: string,
    private horizon: [number, number],
    private opts: ControllerOptions = {}
  ) {
    this.startEdition = edition;
    this.state = initialState(edition, horizon);
    this.fetchNetworkDebounced = debounce(
      () => void this.fetchNetwork(),
      opts.debounceMs ?? 150
    );
  }

  dispatch(action: Action): ViewState {
    const prev = this.state;
    this.state = reduce(prev, action, this.horizon);
    this.actionLog.push(action);

    if (
      this.state.year !== prev.year ||
      this.state.edition !== prev.edition ||
      this.state.topK !== prev.topK
    ) {
      this.fetchNetworkDebounced();
    }
    if (
      this.state.edition !== prev.edition ||
      this.state.splitEdition !== prev.splitEdition
    ) {
      void this.fetchTopLists();
    }
    if (
      this.state.selectedPerson !== null &&
      (this.state.selectedPerson !== prev.selectedPerson ||
        this.state.edition !== prev.edition)
    ) {
      void this.fetchPerson(this.state.selectedPerson);
    }
    if (this.state.selectedPerson === null) this.fetchedPerson = null;
    return this.state;
  }

  // Initial load: fetch without waiting for the debounce window.
  async start(): Promise<void> {
    await Promise.all([this.fetchNetwork(), this.fetchTopLists()]);
  }

  settle(): void {
    this.fetchNetworkDebounced.flush();
  }

  replayLog(actions: Action[]): ViewState {
    return replay(initialState(this.startEdition, this.horizon), actions, this.horizon);
  }

  private async fetchNetwork(): Promise<void> {
    const { edition, year, topK } = this.state;
    try {
      const payload = await this.api.network(edition, year, topK);
      // Stale guard: the user may have moved on while the request ran.
      if (this.state.year === payload.year && this.state.edition === edition) {
        this.opts.onNetwork?.(payload, this.state);
      }
    } catch (err) {
      this.fail(err);
    }
  }

  private async fetchPerson(id: number): Promise<void> {
    if (this.fetchedPerson === id) return;
    this.fetchedPerson = id;
    try {
      const payload = await this.api.person(this.state.edition, id);
      if (this.state.selectedPerson === id) {
        this.opts.onPerson?.(payload, this.state);
      }
    } catch (err) {
      this.fetchedPerson = null;
      this.fail(err);
    }
  }

  private async fetchTopLists(): Promise<void> {
    const editions = [this.state.edition];
    if (
      this.state.splitEdition !== null &&
      this.state.splitEdition !== this.state.edition
    ) {
      editions.push(this.state.splitEdition);
    }
    try {
      const lists = await Promise.all(
        editions.map(async (ed, i) => ({
          edition: ed,
          entries: (await this.api.alltime(ed, 25, `alltime:${i}`)).entries,
        }))
      );
      this.opts.onTopLists?.(lists, this.state);
    } catch (err) {
      this.fail(err);
    }
  }

  private fail(err: unknown): void {
    if ((err as { name?: string })?.name === "AbortError") return;
    this.opts.onError?.(err);
  }
}
