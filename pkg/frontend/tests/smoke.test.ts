// End-to-end smoke test against a real served bundle: builds a tiny fixture
// corpus with the Python CLI, serves it, and drives the UI modules against the
// live API. Requires python3 with the backend package importable from ../src.

import { ChildProcess, spawn, spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api";
import { Controller } from "../src/controller";
import { renderNetworkSvg, renderPersonPanel } from "../src/render";
import { NetworkPayload, PersonPayload } from "../src/types";

const SRC_DIR = fileURLToPath(new URL("../../src", import.meta.url));
const PORT = 8200 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const HORIZON: [number, number] = [-50, 60];

// Natus is born in year 1, so the year-0 and year-1 networks differ by one
// node entry — the property the year slider has to make visible.
const CORPUS_LINES = [
  { edition: "en", horizon: [-50, 60], format: "chronograph-corpus-v1" },
  { id: 0, title: "Aquila", birth: -40, death: 30, links: [2], occupation: "politician", culture: "anglo" },
  { id: 1, title: "Natus", birth: 1, death: 60, links: [2], occupation: "religious", culture: "levantine" },
  { id: 2, title: "Verus", birth: -10, death: 45, links: [0, 1], occupation: "other", culture: "anglo" },
];

let workdir: string;
let server: ChildProcess | null = null;

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "wikihistory-smoke-"));
  const corpusPath = join(workdir, "corpus.jsonl");
  const bundleDir = join(workdir, "bundle");
  writeFileSync(
    corpusPath,
    CORPUS_LINES.map((l) => JSON.stringify(l)).join("\n") + "\n"
  );

  const env = { ...process.env, PYTHONPATH: SRC_DIR };
  const build = spawnSync(
    "python3",
    ["-m", "chronograph.cli", "build", corpusPath, "-o", bundleDir,
     "--from", "-50", "--to", "60", "--workers", "1"],
    { env, encoding: "utf-8" }
  );
  if (build.status !== 0) {
    throw new Error(`bundle build failed: ${build.stderr}`);
  }

  server = spawn(
    "python3",
    ["-m", "chronograph.cli", "serve", "--bundle", `en=${bundleDir}`,
     "--host", "127.0.0.1", "--port", String(PORT)],
    { env, stdio: ["ignore", "ignore", "pipe"] }
  );

  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const resp = await fetch(`${BASE}/editions`);
      if (resp.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("API server did not start");
    await new Promise((r) => setTimeout(r, 200));
  }
}, 60_000);

afterAll(() => {
  server?.kill();
  if (workdir) rmSync(workdir, { recursive: true, force: true });
});

describe("served fixture bundle", () => {
  it("year slider: year 0 vs year 1 networks differ by a node entry", async () => {
    const api = new ApiClient(BASE);
    const svgs = new Map<number, string>();
    const controller = new Controller(api, "en", HORIZON, {
      debounceMs: 10,
      onNetwork: (payload: NetworkPayload, state) => {
        svgs.set(payload.year, renderNetworkSvg(payload, state.layoutSeed));
      },
    });

    controller.dispatch({ kind: "setYear", year: 0 });
    controller.settle();
    await vi.waitFor(() => expect(svgs.has(0)).toBe(true), 5000);
    controller.dispatch({ kind: "setYear", year: 1 });
    controller.settle();
    await vi.waitFor(() => expect(svgs.has(1)).toBe(true), 5000);

    const svg0 = svgs.get(0)!;
    const svg1 = svgs.get(1)!;
    expect(svg0).toContain("Aquila");
    expect(svg0).toContain("Verus");
    expect(svg0).not.toContain("Natus");
    expect(svg1).toContain("Natus");
    expect(svg0).toContain('data-year="0"');
    expect(svg1).toContain('data-year="1"');
  });

  it("person inspector triggers exactly one detail fetch", async () => {
    let peopleFetches = 0;
    const countingFetch = (url: string, init?: { signal?: AbortSignal }) => {
      if (url.includes("/people/")) peopleFetches += 1;
      return fetch(url, init);
    };
    const api = new ApiClient(BASE, countingFetch);
    let panel: string | null = null;
    const controller = new Controller(api, "en", HORIZON, {
      debounceMs: 10,
      onPerson: (payload: PersonPayload) => {
        panel = renderPersonPanel(payload);
      },
    });

    controller.dispatch({ kind: "selectPerson", id: 1 });
    controller.dispatch({ kind: "selectPerson", id: 1 }); // re-click: no refetch
    controller.dispatch({ kind: "setYear", year: 30 }); // selection survives
    await vi.waitFor(() => expect(panel).not.toBeNull(), 5000);

    expect(peopleFetches).toBe(1);
    expect(panel!).toContain("Natus");
    expect(panel!).toContain('data-jump="1"'); // jump to birth year
  });

  it("replaying the recorded interaction log reproduces the final ViewState", async () => {
    const api = new ApiClient(BASE);
    const controller = new Controller(api, "en", HORIZON, { debounceMs: 10 });

    controller.dispatch({ kind: "setYear", year: 0 });
    controller.dispatch({ kind: "setYear", year: 1 });
    controller.dispatch({ kind: "selectPerson", id: 2 });
    controller.dispatch({ kind: "setTopK", topK: 10 });
    controller.dispatch({ kind: "jumpToYear", year: -10 });
    controller.settle();
    await new Promise((r) => setTimeout(r, 100));

    const replayed = controller.replayLog([...controller.actionLog]);
    expect(replayed).toEqual(controller.state);
  });

  it("alltime ranking endpoint feeds the top list", async () => {
    const api = new ApiClient(BASE);
    const { entries } = await api.alltime("en", 10);
    expect(entries.length).toBe(3);
    expect(entries[0].rank).toBe(1);
    const titles = entries.map((e) => e.title);
    expect(titles).toContain("Verus");
  });
});
