// Pure SVG/HTML string rendering so views are testable without a DOM.
// Node radius scales with pagerank (the API's number, shown verbatim in the
// tooltip). main.ts injects the strings into the page.

import { forceLayout } from "./layout";
import { formatYear } from "./state";
import { AlltimeEntry, NetworkPayload, PersonPayload } from "./types";

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderNetworkSvg(
  payload: NetworkPayload,
  seed: string,
  width = 800,
  height = 600
): string {
  const points = forceLayout(payload, seed, width, height);
  const pos = new Map(points.map((p) => [p.id, p]));
  const maxPr = Math.max(...payload.entries.map((e) => e.pagerank), 1e-12);

  const edgeLines = payload.edges
    .filter(([s, d]) => pos.has(s) && pos.has(d))
    .map(([s, d]) => {
      const a = pos.get(s)!;
      const b = pos.get(d)!;
      return `<line x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}" class="edge"/>`;
    });

  const nodeCircles = payload.entries.map((e) => {
    const p = pos.get(e.id)!;
    const r = 4 + 16 * Math.sqrt(e.pagerank / maxPr);
    return (
      `<g class="node" data-id="${e.id}" data-title="${esc(e.title)}">` +
      `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="${r.toFixed(1)}"/>` +
      `<text x="${p.x.toFixed(1)}" y="${(p.y - r - 3).toFixed(1)}">${esc(e.title)}</text>` +
      `<title>${esc(e.title)} pagerank=${e.pagerank} indegree=${e.indegree}</title>` +
      `</g>`
    );
  });

  return (
    `<svg viewBox="0 0 ${width} ${height}" data-year="${payload.year}">` +
    `<text class="year-label" x="10" y="24">${esc(formatYear(payload.year))}</text>` +
    edgeLines.join("") +
    nodeCircles.join("") +
    `</svg>`
  );
}

export function renderSparkline(
  series: { year: number; pagerank: number }[],
  width = 220,
  height = 40
): string {
  if (series.length === 0) return `<svg class="sparkline"></svg>`;
  const years = series.map((p) => p.year);
  const vals = series.map((p) => p.pagerank);
  const y0 = Math.min(...years);
  const y1 = Math.max(...years);
  const vmax = Math.max(...vals, 1e-12);
  const px = (yr: number) =>
    y1 === y0 ? width / 2 : ((yr - y0) / (y1 - y0)) * width;
  const py = (v: number) => height - (v / vmax) * (height - 2) - 1;
  const path = series
    .map((p, i) => `${i === 0 ? "M" : "L"}${px(p.year).toFixed(1)},${py(p.pagerank).toFixed(1)}`)
    .join("");
  return `<svg class="sparkline" viewBox="0 0 ${width} ${height}"><path d="${path}"/></svg>`;
}

export function renderPersonPanel(person: PersonPayload): string {
  const peak = person.series.reduce(
    (best, p) => (p.pagerank > best.pagerank ? p : best),
    person.series[0] ?? { year: person.birth, rank: 0, pagerank: 0 }
  );
  return (
    `<div class="person-panel" data-id="${person.id}">` +
    `<h2>${esc(person.title)}</h2>` +
    `<p>${esc(person.occupation)} · ${esc(person.culture)} · ` +
    `${esc(formatYear(person.birth))} – ${esc(formatYear(person.death))}</p>` +
    renderSparkline(person.series) +
    `<button data-jump="${person.birth}">jump to birth year</button>` +
    `<button data-jump="${peak.year}">jump to peak year</button>` +
    `</div>`
  );
}

export function renderTopList(edition: string, entries: AlltimeEntry[]): string {
  const rows = entries
    .map(
      (e) =>
        `<li data-id="${e.id}">${e.rank}. ${esc(e.title)} ` +
        `<span class="score">${e.score}</span></li>`
    )
    .join("");
  return `<div class="top-list" data-edition="${esc(edition)}"><h3>${esc(edition)}</h3><ol>${rows}</ol></div>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="banner error">${esc(message)}</div>`;
}
