// Small deterministic force layout: seeded random start, spring forces along
// edges, pairwise repulsion, fixed iteration count. No wall-clock input, so
// positions depend only on (payload, seed).

import { NetworkPayload } from "./types";
import { hashSeed, mulberry32 } from "./rng";

export interface LayoutPoint {
  id: number;
  x: number;
  y: number;
}

const ITERATIONS = 120;
const SPRING = 0.02;
const REPULSION = 800;
const CENTER_PULL = 0.01;

export function forceLayout(
  payload: NetworkPayload,
  seed: string,
  width = 800,
  height = 600
): LayoutPoint[] {
  const rand = mulberry32(hashSeed(seed));
  const n = payload.entries.length;
  if (n === 0) return [];
  const index = new Map<number, number>();
  payload.entries.forEach((e, i) => index.set(e.id, i));

  const x = new Float64Array(n);
  const y = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    x[i] = width * rand();
    y[i] = height * rand();
  }
  const edges = payload.edges
    .filter(([s, d]) => index.has(s) && index.has(d))
    .map(([s, d]) => [index.get(s)!, index.get(d)!] as [number, number]);

  for (let it = 0; it < ITERATIONS; it++) {
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = x[i] - x[j];
        let dy = y[i] - y[j];
        const d2 = dx * dx + dy * dy + 0.01;
        const f = REPULSION / d2;
        dx *= f;
        dy *= f;
        fx[i] += dx;
        fy[i] += dy;
        fx[j] -= dx;
        fy[j] -= dy;
      }
      fx[i] += (width / 2 - x[i]) * CENTER_PULL;
      fy[i] += (height / 2 - y[i]) * CENTER_PULL;
    }
    for (const [a, b] of edges) {
      const dx = x[b] - x[a];
      const dy = y[b] - y[a];
      fx[a] += dx * SPRING;
      fy[a] += dy * SPRING;
      fx[b] -= dx * SPRING;
      fy[b] -= dy * SPRING;
    }
    const cool = 1 - it / ITERATIONS;
    for (let i = 0; i < n; i++) {
      x[i] = Math.min(width, Math.max(0, x[i] + fx[i] * cool));
      y[i] = Math.min(height, Math.max(0, y[i] + fy[i] * cool));
    }
  }
  return payload.entries.map((e, i) => ({ id: e.id, x: x[i], y: y[i] }));
}
