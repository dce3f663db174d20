"""Independent brute-force oracles the fast paths are checked against.

Deliberately naive: re-filter everything per year, dense matrix power
iteration, dict-based aggregation. Keep these free of chronograph internals
beyond the public data types.
"""

from __future__ import annotations

import numpy as np

from chronograph.corpus import Corpus


def brute_slice(corpus: Corpus, year: int) -> tuple[set[int], set[tuple[int, int]]]:
    """Re-filter every person and link by hand for one year."""
    nodes = {p.id for p in corpus.persons if p.birth_year <= year <= p.death_year}
    edges = {(s, d) for s, d in corpus.links if s in nodes and d in nodes}
    return nodes, edges


def brute_nonempty_years(corpus: Corpus) -> int:
    y0, y1 = corpus.horizon
    count = 0
    for year in range(y0, y1 + 1):
        if any(p.birth_year <= year <= p.death_year for p in corpus.persons):
            count += 1
    return count


def dense_pagerank(nodes: list[int], edges: set[tuple[int, int]],
                   damping: float = 0.85, epsilon: float = 1e-9,
                   max_iter: int = 100) -> dict[int, float]:
    """Dense-matrix power iteration with uniform dangling redistribution and
    the same L1 stopping rule as the production path."""
    nodes = sorted(nodes)
    n = len(nodes)
    pos = {pid: i for i, pid in enumerate(nodes)}
    M = np.zeros((n, n))
    outdeg = {pid: 0 for pid in nodes}
    for s, _ in edges:
        outdeg[s] += 1
    for s, d in edges:
        M[pos[d], pos[s]] = 1.0 / outdeg[s]
    for pid in nodes:
        if outdeg[pid] == 0:
            M[:, pos[pid]] = 1.0 / n
    v = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        new = (1.0 - damping) / n + damping * (M @ v)
        if np.abs(new - v).sum() < epsilon:
            v = new
            break
        v = new
    return {pid: float(v[pos[pid]]) for pid in nodes}


def brute_indegree(nodes: set[int], edges: set[tuple[int, int]]) -> dict[int, int]:
    indeg = {pid: 0 for pid in nodes}
    for _, d in edges:
        indeg[d] += 1
    return indeg


def brute_alltime(corpus: Corpus, years: range, damping=0.85, epsilon=1e-9,
                  max_iter=100, method="sum") -> list[tuple[int, float, int]]:
    """Recompute-and-aggregate over every year, sorted by the ranking order."""
    scores: dict[int, list[float]] = {}
    indegs: dict[int, int] = {}
    for year in years:
        nodes, edges = brute_slice(corpus, year)
        if not nodes:
            continue
        pr = dense_pagerank(sorted(nodes), edges, damping, epsilon, max_iter)
        indeg = brute_indegree(nodes, edges)
        for pid in nodes:
            scores.setdefault(pid, []).append(pr[pid])
            indegs[pid] = indegs.get(pid, 0) + indeg[pid]
    out = []
    for pid, vals in scores.items():
        if method == "sum":
            agg = sum(vals)
        elif method == "mean":
            agg = sum(vals) / len(vals)
        else:
            agg = max(vals)
        out.append((pid, agg, indegs[pid]))
    out.sort(key=lambda t: (-t[1], -t[2], t[0]))
    return out
