"""Per-year PageRank with indegree tiebreak, and all-time aggregation.

PageRank is power iteration with uniform start, uniform redistribution of
dangling-node mass, and an L1 stopping rule. Summation order is canonical
(edges sorted by destination then source), so scores do not depend on how
the adjacency happened to be stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

from .temporal import YearSlice

DEFAULT_DAMPING = 0.85
DEFAULT_EPSILON = 1e-9
DEFAULT_MAX_ITER = 100

AGG_METHODS = ("sum", "mean", "max")


@dataclass(frozen=True)
class RankEntry:
    id: int
    pagerank: float
    indegree: int


@dataclass
class YearRanking:
    year: int
    entries: list[RankEntry]
    k: int
    converged: bool = True


@dataclass
class AllTimeRanking:
    edition: str
    method: str
    entries: list[RankEntry] = field(default_factory=list)  # pagerank = aggregate score


def _slice_arrays(slice: YearSlice):
    """Dedup edges and map person ids to dense slice positions."""
    nodes = slice.node_ids
    if len(slice.edge_src):
        pairs = np.unique(np.stack([slice.edge_dst, slice.edge_src], axis=1), axis=0)
        dst_pos = np.searchsorted(nodes, pairs[:, 0])
        src_pos = np.searchsorted(nodes, pairs[:, 1])
    else:
        dst_pos = src_pos = np.empty(0, dtype=np.int64)
    return nodes, src_pos, dst_pos


def pagerank_scores(slice: YearSlice, damping: float = DEFAULT_DAMPING,
                    epsilon: float = DEFAULT_EPSILON,
                    max_iter: int = DEFAULT_MAX_ITER) -> tuple[np.ndarray, bool]:
    """Scores aligned with slice.node_ids, plus a convergence flag."""
    n = len(slice.node_ids)
    if n == 0:
        raise ValueError("pagerank of an empty slice")
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must be in (0,1), got {damping}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")

    nodes, src_pos, dst_pos = _slice_arrays(slice)
    outdeg = np.bincount(src_pos, minlength=n).astype(np.float64)
    dangling = outdeg == 0.0
    safe_outdeg = np.where(dangling, 1.0, outdeg)

    score = np.full(n, 1.0 / n)
    base = (1.0 - damping) / n
    converged = False
    for _ in range(max_iter):
        contrib = score / safe_outdeg
        spread = np.bincount(dst_pos, weights=contrib[src_pos], minlength=n)
        dangling_mass = score[dangling].sum()
        new = base + damping * (spread + dangling_mass / n)
        delta = np.abs(new - score).sum()
        score = new
        if delta < epsilon:
            converged = True
            break
    return score, converged


def pagerank(slice: YearSlice, damping: float = DEFAULT_DAMPING,
             epsilon: float = DEFAULT_EPSILON,
             max_iter: int = DEFAULT_MAX_ITER) -> tuple[dict[int, float], bool]:
    score, converged = pagerank_scores(slice, damping, epsilon, max_iter)
    return {int(i): float(s) for i, s in zip(slice.node_ids, score)}, converged


def indegree_counts(slice: YearSlice) -> np.ndarray:
    """Distinct in-neighbor counts aligned with slice.node_ids."""
    n = len(slice.node_ids)
    _, src_pos, dst_pos = _slice_arrays(slice)
    return np.bincount(dst_pos, minlength=n)


def indegree(slice: YearSlice) -> dict[int, int]:
    return {int(i): int(c) for i, c in zip(slice.node_ids, indegree_counts(slice))}


def rank_year(slice: YearSlice, k: int, damping: float = DEFAULT_DAMPING,
              epsilon: float = DEFAULT_EPSILON,
              max_iter: int = DEFAULT_MAX_ITER) -> YearRanking:
    """Top-k under (pagerank desc, indegree desc, id asc)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    score, converged = pagerank_scores(slice, damping, epsilon, max_iter)
    indeg = indegree_counts(slice)
    order = np.lexsort((slice.node_ids, -indeg, -score))[:k]
    entries = [RankEntry(int(slice.node_ids[i]), float(score[i]), int(indeg[i]))
               for i in order]
    return YearRanking(slice.year, entries, k, converged)


class AllTimeAccumulator:
    """Vectorized per-year accumulation over dense person ids; merges
    associatively so year chunks can be processed in parallel."""

    def __init__(self, num_persons: int):
        self.n = num_persons
        self.score_sum = np.zeros(num_persons)
        self.score_max = np.zeros(num_persons)
        self.years = np.zeros(num_persons, dtype=np.int64)
        self.indeg_sum = np.zeros(num_persons, dtype=np.int64)

    def add_year(self, ids: np.ndarray, scores: np.ndarray, indeg: np.ndarray) -> None:
        self.score_sum[ids] += scores
        np.maximum.at(self.score_max, ids, scores)
        self.years[ids] += 1
        self.indeg_sum[ids] += indeg

    def merge(self, other: "AllTimeAccumulator") -> None:
        self.score_sum += other.score_sum
        np.maximum(self.score_max, other.score_max, out=self.score_max)
        self.years += other.years
        self.indeg_sum += other.indeg_sum

    def finalize(self, edition: str, method: str = "sum") -> AllTimeRanking:
        if method not in AGG_METHODS:
            raise ValueError(f"unknown aggregation method {method!r}")
        seen = np.flatnonzero(self.years)
        if method == "sum":
            agg = self.score_sum[seen]
        elif method == "mean":
            agg = self.score_sum[seen] / self.years[seen]
        else:
            agg = self.score_max[seen]
        indeg = self.indeg_sum[seen]
        order = np.lexsort((seen, -indeg, -agg))
        entries = [RankEntry(int(seen[i]), float(agg[i]), int(indeg[i]))
                   for i in order]
        return AllTimeRanking(edition, method, entries)


def aggregate_alltime(year_scores: Iterable[tuple[Mapping[int, float], Mapping[int, int]]],
                      method: str = "sum", edition: str = "",
                      num_persons: Optional[int] = None) -> AllTimeRanking:
    """Aggregate a stream of per-year (pagerank map, indegree map) pairs.

    Every person scored in at least one year gets one entry; the aggregate is
    sum/mean/max of the per-year pagerank, total indegree is summed.
    """
    if method not in AGG_METHODS:
        raise ValueError(f"unknown aggregation method {method!r}")
    items = list(year_scores)
    if num_persons is None:
        num_persons = 1 + max((pid for scores, _ in items for pid in scores),
                              default=-1)
    acc = AllTimeAccumulator(num_persons)
    for scores, indegs in items:
        if not scores:
            continue
        ids = np.fromiter(sorted(scores), dtype=np.int64)
        vals = np.array([scores[int(i)] for i in ids])
        indeg = np.array([indegs.get(int(i), 0) for i in ids], dtype=np.int64)
        acc.add_year(ids, vals, indeg)
    return acc.finalize(edition, method)
