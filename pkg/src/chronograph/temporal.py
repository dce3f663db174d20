"""Interval-indexed temporal graph over a corpus.

Persons are intervals [birth, death]; a directed link becomes an edge valid
over the intersection of both lifespans. Year queries are answered by
interval stabbing; whole-horizon scans use an incremental sweep over
activation/deactivation events instead of re-filtering per year.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Optional

import numpy as np

from .corpus import Corpus


class YearRangeError(ValueError):
    """Requested year is outside the graph horizon."""


class IntervalIndex:
    """Static centered interval tree over integer intervals [start, end].

    stab(y) returns the payload indices of all intervals containing y in
    O(log n + output).
    """

    __slots__ = ("_node",)

    def __init__(self, starts, ends):
        starts = np.asarray(starts, dtype=np.int64)
        ends = np.asarray(ends, dtype=np.int64)
        idx = np.arange(len(starts))
        self._node = self._build(starts, ends, idx)

    def _build(self, starts, ends, idx):
        if len(idx) == 0:
            return None
        center = int(np.median(np.concatenate([starts, ends])))
        left_mask = ends < center
        right_mask = starts > center
        here = ~(left_mask | right_mask)
        by_start = np.argsort(starts[here], kind="stable")
        by_end = np.argsort(-ends[here], kind="stable")
        return (
            center,
            self._build(starts[left_mask], ends[left_mask], idx[left_mask]),
            self._build(starts[right_mask], ends[right_mask], idx[right_mask]),
            starts[here][by_start], idx[here][by_start],   # ascending start
            ends[here][by_end], idx[here][by_end],         # descending end
        )

    def stab(self, year: int) -> np.ndarray:
        out = []
        node = self._node
        while node is not None:
            center, left, right, starts, sidx, ends, eidx = node
            if year < center:
                # overlapping-center intervals with start <= year
                cut = np.searchsorted(starts, year, side="right")
                out.append(sidx[:cut])
                node = left
            elif year > center:
                cut = np.searchsorted(-ends, -year, side="right")
                out.append(eidx[:cut])
                node = right
            else:
                out.append(sidx)
                node = None
        if not out:
            return np.empty(0, dtype=np.int64)
        return np.sort(np.concatenate(out))


@dataclass(frozen=True)
class IntervalEdge:
    src: int
    dst: int
    start: int
    end: int


@dataclass
class YearSlice:
    """Induced network of everyone alive in one year.

    node_ids and the edge endpoint arrays are the primitive storage; the
    set/adjacency views exist for convenience and tests.
    """

    year: int
    node_ids: np.ndarray   # sorted person ids
    edge_src: np.ndarray   # person ids, aligned with edge_dst
    edge_dst: np.ndarray

    @cached_property
    def nodes(self) -> frozenset:
        return frozenset(int(i) for i in self.node_ids)

    @cached_property
    def out_edges(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {int(i): [] for i in self.node_ids}
        order = np.lexsort((self.edge_dst, self.edge_src))
        for s, d in zip(self.edge_src[order], self.edge_dst[order]):
            adj[int(s)].append(int(d))
        return adj

    @property
    def edge_set(self) -> frozenset:
        return frozenset(zip(self.edge_src.tolist(), self.edge_dst.tolist()))

    def __len__(self) -> int:
        return len(self.node_ids)


class TemporalGraph:
    """Immutable after build; safe to share across threads/workers."""

    def __init__(self, corpus: Corpus):
        self.corpus = corpus
        self.horizon = corpus.horizon
        n = len(corpus.persons)
        self.birth = np.fromiter((p.birth_year for p in corpus.persons),
                                 dtype=np.int64, count=n)
        self.death = np.fromiter((p.death_year for p in corpus.persons),
                                 dtype=np.int64, count=n)

        if corpus.links:
            src = np.array([l[0] for l in corpus.links], dtype=np.int64)
            dst = np.array([l[1] for l in corpus.links], dtype=np.int64)
        else:
            src = dst = np.empty(0, dtype=np.int64)
        start = np.maximum(self.birth[src], self.birth[dst])
        end = np.minimum(self.death[src], self.death[dst])
        keep = start <= end
        self.edge_src = src[keep]
        self.edge_dst = dst[keep]
        self.edge_start = start[keep]
        self.edge_end = end[keep]
        self.dropped_links = int((~keep).sum())

        self._node_index = IntervalIndex(self.birth, self.death)
        self._edge_index = IntervalIndex(self.edge_start, self.edge_end)

    @property
    def num_edges(self) -> int:
        return len(self.edge_src)

    def edges(self) -> Iterator[IntervalEdge]:
        for s, d, a, b in zip(self.edge_src, self.edge_dst,
                              self.edge_start, self.edge_end):
            yield IntervalEdge(int(s), int(d), int(a), int(b))

    def _check_year(self, year: int) -> None:
        if not self.horizon[0] <= year <= self.horizon[1]:
            raise YearRangeError(
                f"year {year} outside horizon [{self.horizon[0]}, {self.horizon[1]}]")

    def slice(self, year: int) -> YearSlice:
        self._check_year(year)
        nodes = self._node_index.stab(year)
        eidx = self._edge_index.stab(year)
        return YearSlice(year, nodes, self.edge_src[eidx], self.edge_dst[eidx])

    def sweep(self, year_range: Optional[tuple[int, int]] = None,
              visitor: Optional[Callable[[YearSlice], None]] = None
              ) -> Iterator[YearSlice]:
        """Visit years in ascending order, maintaining the active node/edge
        sets incrementally. Each observed slice equals slice(year) exactly.

        Usable either as a generator or by passing a visitor callable (whose
        failure aborts the sweep and propagates).
        """
        gen = self._sweep_iter(year_range)
        if visitor is None:
            return gen
        for sl in gen:
            visitor(sl)
        return iter(())

    def _sweep_iter(self, year_range):
        y0, y1 = year_range if year_range is not None else self.horizon
        self._check_year(y0)
        self._check_year(y1)
        if y0 > y1:
            raise YearRangeError(f"empty year range [{y0}, {y1}]")

        nmask = np.zeros(len(self.birth), dtype=bool)
        nmask[self._node_index.stab(y0)] = True
        emask = np.zeros(self.num_edges, dtype=bool)
        emask[self._edge_index.stab(y0)] = True

        # event orders: activation by start year, deactivation by end year
        n_by_birth = np.argsort(self.birth, kind="stable")
        n_by_death = np.argsort(self.death, kind="stable")
        e_by_start = np.argsort(self.edge_start, kind="stable")
        e_by_end = np.argsort(self.edge_end, kind="stable")
        # pointers positioned just past the y0 seed state
        np_act = int(np.searchsorted(self.birth[n_by_birth], y0, side="right"))
        np_dea = int(np.searchsorted(self.death[n_by_death], y0 - 1, side="right"))
        ep_act = int(np.searchsorted(self.edge_start[e_by_start], y0, side="right"))
        ep_dea = int(np.searchsorted(self.edge_end[e_by_end], y0 - 1, side="right"))

        for year in range(y0, y1 + 1):
            if year > y0:
                while np_act < len(n_by_birth) and self.birth[n_by_birth[np_act]] == year:
                    nmask[n_by_birth[np_act]] = True
                    np_act += 1
                while np_dea < len(n_by_death) and self.death[n_by_death[np_dea]] == year - 1:
                    nmask[n_by_death[np_dea]] = False
                    np_dea += 1
                while ep_act < len(e_by_start) and self.edge_start[e_by_start[ep_act]] == year:
                    emask[e_by_start[ep_act]] = True
                    ep_act += 1
                while ep_dea < len(e_by_end) and self.edge_end[e_by_end[ep_dea]] == year - 1:
                    emask[e_by_end[ep_dea]] = False
                    ep_dea += 1
            eidx = np.flatnonzero(emask)
            yield YearSlice(year, np.flatnonzero(nmask),
                            self.edge_src[eidx], self.edge_dst[eidx])

    def nonempty_year_count(self) -> int:
        """Number of horizon years with at least one alive person."""
        y0, y1 = self.horizon
        span = y1 - y0 + 2
        diff = np.zeros(span, dtype=np.int64)
        np.add.at(diff, self.birth - y0, 1)
        np.add.at(diff, self.death - y0 + 1, -1)
        return int((np.cumsum(diff)[:span - 1] > 0).sum())


def build(corpus: Corpus) -> TemporalGraph:
    return TemporalGraph(corpus)
