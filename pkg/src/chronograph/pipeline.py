"""End-to-end run: sweep every year, rank each slice, aggregate, report.

Year chunks are independent, so the sweep can be split across worker
processes; each chunk seeds its own sweep from a stabbing query and the
chunk results are merged in ascending year order.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Optional

import numpy as np

from . import HORIZON_END, HORIZON_START
from .bundle import RunResult
from .centrality import (AGG_METHODS, AllTimeAccumulator, DEFAULT_DAMPING,
                         DEFAULT_EPSILON, DEFAULT_MAX_ITER, indegree_counts,
                         pagerank_scores)
from .corpus import Corpus
from .reports import category_distribution, edition_culture, outgroup_share
from .temporal import TemporalGraph, build

log = logging.getLogger(__name__)


@dataclass
class RunConfig:
    year_from: int = HORIZON_START
    year_to: int = HORIZON_END
    damping: float = DEFAULT_DAMPING
    epsilon: float = DEFAULT_EPSILON
    max_iter: int = DEFAULT_MAX_ITER
    k: int = 50
    method: str = "sum"
    workers: int = 1
    report_n: int = 50
    culture: Optional[str] = None  # ingroup culture override

    def validate(self) -> None:
        if self.year_from > self.year_to:
            raise ValueError(f"year range [{self.year_from}, {self.year_to}] is empty")
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping must be in (0,1), got {self.damping}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.method not in AGG_METHODS:
            raise ValueError(f"unknown aggregation method {self.method!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass
class _ChunkResult:
    year_records: dict[int, dict] = field(default_factory=dict)
    series: dict[int, list[dict]] = field(default_factory=dict)
    acc: Optional[AllTimeAccumulator] = None
    not_converged: int = 0


def _process_chunk(graph: TemporalGraph, y0: int, y1: int, cfg: RunConfig) -> _ChunkResult:
    res = _ChunkResult(acc=AllTimeAccumulator(len(graph.birth)))
    done = 0
    for sl in graph.sweep((y0, y1)):
        year = sl.year
        done += 1
        if done % 100 == 0:
            log.info("year %d (%d/%d in chunk)", year, done, y1 - y0 + 1)
        if len(sl) == 0:
            res.year_records[year] = {"year": year, "entries": [], "edges": []}
            continue
        score, converged = pagerank_scores(sl, cfg.damping, cfg.epsilon, cfg.max_iter)
        if not converged:
            res.not_converged += 1
        indeg = indegree_counts(sl)
        res.acc.add_year(sl.node_ids, score, indeg)

        order = np.lexsort((sl.node_ids, -indeg, -score))[:cfg.k]
        top_ids = sl.node_ids[order]
        entries = []
        for pos, i in enumerate(order):
            pid = int(sl.node_ids[i])
            entries.append({"id": pid, "pagerank": float(score[i]),
                            "indegree": int(indeg[i])})
            res.series.setdefault(pid, []).append(
                {"year": year, "rank": pos + 1, "pagerank": float(score[i])})

        top_sorted = np.sort(top_ids)
        keep = np.isin(sl.edge_src, top_sorted) & np.isin(sl.edge_dst, top_sorted)
        edges = sorted(zip(sl.edge_src[keep].tolist(), sl.edge_dst[keep].tolist()))
        res.year_records[year] = {"year": year, "entries": entries,
                                  "edges": [list(e) for e in edges]}
    return res


_WORKER_GRAPH: Optional[TemporalGraph] = None
_WORKER_CFG: Optional[RunConfig] = None


def _worker(bounds: tuple[int, int]) -> _ChunkResult:
    return _process_chunk(_WORKER_GRAPH, bounds[0], bounds[1], _WORKER_CFG)


def default_workers() -> int:
    return os.cpu_count() or 1


def run_pipeline(corpus: Corpus, cfg: RunConfig) -> RunResult:
    cfg.validate()
    y0 = max(cfg.year_from, corpus.horizon[0])
    y1 = min(cfg.year_to, corpus.horizon[1])
    if y0 > y1:
        raise ValueError("year range does not intersect corpus horizon")
    graph = build(corpus)
    log.info("graph built: %d persons, %d edges (%d links dropped as "
             "non-contemporaneous)", len(corpus.persons), graph.num_edges,
             graph.dropped_links)

    years = y1 - y0 + 1
    workers = min(cfg.workers, years)
    if workers <= 1:
        chunks = [_process_chunk(graph, y0, y1, cfg)]
    else:
        size = -(-years // workers)
        bounds = [(y0 + i * size, min(y0 + (i + 1) * size - 1, y1))
                  for i in range(workers) if y0 + i * size <= y1]
        global _WORKER_GRAPH, _WORKER_CFG
        _WORKER_GRAPH, _WORKER_CFG = graph, cfg
        try:
            with ProcessPoolExecutor(max_workers=workers,
                                     mp_context=get_context("fork")) as pool:
                chunks = list(pool.map(_worker, bounds))
        finally:
            _WORKER_GRAPH = _WORKER_CFG = None

    acc = chunks[0].acc
    merged = chunks[0]
    for chunk in chunks[1:]:
        acc.merge(chunk.acc)
        merged.year_records.update(chunk.year_records)
        for pid, points in chunk.series.items():
            merged.series.setdefault(pid, []).extend(points)
        merged.not_converged += chunk.not_converged
    for points in merged.series.values():
        points.sort(key=lambda rec: rec["year"])

    if merged.not_converged:
        log.warning("pagerank hit max_iter without converging in %d of %d years",
                    merged.not_converged, years)

    alltime = acc.finalize(corpus.edition, cfg.method)
    people = {p.id: p for p in corpus.persons}
    cat = category_distribution(alltime, people, cfg.report_n, cfg.culture)
    reports = {
        "categories": {"edition": cat.edition, "n": cat.n, "counts": cat.counts,
                       "ingroup_count": cat.ingroup_count, "short": cat.short},
        "ingroup": {"edition": cat.edition, "n": cat.n,
                    "culture": edition_culture(corpus.edition, cfg.culture),
                    "ingroup_count": cat.ingroup_count,
                    "outgroup_share": outgroup_share(cat) if cat.n else 0.0},
    }

    stats = dict(corpus.stats)
    stats["dropped_noncontemporaneous_links"] = graph.dropped_links
    stats["temporal_edges"] = graph.num_edges
    stats["years_not_converged"] = merged.not_converged

    params = {"damping": cfg.damping, "epsilon": cfg.epsilon,
              "max_iter": cfg.max_iter, "k": cfg.k, "method": cfg.method,
              "report_n": cfg.report_n}
    return RunResult(
        edition=corpus.edition,
        horizon=(y0, y1),
        params=params,
        stats=stats,
        nonempty_year_count=graph.nonempty_year_count(),
        people=list(corpus.persons),
        year_records=merged.year_records,
        alltime=[{"id": e.id, "score": e.pagerank, "indegree": e.indegree}
                 for e in alltime.entries],
        reports=reports,
        series=merged.series,
    )
