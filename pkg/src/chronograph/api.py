"""Read-only HTTP JSON API over one or more bundles.

Everything is precomputed: handlers only read bundle files (with a small
LRU over per-year records for slider scrubbing) and enrich ids with titles.
Errors are JSON bodies of the form {"error": "..."}.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .bundle import Bundle, BundleError, read_bundle
from .centrality import AllTimeRanking, RankEntry
from .reports import (EditionView, category_distribution, compare_editions,
                      normalized_title_key, outgroup_share)


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8040
    bundles: dict[str, str] = field(default_factory=dict)  # edition -> dir
    cors_origins: list[str] = field(default_factory=list)
    cache_size: int = 128

    def validate(self) -> None:
        if not self.bundles:
            raise ValueError("at least one bundle is required")
        if not 0 < self.port < 65536:
            raise ValueError(f"invalid port {self.port}")
        if self.cache_size < 1:
            raise ValueError(f"cache_size must be >= 1, got {self.cache_size}")


class _YearCache:
    """Tiny thread-safe LRU over (edition, year) -> year record."""

    def __init__(self, size: int):
        self.size = size
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key, load):
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                return self._data[key]
        value = load()
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.size:
                self._data.popitem(last=False)
        return value


def _alltime_ranking(bundle: Bundle) -> AllTimeRanking:
    return AllTimeRanking(bundle.edition, "stored",
                          [RankEntry(e["id"], e["score"], e["indegree"])
                           for e in bundle.alltime()])


def create_app(config: ServiceConfig) -> FastAPI:
    config.validate()
    bundles = {edition: read_bundle(path)
               for edition, path in config.bundles.items()}
    cache = _YearCache(config.cache_size)
    app = FastAPI(title="chronograph", docs_url=None, redoc_url=None)

    if config.cors_origins:
        app.add_middleware(CORSMiddleware, allow_origins=config.cors_origins,
                           allow_methods=["GET"], allow_headers=["*"])

    @app.exception_handler(HTTPException)
    async def http_error(request: Request, exc: HTTPException):
        return JSONResponse({"error": str(exc.detail)}, status_code=exc.status_code)

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse({"error": "malformed request"}, status_code=400)

    def get_bundle(edition: str) -> Bundle:
        bundle = bundles.get(edition)
        if bundle is None:
            raise HTTPException(404, f"unknown edition {edition!r}")
        return bundle

    @app.get("/editions")
    def editions():
        return {"editions": [
            {"edition": ed, "horizon": list(b.horizon),
             "k": b.manifest["params"]["k"],
             "nonempty_year_count": b.manifest["nonempty_year_count"]}
            for ed, b in sorted(bundles.items())]}

    @app.get("/editions/{edition}/years/{year}/network")
    def network(edition: str, year: int, top: int = Query(default=50, ge=1)):
        bundle = get_bundle(edition)
        y0, y1 = bundle.horizon
        if not y0 <= year <= y1:
            raise HTTPException(404, f"year {year} outside horizon [{y0}, {y1}]")
        record = cache.get((edition, year), lambda: bundle.year(year))
        titles = bundle.people()
        entries = record["entries"][:top]
        shown = {e["id"] for e in entries}
        return {
            "year": record["year"],
            "entries": [{**e, "title": titles[e["id"]].title} for e in entries],
            "edges": [e for e in record["edges"]
                      if e[0] in shown and e[1] in shown],
        }

    @app.get("/editions/{edition}/rankings/alltime")
    def alltime(edition: str, top: int = Query(default=10, ge=1)):
        bundle = get_bundle(edition)
        return {"edition": edition, "entries": bundle.alltime()[:top]}

    @app.get("/editions/{edition}/people/{pid}")
    def person(edition: str, pid: int):
        bundle = get_bundle(edition)
        p = bundle.people().get(pid)
        if p is None:
            raise HTTPException(404, f"unknown person {pid}")
        return {"id": p.id, "title": p.title, "birth": p.birth_year,
                "death": p.death_year, "occupation": p.occupation,
                "culture": p.culture, "series": bundle.series(pid)}

    @app.get("/editions/{edition}/reports/{kind}")
    def report(edition: str, kind: str, top: int = Query(default=50, ge=1)):
        bundle = get_bundle(edition)
        if kind not in ("categories", "ingroup"):
            raise HTTPException(404, f"unknown report {kind!r}")
        rep = category_distribution(_alltime_ranking(bundle), bundle.people(), top)
        if kind == "categories":
            return {"edition": edition, "n": rep.n, "counts": rep.counts,
                    "ingroup_count": rep.ingroup_count, "short": rep.short}
        return {"edition": edition, "n": rep.n,
                "ingroup_count": rep.ingroup_count,
                "outgroup_share": outgroup_share(rep) if rep.n else 0.0}

    @app.get("/compare")
    def compare(editions: str, top: int = Query(default=50, ge=1)):
        names = [e for e in editions.split(",") if e]
        if len(names) < 2:
            raise HTTPException(400, "need at least 2 editions to compare")
        views = []
        for name in names:
            bundle = get_bundle(name)
            people = bundle.people()
            views.append(EditionView(
                name, _alltime_ranking(bundle),
                {pid: normalized_title_key(p.title) for pid, p in people.items()},
                {pid: p.culture for pid, p in people.items()}))
        rep = compare_editions(views, top)
        return {"editions": rep.editions, "n": rep.n, "overlap": rep.overlap,
                "outgroup_share": rep.outgroup_share,
                "correlations": rep.correlations}

    return app
