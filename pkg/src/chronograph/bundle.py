"""Deterministic on-disk bundle of one pipeline run.

Layout under the bundle directory:
    manifest.json        parameters, corpus stats, integrity hash
    people.jsonl         id -> title/lifespan/occupation/culture
    alltime.csv          rank,id,title,score,indegree
    reports/*.json       category/ingroup reports
    years/%+05d.json     per-year top-k entries + induced subgraph edges
    series/<id>.json     per-year rank series for anyone ever in a top-k

Writing is byte-deterministic: sorted keys, compact separators, shortest
round-trip float repr. Identical runs produce identical bytes.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from .corpus import Person

BUNDLE_FORMAT = "chronograph-bundle-v1"


class BundleError(Exception):
    pass


class BundleCorruptionError(BundleError):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def year_filename(year: int) -> str:
    # zero-padded width 5, sign included: -0099.json, 00099.json
    return f"{year:05d}.json"


def params_hash(manifest: Mapping) -> str:
    payload = {k: v for k, v in manifest.items() if k != "params_hash"}
    return hashlib.sha256(_dumps(payload).encode("utf-8")).hexdigest()


@dataclass
class RunResult:
    """Everything a pipeline run produces, ready to persist."""
    edition: str
    horizon: tuple[int, int]
    params: dict                          # damping, epsilon, max_iter, k, method
    stats: dict
    nonempty_year_count: int
    people: list[Person]
    year_records: dict[int, dict]         # year -> {"year","entries","edges"}
    alltime: list[dict]                   # {"id","score","indegree"}, rank order
    reports: dict[str, dict] = field(default_factory=dict)
    series: dict[int, list[dict]] = field(default_factory=dict)


def write_bundle(result: RunResult, out_dir) -> dict:
    """Persist a run; refuses a nonempty target directory. Returns the manifest."""
    out = Path(out_dir)
    if out.exists() and any(out.iterdir()):
        raise BundleError(f"refusing to write into nonempty directory {out}")
    (out / "years").mkdir(parents=True, exist_ok=True)
    (out / "reports").mkdir(exist_ok=True)
    (out / "series").mkdir(exist_ok=True)

    manifest = {
        "format": BUNDLE_FORMAT,
        "edition": result.edition,
        "horizon": list(result.horizon),
        "params": result.params,
        "stats": result.stats,
        "nonempty_year_count": result.nonempty_year_count,
    }
    manifest["params_hash"] = params_hash(manifest)
    (out / "manifest.json").write_text(_dumps(manifest) + "\n", encoding="utf-8")

    with open(out / "people.jsonl", "w", encoding="utf-8") as fh:
        for p in sorted(result.people, key=lambda p: p.id):
            fh.write(_dumps({"id": p.id, "title": p.title,
                             "birth": p.birth_year, "death": p.death_year,
                             "occupation": p.occupation, "culture": p.culture}) + "\n")

    titles = {p.id: p.title for p in result.people}
    with open(out / "alltime.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rank", "id", "title", "score", "indegree"])
        for rank, entry in enumerate(result.alltime, start=1):
            writer.writerow([rank, entry["id"], titles[entry["id"]],
                             repr(entry["score"]), entry["indegree"]])

    y0, y1 = result.horizon
    for year in range(y0, y1 + 1):
        record = result.year_records.get(year, {"year": year, "entries": [], "edges": []})
        (out / "years" / year_filename(year)).write_text(
            _dumps(record) + "\n", encoding="utf-8")

    for name, report in sorted(result.reports.items()):
        (out / "reports" / f"{name}.json").write_text(
            _dumps(report) + "\n", encoding="utf-8")

    for pid in sorted(result.series):
        (out / "series" / f"{pid}.json").write_text(
            _dumps({"id": pid, "series": result.series[pid]}) + "\n", encoding="utf-8")

    return manifest


class Bundle:
    """Read side: manifest validated eagerly, per-year records on demand
    (one file open per year)."""

    def __init__(self, bundle_dir):
        self.dir = Path(bundle_dir)
        manifest_path = self.dir / "manifest.json"
        if not manifest_path.is_file():
            raise BundleError(f"no manifest.json in {self.dir}")
        self.manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        if self.manifest.get("format") != BUNDLE_FORMAT:
            raise BundleError(
                f"unsupported bundle format {self.manifest.get('format')!r}")
        if self.manifest.get("params_hash") != params_hash(self.manifest):
            raise BundleCorruptionError("manifest hash mismatch (tampered or corrupt)")
        self.edition = self.manifest["edition"]
        self.horizon = tuple(self.manifest["horizon"])
        self._people: Optional[dict[int, Person]] = None
        self._alltime: Optional[list[dict]] = None

    def people(self) -> dict[int, Person]:
        if self._people is None:
            people = {}
            with open(self.dir / "people.jsonl", encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    rec = json.loads(line)
                    people[rec["id"]] = Person(rec["id"], rec["title"], rec["birth"],
                                               rec["death"], rec["occupation"],
                                               rec["culture"])
            self._people = people
        return self._people

    def year(self, year: int) -> dict:
        y0, y1 = self.horizon
        if not y0 <= year <= y1:
            raise BundleError(f"year {year} outside horizon [{y0}, {y1}]")
        path = self.dir / "years" / year_filename(year)
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise BundleCorruptionError(f"missing year file for year {year}") from None

    def alltime(self) -> list[dict]:
        if self._alltime is None:
            with open(self.dir / "alltime.csv", encoding="utf-8", newline="") as fh:
                reader = csv.DictReader(fh)
                self._alltime = [{"rank": int(r["rank"]), "id": int(r["id"]),
                                  "title": r["title"], "score": float(r["score"]),
                                  "indegree": int(r["indegree"])} for r in reader]
        return self._alltime

    def report(self, name: str) -> dict:
        path = self.dir / "reports" / f"{name}.json"
        if not path.is_file():
            raise BundleError(f"no report {name!r} in bundle")
        return json.loads(path.read_text(encoding="utf-8"))

    def report_names(self) -> list[str]:
        return sorted(p.stem for p in (self.dir / "reports").glob("*.json"))

    def series(self, pid: int) -> list[dict]:
        path = self.dir / "series" / f"{pid}.json"
        if not path.is_file():
            return []
        return json.loads(path.read_text(encoding="utf-8"))["series"]

    def series_ids(self) -> list[int]:
        return sorted(int(p.stem) for p in (self.dir / "series").glob("*.json"))


def read_bundle(bundle_dir) -> Bundle:
    return Bundle(bundle_dir)
