"""Command line pipeline driver: ingest, build, report, compare, serve.

Data goes to stdout, logs and progress to stderr. Exit codes: 0 ok,
1 internal error, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections import Counter
from pathlib import Path

from . import HORIZON_END, HORIZON_START, __version__
from .bundle import BundleError, RunResult, read_bundle, write_bundle
from .corpus import (Corpus, CorpusError, load_annotations, load_corpus,
                     parse_dump, resolve, write_corpus)
from .pipeline import RunConfig, default_workers, run_pipeline
from .reports import EditionView, compare_editions, normalized_title_key

log = logging.getLogger("chronograph")


class InputError(Exception):
    """User-facing input problem: exit code 2."""


def _add_horizon_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--from", dest="year_from", type=int, default=HORIZON_START,
                   metavar="YEAR", help="first year (astronomical, default %(default)s)")
    p.add_argument("--to", dest="year_to", type=int, default=HORIZON_END,
                   metavar="YEAR", help="last year (astronomical, default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronograph",
        description="Historical people networks: date, link, rank, serve.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a dump or corpus into corpus JSONL")
    p.add_argument("input", help="MediaWiki XML dump or corpus JSONL file")
    p.add_argument("-o", "--out", required=True, help="output corpus JSONL path")
    p.add_argument("--edition", default="en")
    p.add_argument("--annotations", help="sidecar JSONL of title/occupation/culture")
    p.add_argument("--max-page-bytes", type=int, default=4_000_000)
    _add_horizon_flags(p)

    p = sub.add_parser("build", help="run the full pipeline into a bundle")
    p.add_argument("corpus", help="corpus JSONL file")
    p.add_argument("-o", "--out", required=True, help="output bundle directory")
    _add_horizon_flags(p)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--top", type=int, default=50, help="per-year top-k stored")
    p.add_argument("--agg", choices=["sum", "mean", "max"], default="sum")
    p.add_argument("--report-n", type=int, default=50)
    p.add_argument("--culture", help="ingroup culture tag override")
    p.add_argument("--workers", type=int, default=None,
                   help="year-chunk worker processes (default: available cores)")

    p = sub.add_parser("report", help="print a table from a bundle")
    p.add_argument("bundle", help="bundle directory")
    p.add_argument("kind", choices=["top", "categories", "ingroup"])
    p.add_argument("--n", type=int, default=10)

    p = sub.add_parser("compare", help="compare all-time rankings across bundles")
    p.add_argument("bundles", nargs="+", help="two or more bundle directories")
    p.add_argument("--identity", help="JSONL of edition/title/key identity links")
    p.add_argument("--n", type=int, default=50)

    p = sub.add_parser("serve", help="serve bundles over HTTP JSON")
    p.add_argument("--bundle", action="append", required=True, metavar="ED=DIR",
                   help="edition=bundle-dir (repeatable)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8040)
    p.add_argument("--cors", action="append", default=None, metavar="ORIGIN")
    p.add_argument("--cache-size", type=int, default=128)
    return parser


def _looks_like_xml(path: Path) -> bool:
    with open(path, "rb") as fh:
        head = fh.read(256).lstrip()
    return head.startswith(b"<")


def cmd_ingest(args) -> int:
    path = Path(args.input)
    if not path.is_file():
        raise InputError(f"input file not found: {path}")
    annotations = load_annotations(args.annotations) if args.annotations else None
    horizon = (args.year_from, args.year_to)
    if horizon[0] > horizon[1]:
        raise InputError(f"--from {horizon[0]} is after --to {horizon[1]}")

    if _looks_like_xml(path):
        stats = Counter()
        with open(path, "rb") as fh:
            pages = list(parse_dump(fh, max_page_bytes=args.max_page_bytes,
                                    stats=stats))
        corpus = resolve(pages, args.edition, horizon, annotations, stats)
    else:
        corpus = load_corpus(path)
        if annotations:
            corpus = resolve_reannotate(corpus, annotations)
        corpus.edition = args.edition
    write_corpus(corpus, args.out)
    print(f"pages seen: {corpus.stats.get('pages_seen', 'n/a')}", file=sys.stderr)
    print(f"persons: {len(corpus.persons)}  links: {len(corpus.links)}",
          file=sys.stderr)
    for key in ("undated", "redirects", "dangling_links", "self_links",
                "duplicate_links", "out_of_horizon", "oversized"):
        if corpus.stats.get(key):
            print(f"dropped {key}: {corpus.stats[key]}", file=sys.stderr)
    return 0


def resolve_reannotate(corpus: Corpus, annotations) -> Corpus:
    persons = []
    for p in corpus.persons:
        occupation, culture = annotations.get(p.title, (p.occupation, p.culture))
        persons.append(type(p)(p.id, p.title, p.birth_year, p.death_year,
                               occupation, culture))
    return Corpus(corpus.edition, corpus.horizon, persons, corpus.links, corpus.stats)


def cmd_build(args) -> int:
    path = Path(args.corpus)
    if not path.is_file():
        raise InputError(f"corpus file not found: {path}")
    if args.year_from > args.year_to:
        raise InputError(f"--from {args.year_from} is after --to {args.year_to}")
    corpus = load_corpus(path)
    cfg = RunConfig(year_from=args.year_from, year_to=args.year_to,
                    damping=args.damping, epsilon=args.eps,
                    max_iter=args.max_iter, k=args.top, method=args.agg,
                    workers=args.workers or default_workers(),
                    report_n=args.report_n, culture=args.culture)
    try:
        cfg.validate()
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    result = run_pipeline(corpus, cfg)
    manifest = write_bundle(result, args.out)
    print(f"bundle written to {args.out} "
          f"({manifest['nonempty_year_count']} nonempty years)", file=sys.stderr)
    return 0


def _print_table(rows: list[list[str]]) -> None:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def cmd_report(args) -> int:
    bundle = read_bundle(args.bundle)
    if args.kind == "top":
        rows = [["rank", "title", "score", "indegree"]]
        for entry in bundle.alltime()[:args.n]:
            rows.append([str(entry["rank"]), entry["title"],
                         f"{entry['score']:.6g}", str(entry["indegree"])])
        _print_table(rows)
    elif args.kind == "categories":
        from .reports import category_distribution
        from .centrality import AllTimeRanking, RankEntry
        ranking = AllTimeRanking(bundle.edition, "stored",
                                 [RankEntry(e["id"], e["score"], e["indegree"])
                                  for e in bundle.alltime()])
        rep = category_distribution(ranking, bundle.people(), args.n)
        rows = [["politician", "religious", "artist_scientist", "other"],
                [str(rep.counts["politician"]), str(rep.counts["religious"]),
                 str(rep.counts["artist_scientist"]), str(rep.counts["other"])]]
        _print_table(rows)
        print(f"ingroup {rep.ingroup_count}")
    else:  # ingroup
        from .reports import category_distribution, outgroup_share
        from .centrality import AllTimeRanking, RankEntry
        ranking = AllTimeRanking(bundle.edition, "stored",
                                 [RankEntry(e["id"], e["score"], e["indegree"])
                                  for e in bundle.alltime()])
        rep = category_distribution(ranking, bundle.people(), args.n)
        print(f"ingroup {rep.ingroup_count}/{rep.n}  "
              f"outgroup_share {outgroup_share(rep):.4f}")
    return 0


def _load_identity(path) -> dict[tuple[str, str], str]:
    keys = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                keys[(rec["edition"], rec["title"])] = rec["key"]
            except (json.JSONDecodeError, KeyError) as exc:
                raise InputError(f"identity file line {lineno}: {exc}") from exc
    return keys


def cmd_compare(args) -> int:
    if len(args.bundles) < 2:
        raise InputError("need at least 2 bundle directories to compare")
    identity = _load_identity(args.identity) if args.identity else {}
    views = []
    for bdir in args.bundles:
        bundle = read_bundle(bdir)
        people = bundle.people()
        from .centrality import AllTimeRanking, RankEntry
        ranking = AllTimeRanking(bundle.edition, "stored",
                                 [RankEntry(e["id"], e["score"], e["indegree"])
                                  for e in bundle.alltime()])
        keys = {pid: identity.get((bundle.edition, p.title),
                                  normalized_title_key(p.title))
                for pid, p in people.items()}
        cultures = {pid: p.culture for pid, p in people.items()}
        views.append(EditionView(bundle.edition, ranking, keys, cultures))
    report = compare_editions(views, args.n)
    rows = [["editions", ",".join(report.editions)],
            ["top_n", str(report.n)],
            ["overlap", str(report.overlap)]]
    for edition, share in sorted(report.outgroup_share.items()):
        rows.append([f"outgroup_share[{edition}]", f"{share:.4f}"])
    for pair, rho in sorted(report.correlations.items()):
        rows.append([f"spearman[{pair}]", "n/a" if rho is None else f"{rho:.4f}"])
    _print_table(rows)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import ServiceConfig, create_app

    bundles = {}
    for item in args.bundle:
        if "=" not in item:
            raise InputError(f"--bundle expects EDITION=DIR, got {item!r}")
        edition, bdir = item.split("=", 1)
        bundles[edition] = bdir
    config = ServiceConfig(host=args.host, port=args.port, bundles=bundles,
                           cors_origins=args.cors or [],
                           cache_size=args.cache_size)
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


_COMMANDS = {"ingest": cmd_ingest, "build": cmd_build, "report": cmd_report,
             "compare": cmd_compare, "serve": cmd_serve}


def main(argv=None) -> int:
    logging.basicConfig(
        stream=sys.stderr,
        level=os.environ.get("CHRONOGRAPH_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (InputError, CorpusError, BundleError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error: %s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
