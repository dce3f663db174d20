"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import contextlib
import json
import random
import resource
import time
from pathlib import Path

import numpy as np
import pytest

from chronograph.centrality import aggregate_alltime, indegree, pagerank
from chronograph.cli import main
from chronograph.corpus import Corpus, Person, write_corpus
from chronograph.pipeline import RunConfig, default_workers, run_pipeline
from chronograph.synth import make_corpus as synth_corpus
from chronograph.temporal import build
from conftest import make_corpus
from oracles import dense_pagerank

FIXTURES = Path(__file__).parent / "fixtures"


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"FAIL: {name}")
        raise
    print(f"PASS: {name}")


def random_full_horizon_corpus(rng: random.Random) -> Corpus:
    n = rng.randint(1, 200)
    persons = []
    for i in range(n):
        birth = rng.randint(-3000, 1950)
        death = min(birth + rng.randint(0, 150), 1950)
        persons.append(Person(i, f"P{i:04d}", birth, death))
    links = set()
    for _ in range(rng.randint(0, 1500)):
        s, d = rng.randrange(n), rng.randrange(n)
        if s != d:
            links.add((s, d))
    return Corpus("syn", (-3000, 1950), persons, sorted(links))


def test_contemporaneity_oracle():
    """slice() and sweep agree with a per-year brute-force re-filter on 100
    random corpora, for every horizon year, in under 60 s."""
    with criterion("contemporaneity oracle (100 corpora, every year, <60s)"):
        start = time.monotonic()
        rng = random.Random(20260823)
        for trial in range(100):
            corpus = random_full_horizon_corpus(rng)
            graph = build(corpus)
            birth = np.array([p.birth_year for p in corpus.persons])
            death = np.array([p.death_year for p in corpus.persons])
            if corpus.links:
                lsrc = np.array([l[0] for l in corpus.links])
                ldst = np.array([l[1] for l in corpus.links])
            else:
                lsrc = ldst = np.empty(0, dtype=np.int64)
            for sl in graph.sweep((-3000, 1950)):
                year = sl.year
                # independent oracle: re-filter all persons and links by hand
                alive = (birth <= year) & (year <= death)
                expected_nodes = np.flatnonzero(alive)
                keep = alive[lsrc] & alive[ldst]
                expected = {(s, d) for s, d in
                            zip(lsrc[keep].tolist(), ldst[keep].tolist())}
                assert np.array_equal(sl.node_ids, expected_nodes)
                assert sl.edge_set == expected
                direct = graph.slice(year)
                assert np.array_equal(direct.node_ids, expected_nodes)
                assert direct.edge_set == expected
        elapsed = time.monotonic() - start
        assert elapsed < 60.0, f"took {elapsed:.1f}s"


def test_pagerank_oracle():
    """200 random digraphs (<=50 nodes, dangling nodes, disconnected parts):
    L1 distance to the dense oracle <= 1e-8; scores sum to 1 +- 1e-9."""
    with criterion("pagerank dense oracle (200 graphs, L1 <= 1e-8)"):
        from test_centrality import random_digraph, slice_of
        rng = random.Random(99)
        for trial in range(200):
            nodes, edges = random_digraph(rng, max_nodes=50)
            scores, _ = pagerank(slice_of(edges, nodes))
            expected = dense_pagerank(nodes, edges)
            l1 = sum(abs(scores[i] - expected[i]) for i in nodes)
            assert l1 <= 1e-8
            assert abs(sum(scores.values()) - 1.0) <= 1e-9


def test_node_entry_semantics():
    """A person born in year 1 is absent from the year-0 network and present
    in year 1."""
    with criterion("node-entry semantics (born year 1: absent at 0, present at 1)"):
        corpus = make_corpus([("Elder", -40, 30), ("Newborn", 1, 60)],
                             [("Elder", "Newborn"), ("Newborn", "Elder")])
        graph = build(corpus)
        newborn = next(p.id for p in corpus.persons if p.title == "Newborn")
        assert newborn not in graph.slice(0).nodes
        assert newborn in graph.slice(1).nodes


def _column_fixture(edition, occs, ingroup, home):
    """60 persons with disjoint lifespans; persons 0..49 (the engineered
    top-50 by strictly decreasing alone-years) carry the given tags."""
    tags = list(occs) + ["other"] * (50 - len(occs))
    spec = []
    for i in range(60):
        birth = -3000 + i * 80
        death = birth + (60 - i)  # strictly decreasing span -> strict order
        occ = tags[i] if i < 50 else "other"
        culture = home if i < ingroup else "elsewhere"
        spec.append((f"{edition.upper()}{i:03d}", birth, death, occ, culture))
    return make_corpus(spec, [], edition=edition)


def _run_column(edition, politicians, religious, artists, ingroup, home):
    occs = (["politician"] * politicians + ["religious"] * religious
            + ["artist_scientist"] * artists)
    corpus = _column_fixture(edition, occs, ingroup, home)
    cfg = RunConfig(k=50, report_n=50, workers=1)
    return run_pipeline(corpus, cfg).reports


def test_table_fixture_english_and_chinese():
    """Engineered corpora whose all-time top-50 carries the published
    English / Chinese per-column tags reproduce the published counts."""
    with criterion("top-50 category counts (en 26/11/13 ingroup 10, "
                   "zh 46/1/3 ingroup 48)"):
        reports = _run_column("en", 26, 11, 13, ingroup=10, home="anglo")
        assert reports["categories"]["counts"] == {
            "politician": 26, "religious": 11, "artist_scientist": 13, "other": 0}
        assert reports["categories"]["ingroup_count"] == 10

        reports = _run_column("zh", 46, 1, 3, ingroup=48, home="sinic")
        assert reports["categories"]["counts"] == {
            "politician": 46, "religious": 1, "artist_scientist": 3, "other": 0}
        assert reports["categories"]["ingroup_count"] == 48


def test_outgroup_shares():
    """Fixture outgroup shares: 0.80 (en), 2/50 (zh), 0.38 (ja). Exact."""
    with criterion("outgroup shares 0.80 / 0.04 / 0.38"):
        en = _run_column("en", 26, 11, 13, ingroup=10, home="anglo")
        zh = _run_column("zh", 46, 1, 3, ingroup=48, home="sinic")
        ja = _run_column("ja", 47, 0, 3, ingroup=31, home="japonic")
        assert en["ingroup"]["outgroup_share"] == 0.80
        assert zh["ingroup"]["outgroup_share"] == 2 / 50
        assert ja["ingroup"]["outgroup_share"] == 0.38


def test_horizon_count():
    """One person spanning the whole horizon: 4,951 nonempty years."""
    with criterion("full-horizon person gives nonempty_year_count == 4951"):
        graph = build(make_corpus([("Eternal", -3000, 1950)], []))
        assert graph.nonempty_year_count() == 4951


def test_build_determinism(tmp_path):
    """Two identical cmd_build runs produce byte-identical bundles."""
    with criterion("cmd_build determinism (byte-identical bundles)"):
        corpus = synth_corpus(200, 800, seed=5, horizon=(-300, 300))
        corpus_path = tmp_path / "corpus.jsonl"
        write_corpus(corpus, corpus_path)
        for name in ("one", "two"):
            code = main(["build", str(corpus_path), "-o", str(tmp_path / name),
                         "--from", "-300", "--to", "300"])
            assert code == 0
        a, b = tmp_path / "one", tmp_path / "two"
        files_a = sorted(p.relative_to(a) for p in a.rglob("*") if p.is_file())
        files_b = sorted(p.relative_to(b) for p in b.rglob("*") if p.is_file())
        assert files_a == files_b and files_a
        for rel in files_a:
            assert (a / rel).read_bytes() == (b / rel).read_bytes(), rel


def test_ingestion_fixture(tmp_path):
    """The 20-page hand-built dump yields exactly the expected corpus JSONL."""
    with criterion("20-page dump ingestion matches expected JSONL exactly"):
        out = tmp_path / "corpus.jsonl"
        code = main(["ingest", str(FIXTURES / "dump20.xml"), "-o", str(out)])
        assert code == 0
        assert out.read_bytes() == (FIXTURES / "expected_corpus.jsonl").read_bytes()


def test_performance_target():
    """10,000 persons / 100,000 links, full 4,951-year sweep with per-year
    top-50 PageRank: < 60 s and < 1 GB peak memory."""
    with criterion("perf: 10k persons / 100k links full sweep <60s, <1GB"):
        corpus = synth_corpus(10_000, 100_000, seed=42)
        cfg = RunConfig(k=50, workers=default_workers())
        start = time.monotonic()
        result = run_pipeline(corpus, cfg)
        elapsed = time.monotonic() - start
        assert len(result.year_records) == 4951
        peak_self = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        peak_kids = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
        peak_gb = max(peak_self, peak_kids) / (1024 ** 2)  # ru_maxrss is KiB
        assert elapsed < 60.0, f"took {elapsed:.1f}s"
        assert peak_gb < 1.0, f"peak {peak_gb:.2f} GiB"
