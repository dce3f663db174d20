import builtins
import json
import random

import pytest

from chronograph.bundle import (BundleCorruptionError, BundleError, RunResult,
                                read_bundle, write_bundle, year_filename)
from chronograph.pipeline import RunConfig, run_pipeline
from conftest import random_corpus, make_corpus


def small_result(seed=1, horizon=(0, 30)) -> RunResult:
    corpus = random_corpus(random.Random(seed), max_persons=25, max_links=80,
                           horizon=horizon)
    cfg = RunConfig(year_from=horizon[0], year_to=horizon[1], k=5, report_n=5)
    return run_pipeline(corpus, cfg)


class TestWrite:
    def test_refuses_nonempty_dir(self, tmp_path):
        (tmp_path / "junk.txt").write_text("x")
        with pytest.raises(BundleError, match="nonempty"):
            write_bundle(small_result(), tmp_path)

    def test_rerun_is_byte_identical(self, tmp_path):
        for name in ("a", "b"):
            write_bundle(small_result(), tmp_path / name)
        files_a = sorted(p.relative_to(tmp_path / "a")
                         for p in (tmp_path / "a").rglob("*") if p.is_file())
        files_b = sorted(p.relative_to(tmp_path / "b")
                         for p in (tmp_path / "b").rglob("*") if p.is_file())
        assert files_a == files_b
        for rel in files_a:
            assert (tmp_path / "a" / rel).read_bytes() == \
                   (tmp_path / "b" / rel).read_bytes()

    def test_all_horizon_years_present(self, tmp_path):
        result = small_result(horizon=(-3, 3))
        write_bundle(result, tmp_path / "b")
        for year in range(-3, 4):
            assert (tmp_path / "b" / "years" / year_filename(year)).is_file()

    def test_year_filename_format(self):
        assert year_filename(-99) == "-0099.json"
        assert year_filename(0) == "00000.json"
        assert year_filename(1950) == "01950.json"


class TestRead:
    def test_round_trip(self, tmp_path):
        result = small_result()
        manifest = write_bundle(result, tmp_path / "b")
        bundle = read_bundle(tmp_path / "b")
        assert bundle.manifest == manifest
        assert bundle.horizon == result.horizon
        assert {p.id: p for p in result.people} == bundle.people()
        for year in range(result.horizon[0], result.horizon[1] + 1):
            expected = result.year_records.get(
                year, {"year": year, "entries": [], "edges": []})
            assert bundle.year(year) == expected
        got = bundle.alltime()
        assert [e["id"] for e in got] == [e["id"] for e in result.alltime]
        assert [e["score"] for e in got] == [e["score"] for e in result.alltime]
        assert bundle.report("categories") == result.reports["categories"]
        for pid in result.series:
            assert bundle.series(pid) == result.series[pid]

    def test_tampered_manifest_detected(self, tmp_path):
        write_bundle(small_result(), tmp_path / "b")
        path = tmp_path / "b" / "manifest.json"
        manifest = json.loads(path.read_text())
        manifest["params"]["k"] = 99
        path.write_text(json.dumps(manifest))
        with pytest.raises(BundleCorruptionError, match="hash"):
            read_bundle(tmp_path / "b")

    def test_version_mismatch(self, tmp_path):
        write_bundle(small_result(), tmp_path / "b")
        path = tmp_path / "b" / "manifest.json"
        manifest = json.loads(path.read_text())
        manifest["format"] = "chronograph-bundle-v999"
        path.write_text(json.dumps(manifest))
        with pytest.raises(BundleError, match="format"):
            read_bundle(tmp_path / "b")

    def test_missing_year_file_names_year(self, tmp_path):
        write_bundle(small_result(horizon=(0, 5)), tmp_path / "b")
        (tmp_path / "b" / "years" / year_filename(3)).unlink()
        bundle = read_bundle(tmp_path / "b")
        with pytest.raises(BundleCorruptionError, match="year 3"):
            bundle.year(3)

    def test_year_outside_horizon(self, tmp_path):
        write_bundle(small_result(horizon=(0, 5)), tmp_path / "b")
        with pytest.raises(BundleError, match="outside"):
            read_bundle(tmp_path / "b").year(100)

    def test_missing_series_is_empty(self, tmp_path):
        write_bundle(small_result(), tmp_path / "b")
        assert read_bundle(tmp_path / "b").series(999_999) == []

    def test_lazy_year_access(self, tmp_path, monkeypatch):
        write_bundle(small_result(horizon=(0, 20)), tmp_path / "b")
        bundle = read_bundle(tmp_path / "b")
        import pathlib
        opened = []
        real_open = builtins.open
        real_path_open = pathlib.Path.open

        def spy(file, *args, **kwargs):
            opened.append(str(file))
            return real_open(file, *args, **kwargs)

        def path_spy(self, *args, **kwargs):
            opened.append(str(self))
            return real_path_open(self, *args, **kwargs)

        monkeypatch.setattr(builtins, "open", spy)
        monkeypatch.setattr(pathlib.Path, "open", path_spy)
        bundle.year(7)
        year_files = [f for f in opened if "/years/" in f]
        assert year_files == [str(tmp_path / "b" / "years" / year_filename(7))]
