"""Command-line behavior: each subcommand end to end on tiny corpora."""

from __future__ import annotations

import filecmp
import json

import pytest

from ontoindex import load_index
from ontoindex.cli import _load_config, main
from ontoindex.corpus import load_profiles


@pytest.fixture(scope="module")
def generated(tmp_path_factory):
    out = tmp_path_factory.mktemp("gen") / "corpus"
    code = main(["gen-corpus", "--out", str(out), "--pages", "40", "--seed", "17"])
    assert code == 0
    return out


def test_gen_corpus_writes_all_files(generated):
    for name in ("corpus.jsonl", "manifest.json", "ontology.json"):
        assert (generated / name).is_file()
    manifest = json.loads((generated / "manifest.json").read_text(encoding="utf-8"))
    assert len(manifest["pages"]) == 40


def test_gen_corpus_deterministic(tmp_path, generated):
    again = tmp_path / "again"
    assert main(["gen-corpus", "--out", str(again), "--pages", "40", "--seed", "17"]) == 0
    for name in ("corpus.jsonl", "manifest.json", "ontology.json"):
        assert filecmp.cmp(generated / name, again / name, shallow=False)


def test_ingest_writes_profiles(tmp_path, generated, capsys):
    out = tmp_path / "profiles.jsonl"
    code = main([
        "ingest",
        "--ontology", str(generated / "ontology.json"),
        "--corpus", str(generated / "corpus.jsonl"),
        "--out", str(out),
    ])
    assert code == 0
    assert "kept 40" in capsys.readouterr().out
    assert len(load_profiles(out)) == 40


def test_build_index_from_corpus(tmp_path, generated, capsys):
    out = tmp_path / "index.json"
    code = main([
        "build-index",
        "--ontology", str(generated / "ontology.json"),
        "--corpus", str(generated / "corpus.jsonl"),
        "--out", str(out),
    ])
    assert code == 0
    assert "indexed 40 pages" in capsys.readouterr().out
    index = load_index(out)
    assert index.page_count == 40


def test_build_index_from_profiles(tmp_path, generated):
    profiles_path = tmp_path / "profiles.jsonl"
    index_path = tmp_path / "index.json"
    assert main([
        "ingest",
        "--ontology", str(generated / "ontology.json"),
        "--corpus", str(generated / "corpus.jsonl"),
        "--out", str(profiles_path),
    ]) == 0
    assert main([
        "build-index",
        "--ontology", str(generated / "ontology.json"),
        "--profiles", str(profiles_path),
        "--out", str(index_path),
    ]) == 0
    assert load_index(index_path).page_count == 40


def test_build_index_requires_one_source(tmp_path, generated, capsys):
    code = main([
        "build-index",
        "--ontology", str(generated / "ontology.json"),
        "--out", str(tmp_path / "x.json"),
    ])
    assert code == 2
    assert "exactly one" in capsys.readouterr().err


@pytest.fixture(scope="module")
def index_file(tmp_path_factory, generated):
    out = tmp_path_factory.mktemp("idx") / "index.json"
    assert main([
        "build-index",
        "--ontology", str(generated / "ontology.json"),
        "--corpus", str(generated / "corpus.jsonl"),
        "--out", str(out),
    ]) == 0
    return out


def test_search_text_output(index_file, capsys):
    code = main([
        "search",
        "--index", str(index_file),
        "--dominating", "mobile",
        "--sub", "price,display,network,processor",
        "--count", "20",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "quota plan: primary=10 sub1=4 sub2=3 sub3=2 sub4=1" in out
    assert "fulfilled 20 of 20" in out


def test_search_json_output(index_file, capsys):
    code = main([
        "search",
        "--index", str(index_file),
        "--dominating", "mobile",
        "--count", "5",
        "--json",
    ])
    assert code == 0
    body = json.loads(capsys.readouterr().out)
    assert body["requested"] == 5
    assert len(body["results"]) == body["fulfilled"]


def test_search_respects_range_flag(index_file, capsys):
    code = main([
        "search",
        "--index", str(index_file),
        "--dominating", "mobile",
        "--range", "0:0.5",
        "--count", "5",
        "--json",
    ])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["fulfilled"] == 0


def test_search_unknown_term_fails(index_file, capsys):
    code = main([
        "search", "--index", str(index_file), "--dominating", "ghost",
    ])
    assert code == 1
    assert "ghost" in capsys.readouterr().err


def test_search_bad_range_format(index_file, capsys):
    code = main([
        "search", "--index", str(index_file), "--dominating", "mobile",
        "--range", "10-20",
    ])
    assert code == 1
    assert "lo:hi" in capsys.readouterr().err


def test_missing_file_reports_error(tmp_path, capsys):
    code = main(["search", "--index", str(tmp_path / "absent.json"), "--dominating", "x"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_bench_small_run(capsys):
    code = main([
        "bench", "--corpus-size", "30", "--counts", "5,10",
        "--seed", "3", "--repetitions", "5",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "corpus_size=30" in out
    assert "speedup" in out


def test_bench_json_output(capsys):
    code = main([
        "bench", "--corpus-size", "25", "--counts", "5",
        "--seed", "3", "--repetitions", "5", "--json",
    ])
    assert code == 0
    body = json.loads(capsys.readouterr().out)
    assert body["rows"][0]["count"] == 5
    assert body["rows"][0]["corpus_size"] == 25


def test_accuracy_strict_run(capsys):
    code = main([
        "accuracy", "--corpus-size", "60", "--counts", "5", "--seed", "3", "--json",
    ])
    assert code == 0
    body = json.loads(capsys.readouterr().out)
    row = body["rows"][0]
    assert row["avg_relevant"] == 5.0
    assert row["avg_non_relevant"] == 0.0


def test_accuracy_over_corpus_dir(generated, capsys):
    code = main([
        "accuracy", "--corpus-dir", str(generated), "--counts", "5", "--json",
    ])
    assert code == 0
    body = json.loads(capsys.readouterr().out)
    assert body["corpus_size"] == 40


def test_serve_requires_sources(capsys):
    code = main(["serve"])
    assert code == 2
    assert "ontology" in capsys.readouterr().err


def test_config_file_resolution(tmp_path, monkeypatch):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"ontology": "o.json", "listen": "0.0.0.0:9000"}))
    monkeypatch.setenv("ONTOINDEX_CONFIG", str(config))
    loaded = _load_config(None)
    assert loaded["listen"] == "0.0.0.0:9000"
    # explicit path wins over the environment
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"listen": "127.0.0.1:1"}))
    assert _load_config(str(other))["listen"] == "127.0.0.1:1"
    monkeypatch.delenv("ONTOINDEX_CONFIG")
    assert _load_config(None) == {}


def test_gen_corpus_rejects_bad_pages(tmp_path, capsys):
    code = main([
        "gen-corpus", "--out", str(tmp_path / "x"), "--pages", "3",
        "--sub-terms", "9",
    ])
    assert code == 1
    assert "sub_terms" in capsys.readouterr().err
