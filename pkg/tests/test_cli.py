"""CLI subcommands: bounds, estimate-k, estimate-km, arithmetic, verify, corpus gen."""

import json

import pytest

from bohrlab.cli import main
from bohrlab.corpus import load_corpus


def test_bounds_prints_table(capsys):
    rc = main(["bounds", "--p", "2,inf", "--n", "4", "--lambda", "1.5"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "corollary-identity" in out


def test_bounds_writes_csv(tmp_path, capsys):
    out = tmp_path / "bounds.csv"
    rc = main(["bounds", "--p", "2", "--n", "4", "--lambda", "1.5",
               "--out", str(out)])
    assert rc == 0
    assert out.read_text().startswith("# schema=bohrlab.bounds/1")


def test_estimate_k_disk(tmp_path, capsys):
    out = tmp_path / "disk.csv"
    rc = main(["estimate-k", "--p", "inf", "--n", "1", "--lambda", "1",
               "--corpus", "moebius", "--a-values", "0.9,0.99",
               "--tol", "1e-9", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# schema=bohrlab.results/1"
    fields = lines[2].split(",")
    assert fields[0] == "K"
    assert 1 / 3 <= float(fields[8]) <= 1 / 3 + 5e-3


def test_estimate_km(capsys):
    rc = main(["estimate-km", "--p", "inf", "--n", "2", "--lambda", "1",
               "--m", "2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "K_m" in out


def test_arithmetic_subcommand(tmp_path):
    out = tmp_path / "a.csv"
    rc = main(["arithmetic", "--p", "inf", "--n", "1", "--lambda", "1",
               "--corpus", "moebius", "--a-values", "0.9", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# schema=bohrlab.arithmetic/1"
    mean = float(lines[2].split(",")[4])
    assert mean == pytest.approx(1 / 2.8, abs=1e-6)


def test_verify_combinatorics(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    rc = main(["verify", "--suite", "combinatorics", "--out", str(report_path)])
    assert rc == 0
    assert "PASS combinatorics" in capsys.readouterr().out
    report = json.loads(report_path.read_text())
    assert report[0]["passed"]


def test_verify_lemma31_with_instances(capsys):
    rc = main(["verify", "--suite", "lemma31", "--instances", "20"])
    assert rc == 0


def test_corpus_gen(tmp_path, capsys):
    out = tmp_path / "corpus.json"
    rc = main(["corpus", "gen", "--kind", "moebius", "--n", "2", "--p", "2",
               "--a-values", "0.5,0.9", "--out", str(out)])
    assert rc == 0
    corpus = load_corpus(out)
    assert len(corpus) == 2
    assert corpus[0].poly.n == 2


def test_corpus_gen_homogeneous(tmp_path):
    out = tmp_path / "hom.json"
    rc = main(["corpus", "gen", "--kind", "homogeneous", "--n", "2", "--m", "3",
               "--p", "inf", "--size", "2", "--out", str(out)])
    assert rc == 0
    corpus = load_corpus(out)
    degrees = {f.poly.homogeneous_degree for f in corpus}
    assert degrees == {3}
