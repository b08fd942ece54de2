"""Harness: operator parsing, CSV schema, determinism, verification suites."""

import json
import math
from pathlib import Path

import pytest

from bohrlab.corpus import default_corpus, load_corpus, moebius_corpus, save_corpus
from bohrlab.harness import (ARITHMETIC_SCHEMA, RESULTS_COLUMNS, RESULTS_SCHEMA,
                             ExperimentConfig, best_formula_lower, bounds_table,
                             fmt_exp, formula_lower_candidates, parse_exp,
                             parse_operator, run_arithmetic, run_experiment,
                             verify_suite, write_csv)
from bohrlab.operators import scalar_identity
from bohrlab.spaces import INF, SpaceSpec


class TestFormatting:
    def test_exp_round_trip(self):
        for p in (1.0, 2.0, 4.0, INF, 1.5):
            assert parse_exp(fmt_exp(p)) == p

    def test_write_csv_schema_line(self, tmp_path):
        path = tmp_path / "x.csv"
        write_csv(path, RESULTS_SCHEMA, ("a", "b"), [(1.5, "x")])
        lines = path.read_text().splitlines()
        assert lines[0] == f"# schema={RESULTS_SCHEMA}"
        assert lines[1] == "a,b"
        assert lines[2] == "1.5,x"


class TestOperatorParsing:
    def test_scalar(self):
        op = parse_operator("scalar")
        assert op.kind == "identity" and op.source.n == 1

    def test_identity(self):
        op = parse_operator("identity:1:2")
        assert op.kind == "identity" and op.source == SpaceSpec(1.0, 2)

    def test_inclusion(self):
        op = parse_operator("inclusion:1:2:2")
        assert op.kind == "inclusion"
        assert op.source == SpaceSpec(1.0, 2) and op.target == SpaceSpec(2.0, 2)

    def test_diagonal(self):
        op = parse_operator("diagonal:inf:inf:2,3")
        assert op.kind == "diagonal"

    def test_json_file(self, tmp_path):
        from bohrlab.operators import op_to_dict
        path = tmp_path / "op.json"
        path.write_text(json.dumps(op_to_dict(parse_operator("inclusion:1:2:3"))))
        op = parse_operator(str(path))
        assert op.kind == "inclusion" and op.source.n == 3

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            parse_operator("rotation:1:2")


class TestFormulaLowers:
    def test_disk_uses_closed_form(self):
        name, val = best_formula_lower(1.0, 1, 1.0, scalar_identity())
        assert name == "disk-closed-form"
        assert val == pytest.approx(1 / 3)

    def test_identity_candidates_present(self):
        cands = dict(formula_lower_candidates(2.0, 4, 2.0, scalar_identity()))
        assert cands["corollary-identity"] == pytest.approx(0.5 / 2)
        assert any(k.startswith("cotype-q2") for k in cands)

    def test_inclusion_uses_prop22(self):
        op = parse_operator("inclusion:1:2:2")
        cands = formula_lower_candidates(2.0, 4, 2.0, op)
        assert any(name.startswith("prop22") for name, _ in cands)


class TestRunExperiment:
    def test_disk_row_upper_near_one_third(self, tmp_path):
        config = ExperimentConfig(ps=(INF,), ns=(1,), lams=(1.0,),
                                  corpus="moebius", a_values=(0.9, 0.99),
                                  out=str(tmp_path / "disk.csv"))
        result = run_experiment(config)
        assert result.passed
        row = result.rows[0]
        assert row[0] == "K"
        assert row[6] == pytest.approx(1 / 3)       # lower: closed form
        assert 1 / 3 <= row[8] <= 1 / 3 + 5e-3       # upper: corpus estimate
        text = (tmp_path / "disk.csv").read_text()
        assert text.startswith(f"# schema={RESULTS_SCHEMA}")

    def test_worker_count_does_not_change_bytes(self, tmp_path):
        base = dict(ps=(2.0, INF), ns=(2, 3), lams=(1.5,),
                    operators=("scalar",), arithmetic=True, seed=7)
        out1, out2 = tmp_path / "w1.csv", tmp_path / "w3.csv"
        run_experiment(ExperimentConfig(**base, workers=1, out=str(out1)))
        run_experiment(ExperimentConfig(**base, workers=3, out=str(out2)))
        assert out1.read_bytes() == out2.read_bytes()

    def test_rerun_is_byte_identical(self, tmp_path):
        config = ExperimentConfig(ps=(2.0,), ns=(2,), lams=(1.5,), seed=11,
                                  out=str(tmp_path / "a.csv"))
        run_experiment(config)
        first = (tmp_path / "a.csv").read_bytes()
        run_experiment(config)
        assert (tmp_path / "a.csv").read_bytes() == first

    def test_km_rows(self):
        config = ExperimentConfig(ps=(INF,), ns=(2,), lams=(1.0,), ms=(2,))
        result = run_experiment(config)
        km_rows = [r for r in result.rows if r[0] == "K_m"]
        assert len(km_rows) == 1 and km_rows[0][3] == 2
        assert 0 < km_rows[0][8] <= 1.0

    def test_envelope_rows(self):
        config = ExperimentConfig(ps=(INF,), ns=(4,), lams=(1.5,), envelopes=True)
        result = run_experiment(config)
        names = {r[0] for r in result.rows}
        assert "env:main_lower" in names and "env:main_upper" in names


class TestRunArithmetic:
    def test_schema_and_disk_value(self, tmp_path):
        config = ExperimentConfig(ps=(INF,), ns=(1,), lams=(1.0,),
                                  corpus="moebius", a_values=(0.9, 0.99),
                                  out=str(tmp_path / "arith.csv"))
        result = run_arithmetic(config)
        text = (tmp_path / "arith.csv").read_text()
        assert text.startswith(f"# schema={ARITHMETIC_SCHEMA}")
        mean = result.rows[0][4]
        assert mean == pytest.approx(1 / (1 + 2 * 0.99), abs=1e-6)


class TestCorpusFiles:
    def test_save_load_round_trip(self, tmp_path):
        corpus = moebius_corpus([0.5, 0.9], 30, 2, 2.0)
        path = tmp_path / "corpus.json"
        save_corpus(corpus, path)
        back = load_corpus(path)
        assert [f.id for f in back] == [f.id for f in corpus]
        assert back[0].poly == corpus[0].poly
        assert back[0].norm_lower == 1.0


class TestVerifySuites:
    def test_combinatorics_passes(self):
        report = verify_suite("combinatorics")
        assert report["passed"] and report["checks"] > 500

    def test_lemma31_small(self):
        report = verify_suite("lemma31", instances=40)
        assert report["passed"], report["failures"][:3]

    def test_bombal_passes(self):
        report = verify_suite("bombal")
        assert report["passed"], report["failures"][:3]

    def test_sandwich_passes(self):
        report = verify_suite("sandwich")
        assert report["passed"], report["failures"][:3]

    def test_arithmetic_lemma_passes(self):
        report = verify_suite("arithmetic_lemma")
        assert report["passed"], report["failures"][:3]

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            verify_suite("nonsense")


class TestBoundsTable:
    def test_rows_cover_theorems(self):
        rows = bounds_table((2.0, INF), (4,), (1.5,), opnorm=0.8)
        theorems = {r[0] for r in rows}
        assert {"corollary-identity", "cotype", "main-envelope", "prop22"} <= theorems
        for r in rows:
            assert r[9] >= 0  # value column
