import json

import numpy as np
import pytest

from ncprism import cli
from ncprism.serialize import matrix_to_json


def run_cli(capsys, monkeypatch, args, stdin_obj=None):
    text = json.dumps(stdin_obj) if stdin_obj is not None else ""

    class FakeStdin:
        def isatty(self):
            return not bool(text)

        def read(self):
            return text

    monkeypatch.setattr(cli.sys, "stdin", FakeStdin())
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def scalar(value):
    return matrix_to_json(np.array([[value]], dtype=complex))


class TestGeometry:
    def test_table_values(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, monkeypatch, ["geometry", "--k", "3"])
        assert code == 0
        assert "0.500000000000000" in out
        assert "1.060660171779821" in out

    def test_json_mode(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, monkeypatch, ["geometry", "--k", "4", "--json"])
        payload = json.loads(out)
        assert code == 0
        assert payload["result"]["incircle_radius"] == pytest.approx(np.sqrt(2) / 2)


class TestRepAndCommutant:
    def test_square_then_commutant_dimension_one(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, monkeypatch, ["rep", "square", "--lambda", "0"])
        assert code == 0
        tuple_json = json.loads(out)
        code, out, _ = run_cli(capsys, monkeypatch, ["commutant"], stdin_obj=tuple_json)
        assert code == 0
        assert json.loads(out)["dimension"] == 1

    def test_vertex_rep_artifact(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys, monkeypatch, ["rep", "vertex", "--k", "3", "--j", "1", "--sign", "-"]
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["k"] == 3
        assert "state_vector" in obj

    def test_steinberg_nine_is_error(self, capsys, monkeypatch):
        code, _, err = run_cli(capsys, monkeypatch, ["rep", "steinberg", "--q", "9"])
        assert code == 2
        assert "9" in err


class TestCheck:
    def test_prism_nonmember_exit_one(self, capsys, monkeypatch):
        payload = {"a": scalar(0.0), "b": scalar(2.0)}
        code, out, _ = run_cli(
            capsys, monkeypatch, ["check", "prism", "--k", "3"], stdin_obj=payload
        )
        assert code == 1
        obj = json.loads(out)
        assert obj["member"] is False
        assert "worst_facet" in obj

    def test_cube_member_exit_zero(self, capsys, monkeypatch):
        m1 = matrix_to_json(np.diag([1.0, -1.0]).astype(complex))
        m2 = matrix_to_json(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
        code, out, _ = run_cli(
            capsys, monkeypatch, ["check", "cube", "--d", "2"], stdin_obj={"tuple": [m1, m2]}
        )
        assert code == 0
        assert json.loads(out)["member"] is True


class TestDilate:
    def test_halmos(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, monkeypatch, ["dilate", "halmos"], stdin_obj=scalar(0.5))
        assert code == 0
        obj = json.loads(out)
        assert obj["operators"][0]["rows"] == 2

    def test_joint(self, capsys, monkeypatch):
        payload = {"a": scalar(0.3), "b": scalar(-0.2)}
        code, out, _ = run_cli(
            capsys, monkeypatch, ["dilate", "joint", "--k", "3"], stdin_obj=payload
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["pair"]["k"] == 3


class TestPositivity:
    def test_scalar_negative_exit_one(self, capsys, monkeypatch):
        one = scalar(1.0)
        element = {"k": 3, "q": 1, "c": [one, one, one], "g": one}
        code, out, _ = run_cli(
            capsys, monkeypatch, ["positivity", "scalar", "--k", "3"], stdin_obj=element
        )
        assert code == 1
        assert json.loads(out)["margin"] == pytest.approx(-1.0)

    def test_matrix_unit_certified(self, capsys, monkeypatch):
        one, zero = scalar(1.0), scalar(0.0)
        element = {"k": 3, "q": 1, "c": [one, zero, zero], "g": zero}
        code, out, _ = run_cli(
            capsys,
            monkeypatch,
            ["positivity", "matrix", "--k", "3", "--samples", "3"],
            stdin_obj=element,
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "certified"

    def test_cube_rule(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            monkeypatch,
            ["positivity", "cube"],
            stdin_obj={"alpha": 1.9, "beta": [1.0, 1.0]},
        )
        assert code == 1
        assert json.loads(out)["margin"] == pytest.approx(-0.1)


class TestQuotient:
    def test_psi_kernel(self, capsys, monkeypatch):
        one, minus = scalar(1.0), scalar(-1.0)
        payload = {"k": 3, "q": 1, "blocks": [one, one, one, minus, minus]}
        code, out, _ = run_cli(
            capsys, monkeypatch, ["quotient", "psi", "--k", "3"], stdin_obj=payload
        )
        assert code == 0
        obj = json.loads(out)
        flat = [abs(complex(re, im)) for block in obj["c"] for re, im in block["data"]]
        assert max(flat) <= 1e-12

    def test_dual_member(self, capsys, monkeypatch):
        payload = {"z": [[1.0, 0.0]] * 3 + [[1.0, 0.0], [2.0, 0.0]]}
        code, out, _ = run_cli(
            capsys, monkeypatch, ["quotient", "dual-member", "--k", "3"], stdin_obj=payload
        )
        assert code == 0
        assert json.loads(out)["member"] is True


class TestReportAndDeterminism:
    def test_identical_runs_are_byte_identical(self, capsys, monkeypatch):
        _, out1, _ = run_cli(capsys, monkeypatch, ["rep", "hadamard", "--m", "2", "--json"])
        _, out2, _ = run_cli(capsys, monkeypatch, ["rep", "hadamard", "--m", "2", "--json"])
        assert out1 == out2

    def test_report_structure(self, capsys, monkeypatch):
        _, out, _ = run_cli(capsys, monkeypatch, ["rep", "square", "--lambda", "0.5", "--json"])
        payload = json.loads(out)
        assert set(payload) == {"report", "result"}
        report = payload["report"]
        assert report["command"] == "rep square"
        assert report["seed"] == 0
        assert all(c["passed"] for c in report["checks"])

    def test_out_file(self, capsys, monkeypatch, tmp_path):
        target = tmp_path / "artifact.json"
        code, out, _ = run_cli(
            capsys, monkeypatch, ["rep", "square", "--lambda", "0", "--out", str(target)]
        )
        assert code == 0
        assert "PASS" in out
        assert json.loads(target.read_text())["provenance"].startswith("square_irrep")

    def test_bad_input_exit_two(self, capsys, monkeypatch):
        code, _, err = run_cli(capsys, monkeypatch, ["commutant"], stdin_obj={"nope": 1})
        assert code == 2
        assert err.startswith("error:")


class TestVerify:
    def test_small_budget_suite(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys, monkeypatch, ["verify", "all", "--size-budget", "4"]
        )
        assert code == 0
        assert "all checks passed" in out
