"""End-to-end tests of the qh-alcove commands through CliRunner and run()."""

from __future__ import annotations

import json

import pytest
from typer.testing import CliRunner

from qh_alcove.app import create_app, run
from qh_alcove.cli import SPEC

runner = CliRunner()


@pytest.fixture()
def app():
    return create_app(SPEC)


def _json(app, *args: str):
    result = runner.invoke(app, list(args))
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


class TestAlgebra:
    def test_roots_json(self, app):
        data = _json(app, "roots", "G2", "--json")
        assert data["cartan_matrix"] == [[2, -3], [-1, 2]]
        assert data["c1"] == [5, 3]
        assert data["highest_root_marks"] == [3, 2]
        assert data["positive_roots"][2]["pairings"] == ["1", "3"]

    def test_roots_text(self, app):
        result = runner.invoke(app, ["roots", "G2"])
        assert result.exit_code == 0
        assert "c1(G/P_1) = 5" in result.output
        assert "c1(G/P_2) = 3" in result.output

    def test_cosets(self, app):
        data = _json(app, "cosets", "G2", "--node", "1", "--json")
        assert data["poincare"] == [1] * 6
        assert data["cosets"][1]["word"] == "s1"
        assert data["cosets"][0]["dual"] == 5

    def test_qh_table(self, app):
        data = _json(app, "qh", "table", "G2", "-n", "1", "--json")
        assert data["ring"] == "G2/P_1"
        assert data["c1"] == 5
        entry = next(
            p["value"] for p in data["products"] if (p["left"], p["right"]) == ("y_1", "y_4")
        )
        assert entry == [
            {"class": "y_5", "coefficient": "1", "q_degree": 0},
            {"class": "y_0", "coefficient": "1", "q_degree": 1},
        ]

    def test_qh_table_text(self, app):
        result = runner.invoke(app, ["qh", "table", "G2", "-n", "2"])
        assert result.exit_code == 0
        assert "QH*(G2/P_2), c1 = 3" in result.output
        assert "qy_4 + q^2y_1" in result.output
        assert "…" not in result.output

    def test_qh_table_grassmannian(self, app):
        data = _json(app, "qh", "table", "A3", "-n", "2", "--json")
        assert data["ring"] == "Gr(2,4)"
        assert data["classes"][0] == "s()"

    def test_giambelli(self, app):
        data = _json(app, "qh", "giambelli", "G2", "-n", "2", "--json")
        assert data["giambelli"]["y_5"] == "(1/18)y_1^5 - (5/6)qy_1^2"
        assert data["giambelli"]["y_0"] == "1"

    def test_presentation(self, app):
        data = _json(app, "qh", "presentation", "G2", "-n", "2", "--json")
        assert data["relation"] == "y_1^6 = 18qy_1^3 + 27q^2"
        assert data["degree"] == 6
        assert data["complete"] is True
        assert data["semisimple_at_q1"] is True

    def test_presentation_not_divisor_generated(self, app):
        result = runner.invoke(app, ["qh", "presentation", "A3", "-n", "2"])
        assert result.exit_code == 1
        assert "not generated" in result.output

    def test_bad_node(self, app):
        assert runner.invoke(app, ["cosets", "G2", "--node", "3"]).exit_code == 2

    def test_bad_group(self, app):
        assert runner.invoke(app, ["roots", "G7"]).exit_code == 2


class TestInequalities:
    def test_g2_json(self, app):
        data = _json(app, "inequalities", "G2", "--json")
        assert len(data) == 73
        assert sum(1 for rec in data if rec["d"] == 0) == 33

    def test_su2_text(self, app):
        result = runner.invoke(app, ["inequalities", "su2"])
        assert result.exit_code == 0
        assert "3 classical and 1 quantum inequalities" in result.output
        assert "[e | e | e]" in result.output

    def test_csv(self, app):
        result = runner.invoke(app, ["inequalities", "su2", "--csv"])
        lines = result.output.splitlines()
        assert lines[0] == "group,node,d,tuple,indices,coeffs,pretty"
        assert len(lines) == 5

    def test_json_and_csv_conflict(self, app):
        assert runner.invoke(app, ["inequalities", "su2", "--json", "--csv"]).exit_code == 2

    def test_budget(self, app):
        result = runner.invoke(app, ["inequalities", "G2", "--budget", "products=10"])
        assert result.exit_code == 1
        assert "budget" in result.output

    def test_bad_budget(self, app):
        assert runner.invoke(app, ["inequalities", "G2", "--budget", "speed=3"]).exit_code == 2

    def test_output_file(self, app, tmp_path):
        path = tmp_path / "su2.json"
        runner.invoke(app, ["inequalities", "su2", "-o", str(path)])
        assert len(json.loads(path.read_text())) == 4


class TestCheck:
    def test_member(self, app):
        result = runner.invoke(app, ["check", "su2", "--mu", "1/2;1/2;1/2"])
        assert result.exit_code == 0
        assert "Member" in result.output

    def test_non_member(self, app):
        result = runner.invoke(app, ["check", "su2", "--mu", "1/2;1/4;0"])
        assert result.exit_code == 1
        assert "Not a member" in result.output

    def test_non_member_json(self, app):
        result = runner.invoke(app, ["check", "su2", "--mu", "1/2;1/4;0", "--json"])
        assert result.exit_code == 1
        data = json.loads(result.output)
        assert data["member"] is False
        assert len(data["violated"]) == 1

    def test_strict(self, app):
        args = ["check", "su2", "--mu", "1/2;1/2;0"]
        assert runner.invoke(app, args).exit_code == 0
        assert runner.invoke(app, [*args, "--strict"]).exit_code == 1

    def test_product(self, app):
        args = ["check", "su2", "--mu", "1/2;1/2;1", "--product"]
        assert runner.invoke(app, args).exit_code == 0

    def test_system_file(self, app, tmp_path):
        path = tmp_path / "su2.json"
        runner.invoke(app, ["inequalities", "su2", "-o", str(path)])
        args = ["check", "su2", "--mu", "1/2;1/2;1/2", "--system", str(path)]
        assert runner.invoke(app, args).exit_code == 0

    def test_outside_alcove(self, app):
        assert runner.invoke(app, ["check", "su2", "--mu", "3/2;0;0"]).exit_code == 2

    def test_expected_points(self, app):
        assert runner.invoke(app, ["check", "su2", "--mu", "0;0", "-b", "3"]).exit_code == 2

    def test_missing_system_file(self, app, tmp_path):
        args = ["check", "su2", "--mu", "0;0;0", "--system", str(tmp_path / "none.json")]
        assert runner.invoke(app, args).exit_code == 2


class TestPrune:
    def test_g2_non_facet(self, app):
        data = _json(app, "prune", "G2", "--json")
        assert len(data["kept"]) + len(data["removed"]) == 73
        omega1 = [["2", "1"]] * 3
        top = [r for r in data["removed"] if r["inequality"]["coeffs"] == omega1]
        assert [r["lp_max"] for r in top] == ["2"]

    def test_from_file(self, app, tmp_path):
        source, kept = tmp_path / "su2.json", tmp_path / "kept.json"
        runner.invoke(app, ["inequalities", "su2", "-o", str(source)])
        result = runner.invoke(app, ["prune", "su2", "-i", str(source), "-o", str(kept)])
        assert result.exit_code == 0
        assert "Kept 4, removed 0" in result.output
        assert len(json.loads(kept.read_text())) == 4


class TestOracle:
    def test_member(self, app, tmp_path):
        path = tmp_path / "witness.json"
        args = ["oracle", "su2", "--mu", "1/2;1/2;1/2", "--restarts", "8", "--json"]
        data = _json(app, *args, "--witness", str(path))
        assert data["verdict"] == "member"
        assert data["group"] == "SU(2)"
        assert json.loads(path.read_text())["residual"] == data["residual"]

    def test_unresolved(self, app):
        args = ["oracle", "su2", "--mu", "1/2;1/4;0", "--restarts", "2"]
        result = runner.invoke(app, args)
        assert result.exit_code == 1
        assert "Unresolved" in result.output

    def test_not_type_a(self, app):
        assert runner.invoke(app, ["oracle", "G2", "--mu", "0,0;0,0"]).exit_code == 2

    def test_bad_tolerance(self, app):
        args = ["oracle", "su2", "--mu", "0;0", "--tol", "0"]
        assert runner.invoke(app, args).exit_code == 2

    def test_crosscheck(self, app):
        args = ["crosscheck", "su2", "--density", "3", "--restarts", "8", "--json"]
        data = _json(app, *args)
        assert data["ok"] is True
        assert data["total"] == 27

    def test_crosscheck_workers(self, app):
        args = ["crosscheck", "su2", "--density", "3", "--restarts", "8", "--json"]
        assert _json(app, *args, "--workers", "2") == _json(app, *args, "--workers", "1")
        assert runner.invoke(app, [*args, "--workers", "0"]).exit_code == 2


class TestRun:
    def test_exit_codes(self, capsys):
        assert run(SPEC, ["check", "su2", "--mu", "1/2;1/2;1/2"]) == 0
        assert run(SPEC, ["check", "su2", "--mu", "1/2;1/4;0"]) == 1
        assert run(SPEC, ["check", "su2", "--mu", "x"]) == 2
        assert run(SPEC, ["no-such-command"]) == 2

    def test_json_mode_suppresses_human_output(self, capsys):
        assert run(SPEC, ["check", "su2", "--mu", "1/2;1/2;1/2", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["member"] is True

    def test_config_seed_layering(self, tmp_path, capsys):
        config = tmp_path / "config" / "qh-alcove" / "config.json"
        config.parent.mkdir(parents=True, exist_ok=True)
        config.write_text(json.dumps({"oracle": {"restarts": 3}}))
        args = ["oracle", "su2", "--mu", "1/2;1/4;0", "--json"]
        assert run(SPEC, args) == 1
        assert json.loads(capsys.readouterr().out)["restarts_used"] == 3
