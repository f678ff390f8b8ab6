"""End-to-end command-line behaviour: exit codes, output shapes, seeding."""

import json
import math

import pytest

from ivopt.cli import main

PSTAR_CFG = {
    "manifold": {"kind": "circle"},
    "objective": {"real": "(theta - pi/2)^2"},
    "constraints": [
        {"real": "theta - pi/2"},
        {"real": "exp(-(theta - pi/2)^2) - 1"},
        {"real": "(2*theta/pi - 1) - (theta - pi/2)^2 - 1"},
    ],
    "candidate": {"theta": math.pi / 2.0},
    "name": "half-arc",
}


@pytest.fixture
def pstar_file(tmp_path):
    path = tmp_path / "pstar.json"
    path.write_text(json.dumps(PSTAR_CFG), encoding="utf-8")
    return str(path)


@pytest.fixture
def convex_file(tmp_path):
    cfg = {
        "manifold": {"kind": "circle"},
        "objective": {"real": "(theta - 3)^2"},
    }
    path = tmp_path / "convex.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


@pytest.fixture
def concave_file(tmp_path):
    cfg = {
        "manifold": {"kind": "circle"},
        "objective": {"real": "-(theta - 3)^2"},
    }
    path = tmp_path / "concave.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("IVOPT_SEED", raising=False)


class TestOrder:
    def test_lu_incomparable(self, capsys):
        assert main(["order", "[1,4]", "[2,3]", "--relation", "lu"]) == 0
        assert capsys.readouterr().out.strip() == "Incomparable"

    def test_min_prefers_narrower_on_center_tie(self, capsys):
        assert main(["order", "[1,4]", "[2,3]"]) == 0
        assert capsys.readouterr().out.strip() == "Greater"

    def test_eps_zero_forces_exact_centers(self, capsys):
        args = ["order", "[0,2]", "[1e-12,2.000000000001]"]
        assert main(args) == 0
        assert capsys.readouterr().out.strip() == "Equal"
        assert main(args + ["--eps", "0"]) == 0
        assert capsys.readouterr().out.strip() == "Less"

    def test_json_report(self, capsys):
        assert main(["order", "<2,1>", "[1,3]", "--relation", "max", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["outcome"] == "Equal"
        assert payload["relation"] == "max"
        assert payload["left"] == [1.0, 3.0]

    def test_malformed_interval(self, capsys):
        assert main(["order", "[2,1]", "[0,1]"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_unknown_relation(self, capsys):
        assert main(["order", "[0,1]", "[0,1]", "--relation", "both"]) == 1
        assert "usage error" in capsys.readouterr().err


class TestCheckConvexity:
    def test_convex_objective_passes(self, convex_file, capsys):
        rc = main(["check-convexity", "--problem", convex_file,
                   "--pairs", "8", "--grid", "9", "--seed", "1"])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.startswith("HoldsOnSamples")

    def test_concave_objective_reports_witness(self, concave_file, capsys):
        rc = main(["check-convexity", "--problem", concave_file,
                   "--pairs", "8", "--grid", "9", "--seed", "1"])
        out = capsys.readouterr().out
        assert rc == 2
        assert out.startswith("CounterexampleFound")
        assert "witness:" in out and "path value" in out

    def test_at_point_mode(self, convex_file, capsys):
        rc = main(["check-convexity", "--problem", convex_file, "--at", "3.0",
                   "--pairs", "8", "--grid", "9", "--seed", "1"])
        assert rc == 0
        assert capsys.readouterr().out.startswith("HoldsOnSamples")

    def test_json_payload(self, convex_file, capsys):
        rc = main(["check-convexity", "--problem", convex_file, "--json",
                   "--pairs", "8", "--grid", "9", "--seed", "4"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "HoldsOnSamples"
        assert payload["seed"] == 4
        assert payload["path"] == "geodesic"

    def test_missing_problem_file(self, tmp_path, capsys):
        rc = main(["check-convexity", "--problem", str(tmp_path / "nope.json")])
        assert rc == 1
        assert "error:" in capsys.readouterr().err


class TestCheckKkt:
    def test_given_multipliers_strict(self, pstar_file, capsys):
        rc = main(["check-kkt", "--problem", pstar_file, "--mu", "0,1,0",
                   "--directions", "8", "--seed", "0"])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.splitlines()[0].startswith("StrictOptimal")
        assert "active set: g1,g2" in out

    def test_multiplier_search_json(self, pstar_file, capsys):
        rc = main(["check-kkt", "--problem", pstar_file, "--find-mu", "--json",
                   "--directions", "8", "--seed", "0"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "StrictOptimal"
        assert len(payload["found_mu"]) == 3
        assert payload["found_mu"][2] == 0.0

    def test_interior_point_is_inconclusive(self, pstar_file, capsys):
        rc = main(["check-kkt", "--problem", pstar_file, "--point", "0.3",
                   "--directions", "8", "--seed", "0"])
        out = capsys.readouterr().out
        assert rc == 2
        assert "Inconclusive" in out

    def test_mu_and_find_mu_conflict(self, pstar_file, capsys):
        rc = main(["check-kkt", "--problem", pstar_file,
                   "--mu", "0,1,0", "--find-mu"])
        assert rc == 1
        assert "usage error" in capsys.readouterr().err

    def test_problem_flag_required(self, capsys):
        assert main(["check-kkt", "--mu", "0,1,0"]) == 1
        assert "usage error" in capsys.readouterr().err

    @pytest.mark.parametrize("mu", ["a,b,c", "0,1"])
    def test_bad_multiplier_text(self, pstar_file, mu, capsys):
        assert main(["check-kkt", "--problem", pstar_file, "--mu", mu]) == 1
        assert "error:" in capsys.readouterr().err

    def test_bad_scheme_flag(self, pstar_file, capsys):
        rc = main(["check-kkt", "--problem", pstar_file, "--mu", "0,1,0",
                   "--deriv-levels", "0"])
        assert rc == 1


class TestRepro:
    def test_single_scenario(self, capsys):
        rc = main(["repro", "--example", "4.1"])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.startswith("scenario 4.1")
        assert "result: ok" in out

    def test_unknown_scenario_choice(self, capsys):
        assert main(["repro", "--example", "9.9"]) == 1
        assert "usage error" in capsys.readouterr().err

    def test_example_or_all_required(self, capsys):
        assert main(["repro"]) == 1
        assert "usage error" in capsys.readouterr().err

    def test_json_is_deterministic_up_to_wall_time(self, capsys):
        def run():
            assert main(["repro", "--example", "4.1", "--json", "--seed", "2"]) == 0
            payload = json.loads(capsys.readouterr().out)
            payload.pop("wall_time_s")
            return payload

        assert run() == run()


class TestSeedResolution:
    def test_env_seed_used(self, monkeypatch, capsys):
        monkeypatch.setenv("IVOPT_SEED", "5")
        assert main(["repro", "--example", "4.1", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 5

    def test_flag_beats_env(self, monkeypatch, capsys):
        monkeypatch.setenv("IVOPT_SEED", "5")
        assert main(["repro", "--example", "4.1", "--json", "--seed", "3"]) == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 3

    def test_file_seed_is_the_fallback(self, tmp_path, capsys):
        cfg = dict(PSTAR_CFG)
        cfg["options"] = {"seed": 11}
        path = tmp_path / "seeded.json"
        path.write_text(json.dumps(cfg), encoding="utf-8")
        rc = main(["check-convexity", "--problem", str(path), "--json",
                   "--pairs", "4", "--grid", "5"])
        assert rc == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 11

    def test_invalid_env_seed(self, monkeypatch, capsys):
        monkeypatch.setenv("IVOPT_SEED", "abc")
        assert main(["repro", "--example", "4.1", "--json"]) == 1
        assert "IVOPT_SEED" in capsys.readouterr().err


class TestTopLevel:
    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "ivopt" in capsys.readouterr().out

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 1
        assert "usage error" in capsys.readouterr().err
