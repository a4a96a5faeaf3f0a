"""End-to-end command-line behavior: exit codes, piping, determinism."""

from __future__ import annotations

import json
import subprocess
import sys

from starfact.cayley import build_model
from starfact.groups import make_group
from starfact.serialize import canonical_json, starter_payload
from starfact.starters import Starter, StarterSet

OK, FAIL, NONE, BUDGET, USAGE = 0, 1, 2, 3, 64


def run_cli(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "starfact.cli", *args],
        input=stdin,
        capture_output=True,
        text=True,
    )


def golden_starter_json() -> str:
    g = make_group([4])
    m = build_model(g, g.subgroup([(2,)]))
    st = Starter(m, (StarterSet((m.edge((0,), (1,)),), g.subgroup([(2,)])),))
    return canonical_json(starter_payload(st))


def test_construct_verify_develop_pipeline(tmp_path):
    starter_file = tmp_path / "starter.json"
    r = run_cli("construct", "--family", "prime-power", "--p", "5", "--v", "2",
                "-o", str(starter_file))
    assert r.returncode == OK, r.stderr
    payload = json.loads(starter_file.read_text())
    assert payload["group"]["cyclic_orders"] == [5, 5, 2]
    assert len(payload["sets"]) == 8

    r = run_cli("verify-starter", str(starter_file))
    assert r.returncode == OK
    assert json.loads(r.stdout)["passed"] is True

    fact_file = tmp_path / "fact.json"
    r = run_cli("develop", str(starter_file), "-o", str(fact_file))
    assert r.returncode == OK
    fact = json.loads(fact_file.read_text())
    assert len(fact["factors"]) == 48

    r = run_cli("verify-factorization", str(fact_file), "--invariance")
    assert r.returncode == OK
    out = json.loads(r.stdout)
    assert out["passed"] is True and out["invariant"] is True


def test_stdin_stdout_piping():
    built = run_cli("construct", "--family", "prime-power", "--p", "5", "--v", "2")
    assert built.returncode == OK
    verified = run_cli("verify-starter", "-", stdin=built.stdout)
    assert verified.returncode == OK


def test_construct_is_byte_deterministic():
    a = run_cli("construct", "--family", "prime-power", "--p", "5", "--v", "2")
    b = run_cli("construct", "--family", "prime-power", "--p", "5", "--v", "2")
    assert a.stdout == b.stdout
    assert a.stdout.endswith("\n")


def test_doubling_via_cli(tmp_path):
    starter_file = tmp_path / "base.json"
    starter_file.write_text(golden_starter_json())
    r = run_cli("construct", "--family", "doubling", "--input", str(starter_file))
    assert r.returncode == OK, r.stderr
    payload = json.loads(r.stdout)
    assert payload["group"]["cyclic_orders"] == [4, 2]
    assert payload["construction"] == "doubling"
    assert run_cli("verify-starter", "-", stdin=r.stdout).returncode == OK


def test_failing_verification_exits_1():
    broken = json.loads(golden_starter_json())
    broken["sets"][0]["subgroup_generators"] = []  # trivial companion
    r = run_cli("verify-starter", "-", stdin=json.dumps(broken))
    assert r.returncode == FAIL
    report = json.loads(r.stdout)
    assert report["passed"] is False
    violations = [v for c in report["conditions"] for v in c["violations"]]
    assert violations


def test_tampered_factorization_exits_1(tmp_path):
    built = run_cli("construct", "--family", "doubling", "--input", "-",
                    stdin=golden_starter_json())
    fact = run_cli("develop", "-", stdin=built.stdout)
    assert fact.returncode == OK
    payload = json.loads(fact.stdout)
    payload["factors"] = payload["factors"][1:]
    r = run_cli("verify-factorization", "-", stdin=json.dumps(payload))
    assert r.returncode == FAIL


def test_search_exit_codes():
    assert run_cli("search", "--group", "4", "--H", "2").returncode == OK
    assert run_cli("search", "--group", "6", "--H", "3").returncode == NONE
    assert run_cli("search", "--group", "12", "--H", "6",
                   "--budget", "5").returncode == BUDGET


def test_search_modes_and_payload():
    r = run_cli("search", "--group", "4", "--H", "2", "--mode", "all")
    assert r.returncode == OK
    payload = json.loads(r.stdout)
    assert payload["witness_count"] == 4
    assert payload["nodes_explored"] == 5
    r = run_cli("search", "--group", "10", "--H", "5", "--mode", "exhaust")
    assert r.returncode == NONE
    assert json.loads(r.stdout)["status"] == "none_exists"


def test_search_workers_flag_matches_single_process():
    base = run_cli("search", "--group", "12", "--H", "4")
    multi = run_cli("search", "--group", "12", "--H", "4", "--workers", "2")
    assert base.stdout == multi.stdout
    assert base.returncode == multi.returncode == OK


def test_certify_exit_codes():
    r = run_cli("certify-nonexist", "--m", "3", "--n", "2")
    assert r.returncode == NONE
    payload = json.loads(r.stdout)
    assert payload["status"] == "certified"
    assert run_cli("certify-nonexist", "--m", "2", "--n", "2").returncode == OK
    assert run_cli("certify-nonexist", "--m", "2", "--n", "2",
                   "--budget", "1").returncode == BUDGET


def test_classify_output():
    r = run_cli("classify", "--m", "7", "--n", "6")
    assert r.returncode == OK
    payload = json.loads(r.stdout)
    assert payload["status"] == "not_exists"
    assert payload["certificate"]["type_zero_count"] == 18
    r = run_cli("classify", "--m", "12", "--n", "2")
    assert json.loads(r.stdout)["status"] == "exists"
    assert "certificate" not in json.loads(r.stdout)


def test_groups_listing():
    r = run_cli("groups", "--order", "8")
    assert r.returncode == OK
    payload = json.loads(r.stdout)
    assert [g["cyclic_orders"] for g in payload["groups"]] == [[8], [4, 2], [2, 2, 2]]
    r = run_cli("groups", "--order", "4", "--subgroups")
    lattice = json.loads(r.stdout)["groups"][0]["subgroups"]
    assert [s["order"] for s in lattice] == [1, 2, 4]


def test_emit_edges(tmp_path):
    edges = tmp_path / "edges.txt"
    r = run_cli("search", "--group", "4", "--H", "2", "--emit-edges", str(edges),
                "-o", str(tmp_path / "out.json"))
    assert r.returncode == OK
    assert edges.read_text() == "0 1\n0 3\n1 2\n2 3\n"


def test_usage_errors_exit_64():
    assert run_cli("no-such-command").returncode == USAGE
    assert run_cli("search", "--group", "4").returncode == USAGE  # missing --H
    assert run_cli("search", "--group", "abc", "--H", "2").returncode == USAGE
    assert run_cli("search", "--group", "4", "--H", "1,1").returncode == USAGE
    assert run_cli("verify-starter", "-", stdin="{not json").returncode == USAGE
    assert run_cli("verify-starter", "-", stdin='{"x": 1}').returncode == USAGE
    assert run_cli("construct", "--family", "prime-power").returncode == USAGE
    assert run_cli("construct", "--family", "doubling").returncode == USAGE
    assert run_cli("search", "--group", "4", "--H", "2",
                   "--frobnicate").returncode == USAGE
    assert run_cli("verify-starter", "/no/such/file.json").returncode == USAGE


def test_invalid_family_parameters_exit_64():
    # p = 7 fails parameter validation before any assembly starts
    r = run_cli("construct", "--family", "prime-power", "--p", "7", "--v", "2")
    assert r.returncode == USAGE
    assert "not congruent" in r.stderr


def test_doubling_invalid_starter_exits_1():
    broken = json.loads(golden_starter_json())
    broken["sets"][0]["subgroup_generators"] = []
    r = run_cli("construct", "--family", "doubling", "--input", "-",
                stdin=json.dumps(broken))
    assert r.returncode == FAIL
    assert "condition 2" in r.stderr
