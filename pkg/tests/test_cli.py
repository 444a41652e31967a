"""End-to-end command line checks with frozen text output."""

import json
from importlib import resources

import pytest

from clusterdeform.cli import main

_DATA = resources.files("clusterdeform.data")
A2 = str(_DATA / "a2.json")
A3_BAD = str(_DATA / "a3_bad.json")
G2 = str(_DATA / "g2.json")
A1F = str(_DATA / "a1f.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_sr_ideal_text(capsys):
    code, out = run(capsys, "sr-ideal", A2)
    assert code == 0
    assert out == (
        "variables: x(-1,0,0,2,0) x(-1,1,0,1,0) x(0,-1,0,1,1) x13 x14"
        " s1 s2 s3\n"
        "gen: x(0,-1,0,1,1)*x14\n"
        "gen: x(-1,1,0,1,0)*x13\n"
        "gen: x(-1,1,0,1,0)*x(0,-1,0,1,1)\n"
        "gen: x(-1,0,0,2,0)*x14\n"
        "gen: x(-1,0,0,2,0)*x13\n")


def test_cone_text(capsys):
    code, out = run(capsys, "cone", A2)
    assert code == 0
    assert out == (
        "ambient order: x13 x14 x(-1,1,0,1,0) x(0,-1,0,1,1) x(-1,0,0,2,0)"
        " s1 s2 s3\n"
        "lineality: [1, 1, 0, 0, -1, 0, 0, 1]\n"
        "lineality: [0, 2, 0, -3, -4, -1, -2, 1]\n"
        "lineality: [0, 0, 1, 1, 2, 1, 1, 0]\n"
        "ray: [0, 0, 0, -1, -2, -1, -2, 1]\n"
        "ray: [0, 0, 0, -1, 0, -1, 0, -1]\n"
        "ray: [0, 0, 0, 0, 0, 0, 0, -1]\n"
        "ray: [0, 0, 0, 1, 0, -1, 0, 1]\n"
        "ray: [0, 0, 0, 1, 2, 1, 0, -1]\n"
        "simplicial mod lineality: True\n"
        "smooth mod lineality: True\n"
        "interior weight: [0, 2, 4, 1, 4, 1, 0, 0]\n")


def test_lift_verify_text(capsys):
    code, out = run(capsys, "lift", A2, "--verify")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "generators: 5  (order 6)"
    assert lines[1:6] == [
        "  x(-1,1,0,1,0)*x(0,-1,0,1,1) - x(-1,0,0,2,0)*s3*t(1,-1)"
        " - s1*s2*t(-1,0)*t(0,1)",
        "  x14*x(-1,0,0,2,0) - x(-1,1,0,1,0)*s2*t(0,-1) - s1^2*t(0,1)*t(1,0)",
        "  x14*x(0,-1,0,1,1) - x13*s1*t(0,1) - s2*s3*t(0,-1)*t(1,-1)",
        "  x13*x(-1,0,0,2,0) - x(0,-1,0,1,1)*s1*t(1,0) - s2^2*t(-1,0)*t(0,-1)",
        "  x13*x(-1,1,0,1,0) - x14*s2*t(-1,0) - s1*s3*t(1,-1)*t(1,0)",
    ]
    assert lines[6:] == ["verify fiber_at_zero: True",
                         "verify laurent_vanishing: True",
                         "verify matches_universal_relations: True"]


def test_check_failure_exit_code(capsys):
    code, out = run(capsys, "check", A3_BAD, "--property", "t1")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "T1 holds: False"
    assert lines[1] == \
        "  witness: {'seed': 0, 'path': (), 'j': 0, 'w': [0, 0, 0, 0, -1, 1]}"


def test_check_repair(capsys):
    code, out = run(capsys, "check", A3_BAD, "--property", "t1", "--repair")
    assert code == 0
    tail = out.splitlines()[-1]
    assert tail.startswith("repaired seed: ")
    repaired = json.loads(tail[len("repaired seed: "):])
    assert repaired["m"] == 9
    assert repaired["B"][6:] == [[0, 0, -1], [-1, 0, 0], [1, 0, 0]]


def test_check_success_exit_code(capsys):
    code, out = run(capsys, "check", A2, "--property", "t1")
    assert code == 0
    assert out.splitlines()[0] == "T1 holds: True"
    for prop in ("t0", "t0star"):
        code, _ = run(capsys, "check", A2, "--property", prop)
        assert code == 0


def test_univ_text(capsys):
    code, out = run(capsys, "univ", A1F)
    assert code == 0
    assert out == (
        "coefficients: 2\n"
        "  t(-1)  row [-1]  deg_T (1, 1, 0)\n"
        "  t(1)  row [1]  deg_T (1, 1, -1)\n"
        "relations: 1\n"
        "  x(-1,0) * x1 = t(1)*f1 + t(-1)\n"
        "fiber at zero in the monomial ideal: True\n")


def test_grading_text(capsys):
    code, out = run(capsys, "grading", A2, "--find-positive")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "free rank: 3  torsion: []"
    assert "  deg x13 = (-1, 1, 1)" in lines
    assert lines[-2] == "positive grading: [1, 1, 1, 1, 1]"
    assert lines[-1] == "strictly positive grading: [1, 1, 1, 1, 1]"


def test_enumerate_json(capsys):
    code, out = run(capsys, "enumerate", G2, "--json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"clusters", "exchange_pairs", "variables"}
    assert len(payload["variables"]) == 8
    assert len(payload["clusters"]) == 8
    assert len(payload["exchange_pairs"]) == 8


def test_t1_invariant_text(capsys):
    code, out = run(capsys, "t1", A2, "--invariant")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "pinned degrees: 5"
    assert len(lines) == 6


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "enumerate", str(bad))[0] == 2
    assert run(capsys, "enumerate", str(tmp_path / "missing.json"))[0] == 2


def test_budget_error(capsys):
    assert run(capsys, "enumerate", A3_BAD, "--max-seeds", "2")[0] == 2


def test_usage_error(capsys):
    assert run(capsys, "check", A3_BAD, "--property", "bogus")[0] == 2


def test_demo(capsys):
    code, out = run(capsys, "demo")
    assert code == 0
    assert out.rstrip().endswith("verified: True")
