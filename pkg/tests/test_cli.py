import json
from pathlib import Path

import pytest

from pgraphs.cli import main
from pgraphs.degree import Degree
from pgraphs.io import SpecError, graph_from_spec, load_graph, parse_degree_arg
from pgraphs.pgraph import validate

SPECS = Path(__file__).resolve().parent.parent / "demos" / "specs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


@pytest.mark.parametrize("command", ["validate", "paths", "groupoid", "conjugacy", "iso"])
def test_e1_commands_pass(capsys, command):
    code, out = run(capsys, command, SPECS / "e1.json")
    assert code == 0, out.out


def test_validate_json(capsys):
    code, out = run(capsys, "validate", SPECS / "e3.json", "--json")
    payload = json.loads(out.out)
    assert code == 0 and payload["ok"]
    assert payload["max_certificate"] == 1


def test_corrupted_square_fails_with_witness(capsys):
    code, out = run(capsys, "validate", SPECS / "corrupted_square.json")
    assert code == 1
    assert "FAIL unique factorization" in out.out
    assert "a1.c" in out.out


def test_malformed_spec_exit_code(capsys):
    code, out = run(capsys, "validate", SPECS / "malformed.json")
    assert code == 2
    assert "input error" in out.err


def test_missing_file_exit_code(capsys, tmp_path):
    code, _ = run(capsys, "validate", tmp_path / "nope.json")
    assert code == 2


def test_paths_listing(capsys):
    code, out = run(capsys, "paths", SPECS / "e1.json")
    assert code == 0
    assert out.out.splitlines()[0] == "# 3 points (filters)"
    code, out = run(capsys, "paths", SPECS / "e1.json", "--boundary", "--json")
    payload = json.loads(out.out)
    assert len(payload["points"]) == 2


def test_paths_morphisms_and_dot(capsys):
    code, out = run(capsys, "paths", SPECS / "e1.json", "--space", "morphisms")
    assert code == 0 and "(morphisms)" in out.out
    code, out = run(capsys, "paths", SPECS / "e1.json", "--dot")
    assert out.out.startswith("digraph paths")


def test_groupoid_counts(capsys):
    code, out = run(capsys, "groupoid", SPECS / "e1.json")
    assert out.out.splitlines()[0] == "# 5 elements"
    code, out = run(capsys, "groupoid", SPECS / "e1.json", "--reduce", "boundary")
    assert out.out.splitlines()[0] == "# 4 elements"


def test_iso_with_window_override(capsys):
    code, out = run(capsys, "iso", SPECS / "e3.json", "--window", "2,2", "--skip-tau", "--json")
    payload = json.loads(out.out)
    assert code == 0 and payload["elements"] == 81


def test_export_round_trip(capsys, tmp_path):
    code, out = run(capsys, "export", SPECS / "e3.json")
    target = tmp_path / "e3_explicit.json"
    target.write_text(out.out)
    G = load_graph(target)
    assert len(G) == 4 and validate(G).ok
    code, out = run(capsys, "export", SPECS / "e3.json", "--dot")
    assert "color=blue" in out.out and "color=red" in out.out


def test_omega_spec():
    G = load_graph(SPECS / "omega_ab.json")
    assert len(G) == 6


def test_bad_window_argument(capsys):
    code, _ = run(capsys, "groupoid", SPECS / "e1.json", "--bound", "x,y")
    assert code == 2


def test_spec_errors():
    with pytest.raises(SpecError):
        graph_from_spec({"monoid": {"kind": "grid", "k": 1}, "presentation": "weird"})
    with pytest.raises(SpecError):
        graph_from_spec({"monoid": {"kind": "nope"}})


def test_parse_degree_arg():
    G = load_graph(SPECS / "e3.json")
    assert parse_degree_arg(G, "2,1") == Degree(G.monoid, (2, 1))
    assert parse_degree_arg(G, "[0,1]") == Degree(G.monoid, (0, 1))
    assert parse_degree_arg(G, None) is None
