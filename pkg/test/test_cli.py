"""
Test CLI
Commands go through main(argv) and must agree with the library calls they wrap
"""

import sys
sys.path.append('.')

import json

import pytest

from src.algebra.chain_maps import Family, brute_force_enumerate
from src.algebra.normal_forms import normalize
from src.algebra.words import format_word, parse_word
from src.config import VERIFICATION_CONFIG
from src.main import main, parse_n_range


def run(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, out


def test_parse_n_range():
    assert parse_n_range("3") == [3]
    assert parse_n_range("1..4") == [1, 2, 3, 4]


def test_normalize_text(capsys):
    code, out = run(capsys, "normalize", "--family", "id", "--n", "4", "--word", "a[2,3] a[1,2]")
    assert code == 0
    assert out == "f[2] a[1,3]\n"


def test_normalize_json_matches_library(capsys):
    code, out = run(capsys, "normalize", "--family", "ic", "--n", "3", "--word", "a[1] a[1]",
                    "--format", "json")
    data = json.loads(out)
    result, derivation = normalize(parse_word("a[1] a[1]", Family.IC, 3))
    assert code == 0
    assert data["normal_form"] == format_word(result) == "e[1] e[2]"
    assert data["derivation"] == derivation.to_dict()


def test_count_catalan(capsys):
    code, out = run(capsys, "count", "--family", "c", "--n", "1..6")
    assert code == 0
    assert [int(line.split("\t")[1]) for line in out.splitlines()] == [1, 2, 5, 14, 42, 132]


def test_enumerate_json(capsys):
    code, out = run(capsys, "enumerate", "--family", "pc", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["count"] == 6
    assert data["elements"] == [list(a.images) for a in brute_force_enumerate(Family.PC, 2)]


def test_enumerate_forms(capsys):
    code, out = run(capsys, "enumerate", "--family", "d", "--n", "3", "--forms")
    assert code == 0
    assert out.splitlines() == ["1", "e[1,2]", "e[1,3]", "e[2,3]", "e[1,2] e[1,3]", "e[1,2] e[2,3]"]


def test_verify_json(capsys):
    code, out = run(capsys, "verify", "--family", "d", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["verdict"] == "pass"
    assert data["concrete_size"] == 6


def test_verify_is_byte_identical(capsys):
    argv = ("verify", "--family", "all", "--n", "2", "--format", "json", "--random-samples", "50")
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)
    assert first[0] == 0


def test_verify_all_families_n4_is_byte_identical(capsys, monkeypatch):
    monkeypatch.setitem(VERIFICATION_CONFIG, "path_independence", False)
    argv = ("verify", "--family", "all", "--n", "4", "--format", "json", "--random-samples", "300")
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)
    assert first[0] == 0
    assert [r["family"] for r in json.loads(first[1])] == [fam.value for fam in Family]


def test_exhausted_completion_exits_3(capsys):
    code, out = run(capsys, "verify", "--family", "c", "--n", "5", "--max-states", "10")
    assert code == 3
    assert out.startswith("C_5: incomplete")
    assert "incomplete_stage=presented_size" in out


def test_cayley_dot(capsys):
    code, out = run(capsys, "cayley", "--family", "d", "--n", "2")
    assert code == 0
    assert out.startswith("digraph D_2 {")
    assert '"1,1"' in out and '"1,2"' in out
    assert "e[1,2]" in out
    assert out.count("->") == 2


def test_factorize(capsys):
    code, out = run(capsys, "factorize", "--family", "ic", "--images", "0,1,2")
    assert code == 0
    assert out == "e[1] a[1] a[2]\n"


def test_output_file(capsys, tmp_path):
    target = tmp_path / "forms.txt"
    code, out = run(capsys, "enumerate", "--family", "ic", "--n", "2", "--forms", "--output", str(target))
    assert code == 0
    assert out == ""
    assert len(target.read_text().splitlines()) == 5


@pytest.mark.parametrize("argv", [
    ["normalize", "--family", "d", "--n", "3"],
    ["normalize", "--family", "d", "--n", "3", "--word", "e[3,1]"],
    ["normalize", "--family", "x", "--n", "3", "--word", "1"],
    ["normalize", "--family", "c", "--n", "3", "--word", "e[1]"],
    ["count", "--family", "c", "--n", "3..1"],
    ["enumerate", "--family", "d", "--n", "1..3"],
    ["factorize", "--family", "d", "--images", "1,1"],
    ["enumerate", "--family", "d", "--n", "3", "--format", "dot"],
    ["frobnicate", "--family", "d"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_resource_cap_exits_3(capsys, monkeypatch):
    from src.config import CHAIN_CONFIG
    monkeypatch.setitem(CHAIN_CONFIG, "max_candidates", 5)
    assert main(["count", "--family", "d", "--n", "4"]) == 3
