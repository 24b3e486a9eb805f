from pathlib import Path

import pytest

import src.main as cli
from src.utils import read_csv

EXAMPLES = Path(__file__).resolve().parent.parent / "data" / "examples"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_csv(capsys):
    code, out, _ = run(capsys, "decompose", str(EXAMPLES / "artin_schreier_p5.ini"), "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["lambda,k,d", "0,1,1", "0,3,1"]
    assert read_csv(out) == [[0, 1, 1], [0, 3, 1]]


def test_decompose_text_has_genus_line(capsys):
    code, out, _ = run(capsys, "decompose", str(EXAMPLES / "z6.ini"))
    assert code == 0
    assert "d(lambda=1, k=1) = 1" in out
    assert "g_F = 1" in out


def test_decompose_z6_csv(capsys):
    code, out, _ = run(capsys, "decompose", str(EXAMPLES / "z6.ini"), "--format", "csv")
    assert code == 0
    assert "1,1,1" in out.splitlines()


def test_boseck_csv(capsys):
    code, out, _ = run(capsys, "boseck", str(EXAMPLES / "artin_schreier_p5.ini"), "--format", "csv")
    assert code == 0
    rows = read_csv(out)
    assert [g for k, lam, g in rows][:5] == [3, 2, 2, 1, 0]


def test_gaps_csv_with_descriptors(capsys):
    code, out, _ = run(capsys, "gaps", str(EXAMPLES / "artin_schreier_p5.ini"), "--place", "0", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[:5] == ["gap", "1", "2", "4", "7"]
    assert lines[5:] == ["i,b_i,nu_i", "1,6,1", "2,12,2", "3,3,0", "4,9,1"]


def test_gaps_text_report(capsys):
    code, out, _ = run(capsys, "gaps", str(EXAMPLES / "z6.ini"), "--place", "0")
    assert code == 0
    assert "full gaps: 1" in out


def test_gaps_at_unramified_place(capsys):
    code, _, err = run(capsys, "gaps", str(EXAMPLES / "z6.ini"), "--place", "inf")
    assert code == 2
    assert "not totally ramified" in err


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[group]\np = 5\nsize = 3\n")
    code, _, err = run(capsys, "decompose", str(bad))
    assert code == 1
    assert "line 3" in err


def test_invalid_tower(tmp_path, capsys):
    bad = tmp_path / "odd.ini"
    bad.write_text("[group]\np = 5\nn = 2\n[branch]\ntame_phi = 1\n")
    code, _, err = run(capsys, "boseck", str(bad))
    assert code == 2
    assert "invalid tower" in err


def test_verify_curve_file(capsys):
    code, out, _ = run(capsys, "verify", str(EXAMPLES / "artin_schreier_p5.ini"))
    assert code == 0
    assert "FAIL" not in out
    assert "decomposition" in out


def test_verify_negative_control(capsys):
    code, out, _ = run(capsys, "verify", str(EXAMPLES / "corrupted_delta.ini"))
    assert code == 3
    assert "FAIL" in out
    assert "lambda=0, k=1" in out


def test_verify_prints_basis(capsys):
    code, out, _ = run(capsys, "verify", str(EXAMPLES / "z6.ini"), "--basis")
    assert code == 0
    assert "y^-1" in out


def test_verify_small_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--sweep", "seed=42", "count=3")
    assert code == 0
    assert out.splitlines()[-1] == "3/3 PASS"


def test_sweep_option_errors(capsys):
    code, _, _ = run(capsys, "verify", "--sweep", "depth=3")
    assert code == 1


@pytest.mark.parametrize(
    "generators, gaps_line, frobenius_line",
    [
        ("3,5", "gaps: 1,2,4,7", "frobenius: 7"),
        ("2,3", "gaps: 1", "frobenius: 1"),
        ("1", "gaps: none", "frobenius: -1"),
    ],
)
def test_semigroup(capsys, generators, gaps_line, frobenius_line):
    code, out, _ = run(capsys, "semigroup", "--generators", generators)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == gaps_line
    assert lines[1] == frobenius_line


def test_semigroup_descriptors(capsys):
    code, out, _ = run(capsys, "semigroup", "--generators", "3,5", "--d", "5")
    assert code == 0
    assert "2,12,2" in out.splitlines()


def test_output_is_deterministic(capsys):
    first = run(capsys, "boseck", str(EXAMPLES / "z6.ini"))
    second = run(capsys, "boseck", str(EXAMPLES / "z6.ini"))
    assert first[1] == second[1]


def test_langfuse_flushed_on_error(monkeypatch, capsys):
    calls = []
    monkeypatch.setattr(cli, "flush_langfuse", lambda: calls.append(True))
    code, _, _ = run(capsys, "decompose", str(EXAMPLES / "missing.ini"))
    assert code == 1
    assert calls == [True]


def test_reducible_tower_is_a_validation_error(tmp_path, capsys):
    reducible = tmp_path / "reducible.ini"
    reducible.write_text("[group]\np = 3\nell = 0\nn = 4\n" + "[branch]\ntame_phi = 2\n" * 4)
    code, _, err = run(capsys, "decompose", str(reducible))
    assert code == 2
    assert "reducible" in err


def test_decompose_text_lists_modules(capsys):
    code, out, _ = run(capsys, "decompose", str(EXAMPLES / "artin_schreier_p5.ini"))
    assert code == 0
    assert "V = V(0,1) + V(0,3)" in out
