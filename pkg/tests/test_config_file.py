from pathlib import Path

import pytest

from src.config_file import load_config, parse_config
from src.errors import ConfigParseError, TowerValidationError
from src.models import KummerRoot, PoleTerm
from src.ramdata import from_artin_schreier

EXAMPLES = Path(__file__).resolve().parent.parent / "data" / "examples"


def test_artin_schreier_file_matches_constructor():
    config = load_config(EXAMPLES / "artin_schreier_p5.ini")
    assert config.tower() == from_artin_schreier(5, 3)
    spec = config.curve()
    assert spec.f_terms == [PoleTerm(root=0, order=3, coeff=1)]
    assert spec.place == "0"


def test_z6_file():
    config = load_config(EXAMPLES / "z6.ini")
    tower = config.tower()
    assert [bp.id for bp in tower.branch_points] == ["0", "inf"]
    assert tower.point("0").wild.delta == 6
    assert tower.point("inf").wild is None
    spec = config.curve()
    assert spec.b_roots == [KummerRoot(root=0, phi=1)]
    assert spec.group.n == 2


def test_comments_defaults_and_lists():
    text = """
    ; leading comment
    [group]
    p = 3      # characteristic
    ell = 2
    [branch]
    jumps = 1, 10
    [curve]
    q = 9
    """
    config = parse_config(text)
    group = config.group_spec()
    assert (group.p, group.ell, group.n, group.kummer_exponent) == (3, 2, 1, 1)
    tower = config.tower()
    bp = tower.branch_points[0]
    assert bp.id == "0"
    assert bp.wild.jumps == (1, 10)
    assert (bp.wild.epsilon, bp.wild.delta) == (2, 34)


def test_curve_lists_with_coefficients():
    text = "[group]\np = 5\nell = 1\nn = 2\n[curve]\nb_roots = 0:1, 2:1\nf_terms = 0:3:2, 1:2\n"
    spec = parse_config(text).curve()
    assert spec.b_roots == [KummerRoot(root=0, phi=1), KummerRoot(root=2, phi=1)]
    assert spec.f_terms == [PoleTerm(root=0, order=3, coeff=2), PoleTerm(root=1, order=2, coeff=1)]


def test_has_tower_follows_branch_sections():
    assert load_config(EXAMPLES / "z6.ini").has_tower()
    assert not parse_config("[group]\np = 5\nell = 1\n[curve]\nf_terms = 0:3\n").has_tower()


@pytest.mark.parametrize(
    "text, line",
    [
        ("[group]\np = 5\ncolour = red\n", 3),
        ("[group]\np = 5\n[group]\np = 3\n", 3),
        ("[group]\np = five\n", 2),
        ("[group]\np = 5\n[tower]\n", 3),
        ("p = 5\n", 1),
        ("[group]\np 5\n", 2),
        ("[group]\np = 5\np = 7\n", 3),
        ("[group\np = 5\n", 1),
        ("[group]\np = 5\n[curve]\nb_roots = 0-1\n", 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ConfigParseError) as exc:
        config = parse_config(text)
        config.tower()
        config.curve()
    assert exc.value.line == line
    assert f"line {line}:" in str(exc.value)


def test_missing_group_section():
    with pytest.raises(ConfigParseError):
        parse_config("[base]\ngenus = 1\n")


def test_epsilon_without_jumps_rejected():
    with pytest.raises(ConfigParseError):
        parse_config("[group]\np = 3\nell = 1\n[branch]\nepsilon = 1\n").tower()


def test_invalid_group_is_a_parse_error():
    with pytest.raises(ConfigParseError):
        parse_config("[group]\np = 4\n").group_spec()


def test_mathematical_violation_is_a_validation_error():
    text = "[group]\np = 5\nell = 0\nn = 2\n[branch]\ntame_phi = 1\n"
    with pytest.raises(TowerValidationError):
        parse_config(text).tower()


def test_unreadable_file(tmp_path):
    with pytest.raises(ConfigParseError):
        load_config(tmp_path / "missing.ini")
