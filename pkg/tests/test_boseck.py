import pytest

from src.boseck import BoseckContext
from src.errors import TowerValidationError
from src.models import BranchPoint, GroupSpec, TowerData, WildData
from src.ramdata import from_artin_schreier, totally_wild


def z6_tower() -> TowerData:
    return TowerData(
        group=GroupSpec(p=3, ell=1, n=2),
        branch_points=[
            BranchPoint(id="0", tame_phi=1, wild=totally_wild(3, (2,))),
            BranchPoint(id="inf", tame_phi=1),
        ],
    )


def test_artin_schreier_boseck_column():
    ctx = BoseckContext(from_artin_schreier(5, 3))
    assert [ctx.nu("0", k) for k in range(5)] == [3, 2, 2, 1, 0]
    assert [ctx.w_valuation("0", k) for k in range(5)] == [0, -3, -6, -9, -12]
    assert [row[0] for row in ctx.gamma_table()] == [3, 2, 2, 1, 0, 0]


@pytest.mark.parametrize("p, m", [(3, 1), (3, 2), (5, 3), (5, 7), (7, 4), (7, 12)])
def test_artin_schreier_closed_form(p, m):
    """Gamma_k = floor(((m + 1)(p - 1) - k m) / p) for y^p - y = 1/x^m."""
    ctx = BoseckContext(from_artin_schreier(p, m))
    for k in range(p - 1):
        assert ctx.gamma(k, 0) == ((m + 1) * (p - 1) - k * m) // p


def test_z6_boseck_columns():
    ctx = BoseckContext(z6_tower())
    assert [ctx.nu("0", k) for k in range(3)] == [2, 1, 0]
    table = ctx.gamma_table()
    assert [row[0] for row in table[:3]] == [1, 1, 0]
    assert [row[1] for row in table[:3]] == [2, 1, 1]
    assert ctx.tame_gamma(1) == 1
    assert ctx.tame_gamma(0) == 0


def test_tame_only_lambda_zero_column_vanishes():
    tower = TowerData(
        group=GroupSpec(p=7, ell=0, n=3),
        branch_points=[BranchPoint(id=i, tame_phi=1) for i in ("0", "1", "inf")],
    )
    ctx = BoseckContext(tower)
    assert ctx.gamma_table() == [[0, 2, 1], [0, 2, 1]]


def test_alpha_inverts_kummer_exponent():
    tower = TowerData(
        group=GroupSpec(p=7, ell=0, n=3, kummer_exponent=2),
        branch_points=[BranchPoint(id=i, tame_phi=1) for i in ("0", "1", "inf")],
    )
    ctx = BoseckContext(tower)
    assert [ctx.alpha(lam) for lam in range(3)] == [0, 2, 1]
    # the columns swap with the action exponent
    assert ctx.gamma_table() == [[0, 1, 2], [0, 1, 2]]


def test_gamma_terms_name_every_branch_point():
    ctx = BoseckContext(z6_tower())
    terms = ctx.gamma_terms(0, 1)
    assert [point for point, _ in terms] == ["0", "inf"]
    assert sum(value for _, value in terms) == 2


def test_nu_on_tame_point_rejected():
    ctx = BoseckContext(z6_tower())
    with pytest.raises(ValueError):
        ctx.nu("inf", 0)
    with pytest.raises(ValueError):
        ctx.gamma(4, 0)


def test_inconsistent_wild_data_rejected():
    # delta = 4 is too small for the jump 7
    tower = TowerData(
        group=GroupSpec(p=5, ell=1, n=1),
        branch_points=[BranchPoint(id="0", wild=WildData(jumps=(7,), epsilon=1, delta=4))],
    )
    with pytest.raises(TowerValidationError):
        BoseckContext(tower)
