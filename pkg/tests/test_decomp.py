from math import gcd

import pytest

from src.decomp import DecompositionEngine, d_star, d_star_table, decompose, tower_hash
from src.models import BranchPoint, DecompositionTable, GroupSpec, ModuleLabel, TowerData
from src.ramdata import from_artin_schreier, genus_F, totally_wild
from src.sweep import LCG, random_tower


def z6_tower() -> TowerData:
    return TowerData(
        group=GroupSpec(p=3, ell=1, n=2),
        branch_points=[
            BranchPoint(id="0", tame_phi=1, wild=totally_wild(3, (2,))),
            BranchPoint(id="inf", tame_phi=1),
        ],
    )


def tame_elliptic_tower() -> TowerData:
    return TowerData(
        group=GroupSpec(p=7, ell=0, n=3),
        branch_points=[BranchPoint(id=i, tame_phi=1) for i in ("0", "1", "inf")],
    )


def test_artin_schreier_decomposition():
    tower = from_artin_schreier(5, 3)
    engine = DecompositionEngine(tower)
    assert engine.c_table(0) == [2, 1, 1, 0, 0]
    table = decompose(tower)
    assert table.multiplicities == {(0, 1): 1, (0, 3): 1}
    assert table.rows() == [(0, 1, 1), (0, 3, 1)]
    assert table.dimension == 4
    assert table.genera.g_F == 4
    assert engine.regular_count(table) == 0


def test_z6_decomposition():
    table = decompose(z6_tower())
    assert table.multiplicities == {(1, 1): 1}
    assert table.tower_hash == tower_hash(z6_tower())


def test_tame_elliptic_matches_tamagawa():
    tower = tame_elliptic_tower()
    assert decompose(tower).multiplicities == {(1, 1): 1}
    assert d_star_table(tower).multiplicities == {(1, 1): 1}
    assert [d_star(tower, lam, 1) for lam in range(3)] == [0, 1, 0]


def test_unramified_cover_is_free_plus_trivial():
    tower = TowerData(group=GroupSpec(p=3, ell=1, n=1), base_genus=2)
    table = decompose(tower)
    assert table.multiplicities == {(0, 1): 1, (0, 3): 1}
    assert d_star_table(tower).multiplicities == table.multiplicities
    # d(p^ell) = g - 1 when r != 0
    assert DecompositionEngine(tower).regular_count(table) == 1


@pytest.mark.parametrize("base_genus", [0, 1, 3])
def test_regular_count_without_defect(base_genus):
    tower = from_artin_schreier(5, 3, base_genus=base_genus)
    table = decompose(tower)
    # d(p^ell) = g when every wild point is totally ramified
    assert DecompositionEngine(tower).regular_count(table) == base_genus


def test_divisor_sketch_degree_equals_gamma():
    engine = DecompositionEngine(z6_tower())
    for lam in range(2):
        for k in range(engine.ctx.case2_start):
            sketch = engine.divisor_sketch(k, lam)
            assert sketch.degree == engine.ctx.gamma(k, lam)
            assert [point for point, _ in sketch.reduced] == ["0", "inf"]


def test_deg_E_outside_first_range():
    engine = DecompositionEngine(from_artin_schreier(5, 3))
    with pytest.raises(ValueError):
        engine.deg_E(4, 0)


def test_d_star_rejects_wild_towers():
    with pytest.raises(ValueError):
        d_star(z6_tower(), 1, 1)


def test_table_drops_zeros_and_rejects_negatives():
    table = DecompositionTable(n=1, p_ell=5, multiplicities={(0, 1): 1, (0, 2): 0})
    assert table.multiplicities == {(0, 1): 1}
    assert table.d(0, 2) == 0
    with pytest.raises(Exception):
        DecompositionTable(n=1, p_ell=5, multiplicities={(0, 1): -1})


def test_identities_on_random_towers():
    rng = LCG(2024)
    seen_ell = set()
    rational_tame = 0
    for _ in range(500):
        tower = random_tower(rng)
        seen_ell.add(tower.group.ell)
        if tower.base_genus == 0 and tower.group.n > 1:
            rational_tame += 1
            assert gcd(tower.group.n, *(bp.tame_phi for bp in tower.branch_points)) == 1
            assert tower.tame_points
        engine = DecompositionEngine(tower)
        table = engine.decompose()
        assert table.dimension == genus_F(tower)
        for lam in range(engine.n):
            for k in range(engine.ctx.case2_start):
                assert engine.deg_E(k, lam) == engine.ctx.gamma(k, lam)
            c = engine.c_table(lam)
            assert all(c[k] >= c[k + 1] for k in range(len(c) - 1))
    assert {2, 3} <= seen_ell
    assert rational_tame > 0


def test_d_star_values_on_unramified_cover():
    tower = TowerData(group=GroupSpec(p=3, ell=1, n=1), base_genus=2)
    assert [d_star(tower, 0, k) for k in (1, 2, 3)] == [1, 0, 1]
    with pytest.raises(ValueError):
        d_star(tower, 0, 4)


def test_summands_are_labelled_modules():
    table = decompose(from_artin_schreier(5, 3))
    assert table.summands() == [(ModuleLabel(lam=0, k=1), 1), (ModuleLabel(lam=0, k=3), 1)]
    assert table.module_string() == "V(0,1) + V(0,3)"
    doubled = DecompositionTable(n=2, p_ell=1, multiplicities={(1, 1): 2})
    assert doubled.module_string() == "V(1,1)^2"
    assert DecompositionTable(n=1, p_ell=1).module_string() == "0"
