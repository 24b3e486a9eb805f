from collections import Counter

import pytest

from src.errors import ActionSpanError
from src.exactmath.linalg import Matrix
from src.models import BranchPoint, CurveSpec, GroupSpec, KummerRoot, PoleTerm, TowerData, WildData
from src.oracle.action import action_matrix
from src.oracle.basis import build_basis, describe_block
from src.oracle.compare import default_place
from src.oracle.gaps import gaps_oracle
from src.oracle.jordan import jordan_table, order_check, restriction_sizes, wild_power_sizes
from src.oracle.places import CurveModel, choose_field, model_places, tower_from_curve
from src.oracle.verify import verify
from src.orchestrator import build_oracle_pipeline
from src.ramdata import from_artin_schreier
from src.sweep import LCG, random_curve_spec, run_sweep


def artin_schreier_spec() -> CurveSpec:
    return CurveSpec(group=GroupSpec(p=5, ell=1), f_terms=[PoleTerm(root=0, order=3)])


def z6_spec() -> CurveSpec:
    return CurveSpec(
        group=GroupSpec(p=3, ell=1, n=2),
        b_roots=[KummerRoot(root=0, phi=1)],
        f_terms=[PoleTerm(root=0, order=1)],
    )


def tame_elliptic_spec() -> CurveSpec:
    return CurveSpec(group=GroupSpec(p=7, ell=0, n=3), b_roots=[KummerRoot(root=0, phi=1), KummerRoot(root=1, phi=1)])


def pipeline_parts(spec: CurveSpec):
    model = CurveModel(spec)
    places = model_places(model)
    basis = build_basis(model, places)
    return model, places, basis


def test_artin_schreier_places():
    model, places, _ = pipeline_parts(artin_schreier_spec())
    assert model.field.q == 5
    assert [p.label for p in places] == ["0", "inf"]
    zero, inf = places
    assert (zero.ramification_index, zero.v_z, zero.different, zero.v_dx) == (5, -3, 16, 16)
    assert (inf.ramification_index, inf.v_dx) == (1, -2)


def test_artin_schreier_basis_action_and_gaps():
    model, places, basis = pipeline_parts(artin_schreier_spec())
    assert basis.dimension == 4
    assert [(b.k, b.size) for b in basis.blocks] == [(0, 2), (1, 1), (2, 1)]
    matrix = action_matrix(model, basis)
    assert order_check(matrix, model.group)
    assert jordan_table(matrix, model.group, model.zeta) == {(0, 1): 1, (0, 3): 1}
    assert dict(restriction_sizes(matrix, model.group)) == {1: 1, 3: 1}
    assert gaps_oracle(model, places, basis, "0") == [1, 2, 4, 7]


def test_artin_schreier_invariant_differentials():
    # dx/x^2 and dx/x^3 span the sigma-invariants
    model, _, basis = pipeline_parts(artin_schreier_spec())
    first = basis.blocks[0]
    assert first.k == 0
    assert first.denominator == model.ring.x_power(3)
    matrix = action_matrix(model, basis)
    fixed = matrix.sub(Matrix.identity(model.field, matrix.nrows)).nullity()
    assert fixed == 2


def test_tower_from_curve_matches_constructor():
    assert tower_from_curve(artin_schreier_spec()) == from_artin_schreier(5, 3)


def test_z6_places_and_basis():
    model, places, basis = pipeline_parts(z6_spec())
    zero, inf = places
    assert (zero.ramification_index, zero.v_y, zero.v_z, zero.v_dx) == (6, 3, -2, 9)
    assert (inf.tame_index, inf.v_y, inf.v_dx) == (2, -1, -3)
    # dx / (x y)
    assert len(basis.blocks) == 1
    block = basis.blocks[0]
    assert (block.a, block.k, block.lam, block.size) == (1, 0, 1, 1)
    assert block.denominator == model.ring.linear(0)
    matrix = action_matrix(model, basis)
    assert matrix.rows == [[model.field.neg(1)]]
    assert jordan_table(matrix, model.group, model.zeta) == {(1, 1): 1}
    assert gaps_oracle(model, places, basis, "0") == [1]
    assert "y^-1" in describe_block(model, block)


def test_tame_elliptic_oracle():
    model, places, basis = pipeline_parts(tame_elliptic_spec())
    assert model.field.q == 7
    assert basis.dimension == 1
    block = basis.blocks[0]
    assert (block.a, block.lam) == (2, 1)
    matrix = action_matrix(model, basis)
    assert jordan_table(matrix, model.group, model.zeta) == {(1, 1): 1}
    assert gaps_oracle(model, places, basis, "0") == [1]


@pytest.mark.parametrize("spec", [artin_schreier_spec(), z6_spec(), tame_elliptic_spec()])
def test_verify_passes_on_known_curves(spec):
    report = verify(spec)
    assert report.passed, report.lines()
    assert report.dimension == report.genus


def test_corrupted_delta_is_reported():
    declared = TowerData(
        group=GroupSpec(p=5, ell=1),
        branch_points=[BranchPoint(id="0", wild=WildData(jumps=(3,), epsilon=1, delta=18))],
    )
    report = verify(artin_schreier_spec(), tower=declared)
    assert not report.passed
    failed = {c.name: c.detail for c in report.comparisons if not c.passed}
    assert "genus" in failed
    assert "lambda=0, k=1" in failed["decomposition"]


def test_pipeline_runs_every_stage():
    report = build_oracle_pipeline().invoke({"spec": z6_spec(), "session_id": "test"})
    names = [c.name for c in report.comparisons]
    assert names[:2] == ["genus", "decomposition"]
    assert "gap_classes" in names and "full_gaps" in names
    assert report.gaps == [1]


def test_default_place_prefers_total_ramification():
    spec = tame_elliptic_spec()
    places = model_places(CurveModel(spec))
    assert default_place(spec, places) == "0"
    assert default_place(artin_schreier_spec(), model_places(CurveModel(artin_schreier_spec()))) == "0"


def test_curve_spec_validation():
    with pytest.raises(Exception):
        CurveSpec(group=GroupSpec(p=5, ell=1), f_terms=[PoleTerm(root=0, order=5)])
    with pytest.raises(Exception):
        # y^2 = x^2 is reducible
        CurveSpec(group=GroupSpec(p=3, ell=0, n=2), b_roots=[KummerRoot(root=0, phi=2)])
    with pytest.raises(Exception):
        CurveSpec(group=GroupSpec(p=5, ell=1))
    with pytest.raises(ValueError):
        choose_field(CurveSpec(group=GroupSpec(p=5, ell=1), q=5, f_terms=[PoleTerm(root=7, order=3)]))


def test_action_rejects_inconsistent_basis():
    model, _, basis = pipeline_parts(artin_schreier_spec())
    truncated = basis.model_copy(update={"blocks": basis.blocks[1:]})
    with pytest.raises(ActionSpanError):
        action_matrix(model, truncated)


def test_random_curves_are_well_formed():
    rng = LCG(7)
    for _ in range(20):
        spec = random_curve_spec(rng)
        assert spec.place in {str(x) for x in spec.x_values}
        model = CurveModel(spec)
        totally = [p for p in model_places(model) if p.ramification_index == spec.group.order]
        assert any(p.label == spec.place for p in totally)


def test_seeded_sweep_passes():
    reports = run_sweep(seed=42, count=100)
    assert len(reports) == 100
    failed = [line for r in reports for line in r.lines() if line.startswith("FAIL")]
    assert failed == []
    assert all(any(c.name == "wild_power" for c in r.comparisons) for r in reports)


def test_sigma_power_acts_trivially():
    model, _, basis = pipeline_parts(artin_schreier_spec())
    matrix = action_matrix(model, basis)
    assert not matrix.is_identity()
    assert matrix.pow(5).is_identity()
    assert wild_power_sizes(matrix, model.group, model.zeta) == {0: Counter({1: 4})}


def test_wild_power_on_tame_eigenspaces():
    model, _, basis = pipeline_parts(z6_spec())
    matrix = action_matrix(model, basis)
    # M^3 = tau^3 acts by zeta^3 = -1 on the lambda = 1 line
    assert wild_power_sizes(matrix, model.group, model.zeta) == {0: Counter(), 1: Counter({1: 1})}
    report = verify(z6_spec())
    assert next(c for c in report.comparisons if c.name == "wild_power").passed
