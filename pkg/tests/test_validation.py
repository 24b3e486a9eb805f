import pytest
from src.models import (
    BranchPoint,
    Comparison,
    Descriptors,
    GapProfile,
    GroupSpec,
    OracleReport,
    TowerData,
    WildData,
)


def test_group_spec_valid():
    data = {"p": 3, "ell": 1, "n": 2, "kummer_exponent": 1}
    group = GroupSpec.model_validate(data)
    assert group.p_ell == 3
    assert group.order == 6
    assert group.r_act == 1


@pytest.mark.parametrize(
    "bad_data",
    [
        # p is not prime
        {"p": 6, "ell": 1},
        # tame part not prime to p
        {"p": 3, "ell": 1, "n": 3},
        # action exponent out of range
        {"p": 5, "ell": 0, "n": 2, "kummer_exponent": 2},
        # negative exponent
        {"p": 5, "ell": -1},
    ],
)
def test_group_spec_invalid(bad_data):
    with pytest.raises(Exception):
        GroupSpec.model_validate(bad_data)


@pytest.mark.parametrize(
    "bad_data",
    [
        # unramified point
        {"id": "0", "tame_phi": 0},
        # empty id
        {"id": "", "tame_phi": 1},
        # non-positive jump
        {"id": "0", "wild": {"jumps": [0], "epsilon": 1, "delta": 4}},
    ],
)
def test_branch_point_invalid(bad_data):
    with pytest.raises(Exception):
        BranchPoint.model_validate(bad_data)


def test_tower_rejects_duplicate_ids():
    with pytest.raises(Exception):
        TowerData(
            group=GroupSpec(p=5, ell=1),
            branch_points=[
                BranchPoint(id="0", wild=WildData(jumps=(3,), epsilon=1, delta=16)),
                BranchPoint(id="0", wild=WildData(jumps=(1,), epsilon=1, delta=8)),
            ],
        )


def test_branch_point_tame_data():
    bp = BranchPoint(id="0", tame_phi=2)
    assert bp.e_prime(4) == 2
    assert bp.big_phi(4) == 1
    assert bp.places_in_fp(4) == 2


def test_descriptors_must_satisfy_b_equals_nu_d_plus_i():
    with pytest.raises(Exception):
        Descriptors.model_validate({"d": 5, "entries": [{"i": 1, "b": 7, "nu": 1}]})


def test_gap_profile_counts():
    profile = GapProfile(place="0", n=2, p_ell=3, classes={(1, 1): 1, (1, 2): 2, (0, 1): 1})
    assert profile.d == 6
    assert profile.total == 4
    assert profile.tame_gap_counts() == [1, 3]


def test_oracle_report_lines():
    report = OracleReport(
        spec_hash="abc",
        genus=1,
        dimension=1,
        comparisons=[
            Comparison(name="genus", passed=True),
            Comparison(name="decomposition", passed=False, detail="(lambda=1, k=1): oracle 1, formula 0"),
        ],
    )
    assert not report.passed
    assert report.lines() == [
        "PASS abc genus",
        "FAIL abc decomposition: (lambda=1, k=1): oracle 1, formula 0",
    ]
