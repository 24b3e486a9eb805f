"""
Validation, derived quantities and Riemann-Hurwitz genera for the tower
F / F^P / F^G.
"""
import logging
from math import gcd
from typing import List, Optional, Sequence

from .errors import ConsistencyError, TowerValidationError
from .models import BranchPoint, Genera, GroupSpec, TowerData, WildData

logger = logging.getLogger(__name__)


# --- derived quantities ----------------------------------------------------


def t_count(tower: TowerData) -> int:
    return len(tower.tame_points)


def s_count(tower: TowerData) -> int:
    """Number of places of F^P with wild ramification above them."""
    n = tower.group.n
    return sum(bp.places_in_fp(n) for bp in tower.wild_points)


def deg_A(tower: TowerData) -> int:
    """deg A = -sum phi_i / n; exact on validated towers."""
    total = sum(bp.tame_phi for bp in tower.branch_points)
    n = tower.group.n
    if total % n:
        raise TowerValidationError([f"sum of tame_phi = {total} is not divisible by n = {n}"])
    return -(total // n)


def wild_defect(tower: TowerData) -> int:
    """r = ell - max epsilon, and r = ell when nothing is wildly ramified."""
    eps = [bp.wild.epsilon for bp in tower.wild_points]
    return tower.group.ell - max(eps) if eps else tower.group.ell


def case2_start(tower: TowerData) -> int:
    """First k of the top range p^ell - p^r <= k <= p^ell - 1."""
    g = tower.group
    return g.p_ell - g.p ** wild_defect(tower)


def wild_index(tower: TowerData, bp: BranchPoint) -> int:
    return tower.group.p ** bp.wild.epsilon if bp.wild else 1


# --- validation --------------------------------------------------------------


def validate(tower: TowerData) -> List[str]:
    """Collect every violated constraint; an empty list means the tower is valid."""
    g = tower.group
    n, p, ell = g.n, g.p, g.ell
    violations: List[str] = []

    phi_sum = 0
    for bp in tower.branch_points:
        phi_sum += bp.tame_phi
        if bp.tame_phi >= n:
            violations.append(f"branch {bp.id}: tame_phi={bp.tame_phi} must lie in [0, n={n})")
        if n == 1 and bp.wild is None:
            violations.append(f"branch {bp.id}: n = 1 requires wild data at every branch point")
        w = bp.wild
        if w is None:
            continue
        if ell == 0:
            violations.append(f"branch {bp.id}: wild data given but ell = 0")
            continue
        if len(w.jumps) != ell:
            violations.append(f"branch {bp.id}: jumps has {len(w.jumps)} entries, expected ell = {ell}")
        for j, jump in enumerate(w.jumps, start=1):
            if jump % p == 0:
                violations.append(f"branch {bp.id}: jump Phi({bp.id},{j}) = {jump} is divisible by p = {p}")
        if not 1 <= w.epsilon <= ell:
            violations.append(f"branch {bp.id}: epsilon={w.epsilon} must lie in [1, ell={ell}]")
        elif w.delta < p**w.epsilon - 1:
            violations.append(f"branch {bp.id}: delta={w.delta} is below e - 1 = {p**w.epsilon - 1}")

    if phi_sum % n:
        violations.append(f"sum of tame_phi = {phi_sum} is not congruent to 0 mod n = {n}")

    if n > 1 and tower.base_genus == 0:
        common = gcd(n, *(bp.tame_phi for bp in tower.branch_points))
        if common > 1:
            violations.append(
                f"tame part is reducible: gcd(n, tame_phi...) = {common}; over a rational base "
                "y^n = b needs the exponents to generate Z/n"
            )

    if violations:
        return violations

    r = wild_defect(tower)
    if r > 0 and tower.base_genus == 0:
        violations.append(
            f"wild defect r = {r} needs base_genus >= 1: an unramified degree-{p**r} "
            "extension of a rational base does not exist"
        )
    if tower.genus_ErT is not None:
        expected = p**r * (tower.base_genus - 1) + 1
        if tower.genus_ErT != expected:
            violations.append(f"genus_ErT={tower.genus_ErT} disagrees with p^r (g_base - 1) + 1 = {expected}")

    eps = {bp.wild.epsilon for bp in tower.wild_points}
    if len(eps) > 1:
        logger.warning(f"heterogeneous wild indices epsilon={sorted(eps)}; top-range formulas use r = {r}")

    for label, compute in (("g_FP", _twice_genus_FP), ("g_F", _twice_genus_F)):
        twice = compute(tower)
        if twice % 2 or twice < -2:
            violations.append(f"Riemann-Hurwitz gives 2{label} - 2 = {twice}, not a genus")
    return violations


def ensure_valid(tower: TowerData) -> TowerData:
    violations = validate(tower)
    if violations:
        raise TowerValidationError(violations)
    return tower


# --- genera ------------------------------------------------------------------


def _twice_genus_FP(tower: TowerData) -> int:
    n = tower.group.n
    different = sum(n - n // bp.e_prime(n) for bp in tower.tame_points)
    return n * (2 * tower.base_genus - 2) + different


def _twice_genus_F(tower: TowerData) -> int:
    g = tower.group
    different = 0
    for bp in tower.wild_points:
        different += bp.places_in_fp(g.n) * (g.p_ell // wild_index(tower, bp)) * bp.wild.delta
    return g.p_ell * _twice_genus_FP(tower) + different


def _genus_from_twice(twice: int, label: str) -> int:
    if twice % 2 or twice < -2:
        raise ConsistencyError(f"non-integral or negative genus {label}: 2g - 2 = {twice}")
    return twice // 2 + 1


def genus_FP(tower: TowerData) -> int:
    return _genus_from_twice(_twice_genus_FP(tower), "g_FP")


def genus_F(tower: TowerData) -> int:
    return _genus_from_twice(_twice_genus_F(tower), "g_F")


def genus_ErT(tower: TowerData) -> int:
    """Genus of the unramified degree p^r extension E_r^T of F^G."""
    if tower.genus_ErT is not None:
        return tower.genus_ErT
    r = wild_defect(tower)
    return tower.group.p**r * (tower.base_genus - 1) + 1


def genera(tower: TowerData) -> Genera:
    return Genera(
        g_base=tower.base_genus,
        g_FP=genus_FP(tower),
        g_F=genus_F(tower),
        g_ErT=genus_ErT(tower),
    )


# --- constructors ------------------------------------------------------------


def lower_jumps_from_upper(p: int, upper: Sequence[int]) -> List[int]:
    """b_1 = u_1, b_j = b_{j-1} + p^{j-1} (u_j - u_{j-1})."""
    lower: List[int] = []
    for j, u in enumerate(upper):
        lower.append(u if j == 0 else lower[-1] + p**j * (u - upper[j - 1]))
    return lower


def hilbert_different(p: int, lower_jumps: Sequence[int]) -> int:
    """Different exponent of a totally ramified cyclic p^ell extension with the given lower jumps."""
    ell = len(lower_jumps)
    return (p - 1) * sum((b + 1) * p ** (ell - j) for j, b in enumerate(lower_jumps, start=1))


def totally_wild(p: int, jumps: Sequence[int], delta: Optional[int] = None) -> WildData:
    """WildData with e = p^ell; delta defaults to the Hilbert different of the jumps."""
    jumps = tuple(jumps)
    return WildData(
        jumps=jumps,
        epsilon=len(jumps),
        delta=hilbert_different(p, jumps) if delta is None else delta,
    )


def from_artin_schreier(
    p: int,
    m: int,
    n: int = 1,
    tame_phi: int = 0,
    base_genus: int = 0,
    kummer_exponent: int = 1,
    extra_points: Sequence[BranchPoint] = (),
) -> TowerData:
    """
    Tower of y^p - y = 1/x^m (Z/p, one wild point with delta = (m+1)(p-1)),
    optionally composed with a tame part of order n.
    """
    group = GroupSpec(p=p, ell=1, n=n, kummer_exponent=kummer_exponent if n > 1 else 1)
    point = BranchPoint(id="0", tame_phi=tame_phi, wild=totally_wild(p, (m,)))
    return ensure_valid(
        TowerData(group=group, base_genus=base_genus, branch_points=[point, *extra_points])
    )
