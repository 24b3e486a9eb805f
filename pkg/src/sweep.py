"""
Reproducible random instances: explicit curves for the oracle sweep and
abstract towers for the identity checks.
"""
import logging
from math import gcd
from typing import Iterator, List, Optional, Sequence

from .config import (
    LCG_INCREMENT,
    LCG_MODULUS,
    LCG_MULTIPLIER,
    SWEEP_COUNT,
    SWEEP_MAX_BRANCH_VALUES,
    SWEEP_MAX_POLE_ORDER,
    SWEEP_ORDERS,
    SWEEP_PRIMES,
    SWEEP_SEED,
)
from .exactmath.fields import smallest_field
from .models import BranchPoint, CurveSpec, GroupSpec, KummerRoot, OracleReport, PoleTerm, TowerData
from .ramdata import ensure_valid, lower_jumps_from_upper, totally_wild

logger = logging.getLogger(__name__)


class LCG:
    """64-bit linear congruential generator; the same seed gives the same sweep on every platform."""

    def __init__(self, seed: int = SWEEP_SEED):
        self.state = seed % LCG_MODULUS

    def next(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) % LCG_MODULUS
        return self.state >> 33

    def below(self, bound: int) -> int:
        return self.next() % bound

    def between(self, low: int, high: int) -> int:
        """Uniform-ish integer in [low, high]."""
        return low + self.below(high - low + 1)

    def choice(self, items: Sequence):
        return items[self.below(len(items))]

    def sample(self, items: Sequence, count: int) -> List:
        pool = list(items)
        picked = []
        for _ in range(count):
            picked.append(pool.pop(self.below(len(pool))))
        return picked


def _pole_order(rng: LCG, p: int) -> int:
    while True:
        m = rng.between(1, SWEEP_MAX_POLE_ORDER)
        if m % p:
            return m


def _unit_phi(rng: LCG, n: int) -> int:
    while True:
        phi = rng.between(1, n - 1)
        if gcd(phi, n) == 1:
            return phi


def random_curve_spec(
    rng: LCG,
    p: Optional[int] = None,
    n: Optional[int] = None,
) -> CurveSpec:
    """
    Random explicit curve over the smallest suitable F_q.

    The first x-value is always totally ramified so that the gap checks have
    a place to run at. n = 1 forces ell = 1.
    """
    p = p if p is not None else rng.choice(SWEEP_PRIMES)
    if n is None:
        orders = [m for m in SWEEP_ORDERS if gcd(m, p) == 1]
        n = rng.choice(orders)
    if gcd(n, p) != 1:
        raise ValueError(f"n={n} must be prime to p={p}")
    ell = 1 if n == 1 else rng.below(2)
    count = rng.between(1, SWEEP_MAX_BRANCH_VALUES)
    q = smallest_field(p, n, min_size=count + 2).q
    values = rng.sample(range(q), count)

    b_roots: List[KummerRoot] = []
    f_terms: List[PoleTerm] = []
    for position, x in enumerate(values):
        first = position == 0
        if n > 1:
            phi = _unit_phi(rng, n) if first else rng.below(n)
            if phi:
                b_roots.append(KummerRoot(root=x, phi=phi))
        if ell == 1:
            wants_pole = first or not b_roots or b_roots[-1].root != x or rng.below(2)
            if wants_pole:
                f_terms.append(PoleTerm(root=x, order=_pole_order(rng, p), coeff=rng.between(1, q - 1)))
    group = GroupSpec(p=p, ell=ell, n=n, kummer_exponent=1)
    return CurveSpec(group=group, q=q, b_roots=b_roots, f_terms=f_terms, place=str(values[0]))


def generate_sweep(
    seed: int = SWEEP_SEED,
    count: int = SWEEP_COUNT,
    p: Optional[int] = None,
    n: Optional[int] = None,
) -> Iterator[CurveSpec]:
    rng = LCG(seed)
    for _ in range(count):
        yield random_curve_spec(rng, p=p, n=n)


def run_sweep(
    seed: int = SWEEP_SEED,
    count: int = SWEEP_COUNT,
    p: Optional[int] = None,
    n: Optional[int] = None,
    session_id: Optional[str] = None,
) -> List[OracleReport]:
    """Verify `count` random curves; one report per curve, failures included."""
    from .oracle.verify import verify

    reports = []
    for index, spec in enumerate(generate_sweep(seed, count, p=p, n=n)):
        report = verify(spec, session_id=session_id)
        logger.info(f"sweep {index + 1}/{count}: {report.spec_hash} {'PASS' if report.passed else 'FAIL'}")
        reports.append(report)
    return reports


def _random_jumps(rng: LCG, p: int, ell: int, scale: int) -> List[int]:
    """Lower jumps of a totally ramified Z/p^ell extension, from upper jumps u_j >= p u_{j-1}."""
    upper = [_pole_order(rng, p)]
    for _ in range(ell - 1):
        upper.append(p * upper[-1] + rng.between(1, p - 1))
    return [scale * b for b in lower_jumps_from_upper(p, upper)]


def random_tower(
    rng: LCG,
    max_p_ell: int = 27,
    max_base_genus: int = 2,
) -> TowerData:
    """
    Random valid tower with every wild point totally ramified in F / F^P.

    Jumps at tame-and-wild points are multiples of e' so that they are the
    jumps seen from F^P. Over a rational base the tame exponents always
    generate Z/n, so y^n = b stays irreducible and ramified.
    """
    p = rng.choice(SWEEP_PRIMES)
    ells = [ell for ell in (1, 2, 3) if p**ell <= max_p_ell]
    ell = rng.choice(ells)
    n = rng.choice([m for m in SWEEP_ORDERS if gcd(m, p) == 1])
    group = GroupSpec(p=p, ell=ell, n=n, kummer_exponent=_unit_phi(rng, n) if n > 1 else 1)
    base_genus = rng.between(0, max_base_genus)

    points: List[BranchPoint] = []
    for index in range(rng.between(1, 2)):
        phi = rng.below(n) if n > 1 else 0
        e_prime = n // gcd(n, phi) if phi else 1
        jumps = _random_jumps(rng, p, ell, e_prime)
        points.append(BranchPoint(id=f"w{index}", tame_phi=phi, wild=totally_wild(p, jumps)))
    if n > 1:
        for index in range(rng.below(3)):
            points.append(BranchPoint(id=f"t{index}", tame_phi=rng.between(1, n - 1)))
        if base_genus == 0 and gcd(n, *(bp.tame_phi for bp in points)) > 1:
            points.append(BranchPoint(id="t_unit", tame_phi=_unit_phi(rng, n)))
        closing = (-sum(bp.tame_phi for bp in points)) % n
        if closing:
            points.append(BranchPoint(id="t_close", tame_phi=closing))
    return ensure_valid(TowerData(group=group, base_genus=base_genus, branch_points=points))
