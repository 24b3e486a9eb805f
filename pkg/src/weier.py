"""
Weierstrass gaps at a totally ramified point and numerical semigroup helpers.

A differential vanishing to order x at the point witnesses the gap x + 1.
"""
import logging
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from sympy.ntheory.modular import crt

from .boseck import BoseckContext
from .decomp import DecompositionEngine
from .errors import ConsistencyError
from .models import BranchPoint, DecompositionTable, Descriptor, Descriptors, GapProfile, Semigroup, TowerData
from .ramdata import genus_F

logger = logging.getLogger(__name__)


class PlaceNotTotallyRamified(ValueError):
    pass


def is_totally_ramified(tower: TowerData, bp: BranchPoint) -> bool:
    g = tower.group
    tame_ok = bp.e_prime(g.n) == g.n
    if g.ell == 0:
        return tame_ok and g.n > 1
    return tame_ok and bp.wild is not None and bp.wild.epsilon == g.ell


class GapEngine:
    """Gap bookkeeping at one totally ramified branch point."""

    def __init__(self, tower: TowerData, place: str, table: Optional[DecompositionTable] = None):
        self.engine = DecompositionEngine(tower)
        self.ctx: BoseckContext = self.engine.ctx
        self.tower = self.engine.tower
        self.bp = self.tower.point(place)
        if not is_totally_ramified(self.tower, self.bp):
            raise PlaceNotTotallyRamified(
                f"branch point {place!r} is not totally ramified (e = n p^ell = {self.tower.group.order} is required)"
            )
        self.table = table
        self.n = self.ctx.n
        self.p_ell = self.ctx.p_ell

    @property
    def place(self) -> str:
        return self.bp.id

    def _local_value(self, k: int) -> int:
        """delta + v(w_k), with delta = 0 when the p-part is trivial."""
        if self.bp.wild is None:
            return 0
        return self.bp.wild.delta + self.ctx.w_valuation(self.bp.id, k)

    def r_remainder(self, k: int) -> int:
        if not 0 <= k < self.p_ell:
            raise ValueError(f"k={k} out of range [0, {self.p_ell})")
        return self._local_value(k) % self.p_ell

    def nu(self, k: int) -> int:
        return self.ctx.nu(self.bp.id, k) if self.bp.wild is not None else 0

    def psi(self, a: int) -> int:
        """The unique k with r_remainder(k) = a."""
        for k in range(self.p_ell):
            if self.r_remainder(k) == a:
                return k
        raise ConsistencyError(f"no k with r = {a}: the remainders do not form a full residue system")

    def c_value(self, lam: int, k: int) -> int:
        if self.table is None:
            return self.engine.c_value(lam, k)
        return sum(d for (l2, j), d in self.table.multiplicities.items() if l2 == lam and j >= k + 1)

    def gap_class_of(self, lam: int, k: int) -> Tuple[int, int]:
        """(a mod n, a mod p^ell) for the gaps a witnessed by the (lambda, k) graded piece."""
        n, p_ell = self.n, self.p_ell
        r = self.r_remainder(k)
        twist = self.ctx.alpha(lam) * self.bp.tame_phi - 1 + self.nu(k)
        x_mod_n = (p_ell * twist + r) % n
        x = int(crt([n, p_ell], [x_mod_n, r])[0]) if n > 1 and p_ell > 1 else (x_mod_n if p_ell == 1 else r)
        a = x + 1
        return a % n, a % p_ell

    def gap_classes(self) -> GapProfile:
        classes: Dict[Tuple[int, int], int] = {}
        owner: Dict[Tuple[int, int], Tuple[int, int]] = {}
        for lam in range(self.n):
            for k in range(self.p_ell):
                cls = self.gap_class_of(lam, k)
                if cls in owner:
                    raise ConsistencyError(f"gap class {cls} already taken by {owner[cls]}", label=(lam, k))
                owner[cls] = (lam, k)
                count = self.c_value(lam, k)
                if count:
                    classes[cls] = count
        profile = GapProfile(place=self.place, n=self.n, p_ell=self.p_ell, classes=classes)
        g_F = genus_F(self.tower)
        if profile.total != g_F:
            raise ConsistencyError(f"gap classes hold {profile.total} gaps but g_F = {g_F}")
        return profile

    def full_gaps(self, profile: Optional[GapProfile] = None) -> List[int]:
        if self.tower.base_genus != 0:
            raise ValueError("full enumeration unavailable for base_genus > 0; use gap_classes")
        profile = profile or self.gap_classes()
        d = profile.d
        gaps: List[int] = []
        for (i0, i1), count in profile.classes.items():
            if (i0, i1) == (0, 0):
                raise ConsistencyError(f"{count} gaps claimed in the class of the pole number {d}")
            if self.n > 1 and self.p_ell > 1:
                first = int(crt([self.n, self.p_ell], [i0, i1])[0]) % d
            else:
                first = i1 if self.n == 1 else i0
            gaps.extend(first + d * j for j in range(count))
        gaps.sort()
        if len(gaps) != genus_F(self.tower):
            raise ConsistencyError(f"{len(gaps)} gaps enumerated but g_F = {genus_F(self.tower)}")
        return gaps

    def small_gaps(self) -> List[int]:
        if self.n != 1 or self.tower.base_genus != 0:
            raise ValueError("small gaps need n = 1 and base_genus = 0")
        gaps = set()
        for k in range(self.p_ell - 1):
            if self.ctx.gamma(k, 0) >= 2:
                gap = self.r_remainder(k) + 1
                if gap >= self.p_ell:
                    raise ConsistencyError(f"small gap {gap} is not below p^ell = {self.p_ell}", label=(0, k))
                gaps.add(gap)
        return sorted(gaps)

    def profile(self) -> GapProfile:
        profile = self.gap_classes()
        if self.tower.base_genus == 0:
            profile.full_gaps = self.full_gaps(profile)
            if self.n == 1:
                profile.small_gaps = self.small_gaps()
        return profile


def gap_classes(tower: TowerData, place: str, table: Optional[DecompositionTable] = None) -> GapProfile:
    return GapEngine(tower, place, table).gap_classes()


def full_gaps(tower: TowerData, place: str) -> List[int]:
    return GapEngine(tower, place).full_gaps()


def small_gaps(tower: TowerData, place: str) -> List[int]:
    return GapEngine(tower, place).small_gaps()


def tame_gap_counts(profile: GapProfile) -> List[int]:
    return profile.tame_gap_counts()


# --- numerical semigroups ----------------------------------------------------


def _safe_bound(gens: Sequence[int]) -> int:
    """Frobenius number < (min - 1)(max - 1) for generators with gcd 1."""
    return max(gens[0] * gens[-1], 1)


def semigroup_gaps(generators: Sequence[int], bound: Optional[int] = None) -> List[int]:
    gens = sorted(set(generators))
    if not gens or any(g <= 0 for g in gens):
        raise ValueError("generators must be positive integers")
    if reduce(gcd, gens) != 1:
        raise ValueError(f"gcd of {gens} is not 1: the gap set is infinite")
    if bound is None:
        bound = _safe_bound(gens)
    elif bound < (gens[0] - 1) * (gens[-1] - 1):
        raise ValueError(f"bound={bound} may cut off gaps; use at least {(gens[0] - 1) * (gens[-1] - 1)}")
    member = [False] * (bound + 1)
    member[0] = True
    for x in range(1, bound + 1):
        member[x] = any(x >= g and member[x - g] for g in gens)
    return [x for x in range(1, bound + 1) if not member[x]]


def semigroup(generators: Sequence[int], bound: Optional[int] = None) -> Semigroup:
    gens = tuple(sorted(set(generators)))
    gaps = semigroup_gaps(gens, bound)
    return Semigroup(generators=gens, bound=bound if bound is not None else _safe_bound(gens), gaps=gaps)


def frobenius_number(gaps: Iterable[int]) -> int:
    gaps = list(gaps)
    return max(gaps) if gaps else -1


def descriptors(gaps: Iterable[int], d: Optional[int] = None) -> Descriptors:
    """b_i = least semigroup element congruent to i mod d, nu_i = (b_i - i) / d."""
    gap_set: Set[int] = set(gaps)
    if d is None:
        d = next(x for x in range(1, max(gap_set, default=0) + 2) if x not in gap_set)
    if d in gap_set:
        raise ValueError(f"d={d} is a gap, not a semigroup element")
    entries = []
    for i in range(1, d):
        b = i
        while b in gap_set:
            b += d
        nu = (b - i) // d
        in_class = sum(1 for x in gap_set if x % d == i)
        if nu != in_class:
            raise ConsistencyError(f"nu_{i} = {nu} but {in_class} gaps are congruent to {i} mod {d}")
        entries.append(Descriptor(i=i, b=b, nu=nu))
    return Descriptors(d=d, entries=entries)
