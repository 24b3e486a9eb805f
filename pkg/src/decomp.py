"""
Filtration dimensions c(lambda, k), multiplicities d(lambda, k) and the
decomposition V = (+) V(lambda, k)^d(lambda, k) of the holomorphic
differentials.
"""
import hashlib
import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from .boseck import BoseckContext
from .errors import ConsistencyError
from .exactmath.rational import floor
from .models import DecompositionTable, DivisorSketch, TowerData
from .ramdata import deg_A, genera, genus_ErT, genus_F
from .tracing import log_result_summary, traced_operation

logger = logging.getLogger(__name__)


def tower_hash(tower: TowerData) -> str:
    return hashlib.sha256(tower.model_dump_json().encode("utf-8")).hexdigest()[:12]


class DecompositionEngine:
    """Closed-form engine over one validated tower."""

    def __init__(self, tower: TowerData):
        self.ctx = BoseckContext(tower)
        self.tower = self.ctx.tower
        self.n = self.ctx.n
        self.p_ell = self.ctx.p_ell
        self.g_base = tower.base_genus
        self.g_ErT = genus_ErT(tower)
        self._deg_A = deg_A(tower)
        self._c_cache: Dict[Tuple[int, int], int] = {}

    # --- twisting divisor E_{k,lambda} -----------------------------------

    def _check_case1(self, k: int) -> None:
        if not 0 <= k < self.ctx.case2_start:
            raise ValueError(f"k={k} is outside the range 0 <= k < {self.ctx.case2_start}")

    def divisor_sketch(self, k: int, lam: int) -> DivisorSketch:
        """Coefficients of E_{k,lambda} at each branch point before and after taking floors."""
        a = self.ctx.alpha(lam)
        n = self.n
        rational: List[Tuple[str, str]] = []
        reduced: List[Tuple[str, int]] = []
        for bp in self.tower.branch_points:
            e = bp.e_prime(n)
            nu = self.ctx.local_nu(bp, k)
            coeff = Fraction(a * bp.tame_phi, n) + Fraction(e - 1 + nu, e)
            rational.append((bp.id, str(coeff)))
            reduced.append((bp.id, floor(coeff)))
        return DivisorSketch(k=k, lam=lam, alpha_deg_A=a * self._deg_A, rational=rational, reduced=reduced)

    def deg_E(self, k: int, lam: int) -> int:
        self._check_case1(k)
        return self.divisor_sketch(k, lam).degree

    def lambda_indicator(self, k: int, lam: int) -> int:
        """ell(-E_{k,lambda}): 1 exactly when E_{k,lambda} = 0, which needs lambda = 0."""
        return 1 if lam == 0 and self.ctx.gamma(k, lam) == 0 else 0

    # --- c and d ---------------------------------------------------------

    def _top_quotient(self) -> int:
        pr = self.ctx.p ** self.ctx.r
        if (self.g_ErT - 1) % pr:
            raise ConsistencyError(f"inconsistent genus_ErT: {self.g_ErT} - 1 is not divisible by p^r = {pr}")
        return (self.g_ErT - 1) // pr

    def c_value(self, lam: int, k: int) -> int:
        if not 0 <= k < self.p_ell:
            raise ValueError(f"k={k} out of range [0, {self.p_ell})")
        key = (lam, k)
        if key in self._c_cache:
            return self._c_cache[key]
        if k < self.ctx.case2_start:
            c = self.g_base - 1 + self.ctx.gamma(k, lam) + self.lambda_indicator(k, lam)
        elif k == self.ctx.case2_start and lam == 0:
            c = self.g_base
        else:
            c = self._top_quotient() + self.ctx.tame_gamma(lam)
        if c < 0:
            raise ConsistencyError(f"negative filtration dimension c = {c}", label=key)
        self._c_cache[key] = c
        return c

    def c_table(self, lam: int) -> List[int]:
        return [self.c_value(lam, k) for k in range(self.p_ell)]

    def _closed_form_d(self, lam: int, k: int) -> int:
        ctx = self.ctx
        start = ctx.case2_start
        if k == self.p_ell:
            if ctx.r == 0:
                return self.g_base - 1 + ctx.tame_gamma(lam) + self.lambda_indicator(k, lam)
            return self._top_quotient() + ctx.tame_gamma(lam)
        if k < start:
            return (
                ctx.gamma(k - 1, lam) - ctx.gamma(k, lam)
                + self.lambda_indicator(k - 1, lam) - self.lambda_indicator(k, lam)
            )
        if k == start:
            before = ctx.gamma(k - 1, lam) + self.lambda_indicator(k - 1, lam)
            if lam == 0:
                return before - 1
            return before + self.g_base - 1 - self._top_quotient() - ctx.tame_gamma(lam)
        return 1 if (k == start + 1 and lam == 0) else 0

    def d_value(self, lam: int, k: int) -> int:
        if not 1 <= k <= self.p_ell:
            raise ValueError(f"k={k} out of range [1, {self.p_ell}]")
        if k == self.p_ell:
            d = self.c_value(lam, k - 1)
        else:
            d = self.c_value(lam, k - 1) - self.c_value(lam, k)
        if d < 0:
            raise ConsistencyError(f"negative multiplicity d = {d}", label=(lam, k))
        closed = self._closed_form_d(lam, k)
        if closed != d:
            raise ConsistencyError(f"c-difference gives d = {d} but the closed form gives {closed}", label=(lam, k))
        return d

    def d_star(self, lam: int, k: int) -> int:
        """
        d*(lambda, p^ell) = g_base - 1 + Gamma_lambda, d*(0, 1) = 1 and zero elsewhere.

        F^T / F^G is unramified of degree p^ell here, so (g_FT - 1)/p^ell = g_base - 1.
        """
        if self.tower.wild_points:
            raise ValueError("d_star needs a tower without wild ramification")
        if not 1 <= k <= self.p_ell:
            raise ValueError(f"k={k} out of range [1, {self.p_ell}]")
        d = 0
        if k == self.p_ell:
            d += self.g_base - 1 + self.ctx.tame_gamma(lam)
        if lam == 0 and k == 1:
            d += 1
        if d < 0:
            raise ConsistencyError(f"negative multiplicity d* = {d}", label=(lam, k))
        return d

    def regular_count(self, table: DecompositionTable) -> int:
        """Number of free summands K[G] = (+)_lambda V(lambda, p^ell) in V."""
        return min(table.d(lam, self.p_ell) for lam in range(self.n))

    # --- assembly --------------------------------------------------------

    def decompose(self) -> DecompositionTable:
        g_F = genus_F(self.tower)
        for lam in range(self.n):
            for k in range(self.ctx.case2_start):
                gamma = self.ctx.gamma(k, lam)
                deg = self.deg_E(k, lam)
                if gamma != deg:
                    raise ConsistencyError(f"Gamma = {gamma} but deg E = {deg}", label=(lam, k))
            c = self.c_table(lam)
            for k in range(len(c) - 1):
                if c[k] < c[k + 1]:
                    raise ConsistencyError(f"c is not non-increasing: c(k)={c[k]} < c(k+1)={c[k + 1]}", label=(lam, k))

        multiplicities = {
            (lam, k): self.d_value(lam, k) for lam in range(self.n) for k in range(1, self.p_ell + 1)
        }
        table = DecompositionTable(
            n=self.n,
            p_ell=self.p_ell,
            multiplicities=multiplicities,
            tower_hash=tower_hash(self.tower),
            genera=genera(self.tower),
        )
        if table.dimension != g_F:
            raise ConsistencyError(f"sum k d(lambda,k) = {table.dimension} but g_F = {g_F}")
        logger.debug(f"decomposition of {table.tower_hash}: {table.rows()}")
        return table


def decompose(tower: TowerData) -> DecompositionTable:
    with traced_operation(
        "decompose",
        {"p": tower.group.p, "ell": tower.group.ell, "n": tower.group.n},
        tower_id=tower_hash(tower),
        engine_name="DecompositionEngine",
    ) as span:
        table = DecompositionEngine(tower).decompose()
        log_result_summary(span, {"dimension": table.dimension, "modules": len(table.multiplicities)})
        return table


def d_star(tower: TowerData, lam: int, k: int) -> int:
    """Tamagawa's multiplicity d*(lambda, k) for a tower without wild ramification."""
    return DecompositionEngine(tower).d_star(lam, k)


def d_star_table(tower: TowerData) -> DecompositionTable:
    engine = DecompositionEngine(tower)
    multiplicities = {
        (lam, k): engine.d_star(lam, k) for lam in range(engine.n) for k in sorted({1, engine.p_ell})
    }
    return DecompositionTable(
        n=engine.n,
        p_ell=engine.p_ell,
        multiplicities=multiplicities,
        tower_hash=tower_hash(tower),
        genera=genera(tower),
    )
