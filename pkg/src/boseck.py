"""
Boseck invariants Gamma_{k,lambda} and the integers they are built from.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import ConsistencyError, TowerValidationError
from .exactmath.rational import floor, frac, p_adic_digits
from .models import BranchPoint, TowerData
from .ramdata import case2_start, ensure_valid, wild_defect, wild_index

logger = logging.getLogger(__name__)


class BoseckContext:
    def __init__(self, tower: TowerData):
        self.tower = ensure_valid(tower)
        self.group = tower.group
        self.n = self.group.n
        self.p = self.group.p
        self.ell = self.group.ell
        self.p_ell = self.group.p_ell
        self.r = wild_defect(tower)
        self.case2_start = case2_start(tower)

        self._alpha: List[int] = [self._solve_alpha(lam) for lam in range(self.n)]
        self._nu: Dict[str, List[int]] = {
            bp.id: [self._compute_nu(bp, k) for k in range(self.p_ell)] for bp in tower.wild_points
        }

    def _solve_alpha(self, lam: int) -> int:
        if self.n == 1:
            return 0
        return (lam * pow(self.group.r_act, -1, self.n)) % self.n

    def _compute_nu(self, bp: BranchPoint, k: int) -> int:
        value = floor(Fraction(bp.wild.delta + self.w_valuation(bp.id, k), wild_index(self.tower, bp)))
        if value < 0:
            raise TowerValidationError(
                [f"branch {bp.id}: inconsistent wild data, nu_(k={k}) = {value} < 0 (delta too small for the jumps)"]
            )
        return value

    def _wild_point(self, point_id: str) -> BranchPoint:
        bp = self.tower.point(point_id)
        if bp.wild is None:
            raise ValueError(f"branch point {point_id!r} carries no wild data")
        return bp

    def w_valuation(self, point_id: str, k: int) -> int:
        """v(w_k) = -sum_j a_j Phi(mu, j) p^(ell - j) over the base-p digits a_j of k."""
        bp = self._wild_point(point_id)
        digits = p_adic_digits(k, self.p, self.ell)
        return -sum(a * jump * self.p ** (self.ell - j) for j, (a, jump) in enumerate(zip(digits, bp.wild.jumps), start=1))

    def nu(self, point_id: str, k: int) -> int:
        self._wild_point(point_id)
        if not 0 <= k < self.p_ell:
            raise ValueError(f"k={k} out of range [0, {self.p_ell})")
        return self._nu[point_id][k]

    def alpha(self, lam: int) -> int:
        if not 0 <= lam < self.n:
            raise ValueError(f"lambda={lam} out of range [0, {self.n})")
        return self._alpha[lam]

    def uses_nu(self, k: int) -> bool:
        """The nu-terms vanish in the top range k >= p^ell - p^r (and at k = p^ell)."""
        return k < self.case2_start

    def local_nu(self, bp: BranchPoint, k: int) -> int:
        if bp.wild is None or not self.uses_nu(k):
            return 0
        return self._nu[bp.id][k]

    def gamma_terms(self, k: int, lam: int) -> List[Tuple[str, Fraction]]:
        """Per-branch-point contributions to Gamma_{k,lambda}, in input order."""
        if not 0 <= k <= self.p_ell:
            raise ValueError(f"k={k} out of range [0, {self.p_ell}]")
        a = self.alpha(lam)
        n = self.n
        terms: List[Tuple[str, Fraction]] = []
        for bp in self.tower.branch_points:
            nu = self.local_nu(bp, k)
            if bp.tame_phi == 0:
                terms.append((bp.id, Fraction(nu)))
                continue
            e = bp.e_prime(n)
            phi = bp.big_phi(n)
            value = frac(Fraction(-a * phi, e))
            if bp.wild is not None:
                value += floor(frac(Fraction(a * phi - 1, e)) + Fraction(nu, e))
            terms.append((bp.id, value))
        return terms

    def gamma(self, k: int, lam: int) -> int:
        total = sum((v for _, v in self.gamma_terms(k, lam)), Fraction(0))
        if total.denominator != 1 or total < 0:
            raise ConsistencyError(f"Boseck invariant {total} is not a non-negative integer", label=(lam, k))
        return int(total)

    def tame_gamma(self, lam: int) -> int:
        """Gamma_lambda = sum_i <-alpha_lambda Phi_i / e'_i>."""
        return self.gamma(self.p_ell, lam)

    def gamma_table(self) -> List[List[int]]:
        """Rows k = 0..p^ell, columns lambda = 0..n-1."""
        return [[self.gamma(k, lam) for lam in range(self.n)] for k in range(self.p_ell + 1)]
