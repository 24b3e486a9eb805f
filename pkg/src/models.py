from math import gcd
from typing import Dict, List, Optional, Tuple

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class GroupSpec(BaseModel):
    """The cyclic group Z/(n p^ell) with its tame/wild split."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=2, description="Characteristic")
    ell: int = Field(0, ge=0, description="Exponent of the wild part p^ell")
    n: int = Field(1, ge=1, description="Order of the tame part")
    kummer_exponent: int = Field(1, ge=0, description="r_act with tau y = zeta_n^r_act y")

    @field_validator("p")
    @classmethod
    def p_is_prime(cls, v: int) -> int:
        if not sympy.isprime(v):
            raise ValueError(f"p must be prime, got {v}")
        return v

    @model_validator(mode="after")
    def tame_part_coprime(self) -> "GroupSpec":
        if gcd(self.n, self.p) != 1:
            raise ValueError(f"gcd(n, p) must be 1, got n={self.n}, p={self.p}")
        if self.n > 1 and not 1 <= self.kummer_exponent < self.n:
            raise ValueError(f"kummer_exponent must lie in [1, n), got {self.kummer_exponent}")
        if gcd(self.kummer_exponent, self.n) != 1:
            raise ValueError("kummer_exponent must be prime to n")
        return self

    @property
    def p_ell(self) -> int:
        return self.p**self.ell

    @property
    def order(self) -> int:
        return self.n * self.p_ell

    @property
    def r_act(self) -> int:
        return self.kummer_exponent % self.n


class WildData(BaseModel):
    model_config = ConfigDict(frozen=True)

    jumps: Tuple[int, ...] = Field(..., description="Phi(mu, 1..ell), each prime to p")
    epsilon: int = Field(..., ge=1, description="e_mu = p^epsilon")
    delta: int = Field(..., ge=0, description="Different exponent at each place above")

    @field_validator("jumps")
    @classmethod
    def jumps_positive(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v or any(j <= 0 for j in v):
            raise ValueError("jumps must be a non-empty list of positive integers")
        return v


class BranchPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1)
    tame_phi: int = Field(0, ge=0, description="phi in [0, n); 0 means unramified in F^P/F^G")
    wild: Optional[WildData] = None

    @model_validator(mode="after")
    def ramified_somewhere(self) -> "BranchPoint":
        if self.tame_phi == 0 and self.wild is None:
            raise ValueError(f"branch point {self.id!r} is neither tame nor wild ramified")
        return self

    def e_prime(self, n: int) -> int:
        return n // gcd(n, self.tame_phi) if self.tame_phi else 1

    def big_phi(self, n: int) -> int:
        return self.tame_phi // gcd(n, self.tame_phi) if self.tame_phi else 0

    def places_in_fp(self, n: int) -> int:
        """Number of places of F^P above this point."""
        return n // self.e_prime(n)


class TowerData(BaseModel):
    model_config = ConfigDict(frozen=True)

    group: GroupSpec
    base_genus: int = Field(0, ge=0)
    branch_points: List[BranchPoint] = Field(default_factory=list)
    genus_ErT: Optional[int] = Field(None, ge=0)

    @field_validator("branch_points")
    @classmethod
    def unique_ids(cls, v: List[BranchPoint]) -> List[BranchPoint]:
        ids = [bp.id for bp in v]
        if len(ids) != len(set(ids)):
            raise ValueError("branch point ids must be unique")
        return v

    def point(self, point_id: str) -> BranchPoint:
        for bp in self.branch_points:
            if bp.id == point_id:
                return bp
        raise KeyError(f"unknown branch point {point_id!r}")

    @property
    def tame_only(self) -> List[BranchPoint]:
        return [bp for bp in self.branch_points if bp.tame_phi and bp.wild is None]

    @property
    def tame_and_wild(self) -> List[BranchPoint]:
        return [bp for bp in self.branch_points if bp.tame_phi and bp.wild is not None]

    @property
    def wild_only(self) -> List[BranchPoint]:
        return [bp for bp in self.branch_points if not bp.tame_phi and bp.wild is not None]

    @property
    def tame_points(self) -> List[BranchPoint]:
        """Ordered as Q_1..Q_t0 (no wild data) then Q_t0+1..Q_t."""
        return self.tame_only + self.tame_and_wild

    @property
    def wild_points(self) -> List[BranchPoint]:
        return self.tame_and_wild + self.wild_only


class Genera(BaseModel):
    g_base: int
    g_FP: int
    g_F: int
    g_ErT: int


class ModuleLabel(BaseModel):
    """Indecomposable K[G]-module V(lambda, k): eigenvalue zeta^lambda, one Jordan block of size k."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: int = Field(..., ge=0, alias="lambda")
    k: int = Field(..., ge=1)

    def __str__(self) -> str:
        return f"V({self.lam},{self.k})"


class DecompositionTable(BaseModel):
    n: int
    p_ell: int
    multiplicities: Dict[Tuple[int, int], int] = Field(default_factory=dict, description="(lambda, k) -> d(lambda, k) > 0")
    tower_hash: str = ""
    genera: Optional[Genera] = None

    @field_validator("multiplicities")
    @classmethod
    def non_negative(cls, v: Dict[Tuple[int, int], int]) -> Dict[Tuple[int, int], int]:
        if any(d < 0 for d in v.values()):
            raise ValueError("multiplicities must be non-negative")
        return {key: d for key, d in v.items() if d > 0}

    def d(self, lam: int, k: int) -> int:
        return self.multiplicities.get((lam, k), 0)

    @property
    def dimension(self) -> int:
        return sum(k * d for (_, k), d in self.multiplicities.items())

    def rows(self) -> List[Tuple[int, int, int]]:
        return [(lam, k, d) for (lam, k), d in sorted(self.multiplicities.items())]

    def summands(self) -> List[Tuple[ModuleLabel, int]]:
        return [(ModuleLabel(lam=lam, k=k), d) for lam, k, d in self.rows()]

    def module_string(self) -> str:
        """V(0,1) + V(0,3)^2 style; '0' for the zero module."""
        parts = [str(label) if d == 1 else f"{label}^{d}" for label, d in self.summands()]
        return " + ".join(parts) or "0"


class DivisorSketch(BaseModel):
    """E_{k,lambda} per branch point: rational coefficient before reduction, floor after."""

    k: int
    lam: int
    alpha_deg_A: int
    rational: List[Tuple[str, str]] = Field(default_factory=list)
    reduced: List[Tuple[str, int]] = Field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.alpha_deg_A + sum(c for _, c in self.reduced)


class Descriptor(BaseModel):
    i: int
    b: int
    nu: int


class Descriptors(BaseModel):
    d: int
    entries: List[Descriptor] = Field(default_factory=list)

    @model_validator(mode="after")
    def consistent(self) -> "Descriptors":
        for e in self.entries:
            if e.b != e.nu * self.d + e.i:
                raise ValueError(f"b_{e.i} != nu_{e.i} * d + {e.i}")
        return self


class Semigroup(BaseModel):
    generators: Tuple[int, ...]
    bound: int
    gaps: List[int] = Field(default_factory=list)

    @property
    def frobenius_number(self) -> int:
        return max(self.gaps) if self.gaps else -1

    @property
    def multiplicity(self) -> int:
        return min(self.generators)


class GapProfile(BaseModel):
    place: str
    n: int
    p_ell: int
    classes: Dict[Tuple[int, int], int] = Field(default_factory=dict)
    small_gaps: Optional[List[int]] = None
    full_gaps: Optional[List[int]] = None

    @property
    def d(self) -> int:
        return self.n * self.p_ell

    @property
    def total(self) -> int:
        return sum(self.classes.values())

    def tame_gap_counts(self) -> List[int]:
        """mu_i0 = sum over i1 of c-bar(i0, i1)."""
        counts = [0] * self.n
        for (i0, _), c in self.classes.items():
            counts[i0] += c
        return counts


# --- explicit curves for the oracle -----------------------------------------


class KummerRoot(BaseModel):
    model_config = ConfigDict(frozen=True)

    root: int = Field(..., ge=0)
    phi: int = Field(..., ge=1)


class PoleTerm(BaseModel):
    model_config = ConfigDict(frozen=True)

    root: int = Field(..., ge=0)
    order: int = Field(..., ge=1)
    coeff: int = Field(1, ge=1)


class CurveSpec(BaseModel):
    """y^n = prod (x - beta)^phi and z^p - z = sum c (x - alpha)^-m over F_q."""

    model_config = ConfigDict(frozen=True)

    group: GroupSpec
    q: Optional[int] = None
    b_roots: List[KummerRoot] = Field(default_factory=list)
    f_terms: List[PoleTerm] = Field(default_factory=list)
    place: Optional[str] = Field(None, description="x-value label of the point for gap checks")

    @model_validator(mode="after")
    def well_formed(self) -> "CurveSpec":
        g = self.group
        if g.ell not in (0, 1):
            raise ValueError("explicit curves support ell in {0, 1} only")
        if g.ell == 0 and self.f_terms:
            raise ValueError("f_terms require ell = 1")
        if g.ell == 1 and not self.f_terms:
            raise ValueError("ell = 1 requires at least one f term")
        if g.n == 1 and self.b_roots:
            raise ValueError("b_roots require n > 1")
        for kr in self.b_roots:
            if kr.phi >= g.n:
                raise ValueError(f"phi={kr.phi} at root {kr.root} must lie in [1, n)")
        for term in self.f_terms:
            if term.order % g.p == 0:
                raise ValueError(f"pole order {term.order} at root {term.root} is divisible by p: not in Artin-Schreier standard form")
        for name, roots in (("b_roots", [r.root for r in self.b_roots]), ("f_terms", [t.root for t in self.f_terms])):
            if len(roots) != len(set(roots)):
                raise ValueError(f"{name} roots must be distinct")
        if g.n > 1:
            phis = [kr.phi for kr in self.b_roots] + [self.phi_infinity]
            common = g.n
            for phi in phis:
                common = gcd(common, phi)
            if common != 1:
                raise ValueError("y^n = b is reducible: gcd(n, phi_i, phi_inf) != 1")
        return self

    @property
    def phi_infinity(self) -> int:
        return (-sum(kr.phi for kr in self.b_roots)) % self.group.n

    @property
    def x_values(self) -> List[int]:
        values = {kr.root for kr in self.b_roots} | {t.root for t in self.f_terms}
        return sorted(values)


class PlaceModel(BaseModel):
    """Local data at the places of F above one x-place (root None is infinity)."""

    root: Optional[int]
    tame_index: int
    wild_index: int
    v_x_local: int = Field(..., description="Valuation of the base uniformizer, equals e(P|Q)")
    v_y: int
    v_z: Optional[int] = Field(None, description="Valuation of z when wildly ramified")
    different: int
    v_dx: int
    tame_phi: int = 0
    pole_order: int = 0

    @property
    def label(self) -> str:
        return "inf" if self.root is None else str(self.root)

    @property
    def ramification_index(self) -> int:
        return self.tame_index * self.wild_index


class BasisBlock(BaseModel):
    """The (a, k) block: h(x) y^-a z^k dx with h = x^i num/den, 0 <= i <= degree."""

    a: int
    k: int
    lam: int
    divisor: Dict[str, int]
    numerator: Tuple[int, ...]
    denominator: Tuple[int, ...]
    degree: int

    @property
    def size(self) -> int:
        return max(self.degree + 1, 0)


class DiffBasis(BaseModel):
    blocks: List[BasisBlock] = Field(default_factory=list)

    @property
    def dimension(self) -> int:
        return sum(b.size for b in self.blocks)

    def index(self) -> List[Tuple[int, int]]:
        """(block position, power i) for each basis element, in matrix order."""
        return [(pos, i) for pos, b in enumerate(self.blocks) for i in range(b.size)]


class Comparison(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class OracleReport(BaseModel):
    spec_hash: str
    genus: int
    dimension: int
    d_oracle: Dict[Tuple[int, int], int] = Field(default_factory=dict)
    gaps: Optional[List[int]] = None
    comparisons: List[Comparison] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.comparisons)

    def lines(self) -> List[str]:
        return [f"{'PASS' if c.passed else 'FAIL'} {self.spec_hash} {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.comparisons]
