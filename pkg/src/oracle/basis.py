"""
Holomorphic differentials h(x) y^-a z^k dx, one L-space of the x-line per (a, k).
"""
import logging
from typing import Dict, List, Optional

from ..errors import BasisConstructionError
from ..exactmath.polys import partial_fractions
from ..models import BasisBlock, DiffBasis, PlaceModel
from ..ramdata import genus_F
from ..tracing import log_result_summary, traced_operation
from .places import CurveModel, tower_from_curve

logger = logging.getLogger(__name__)


def place_budget(place: PlaceModel, a: int, k: int) -> int:
    """v_P(y^-a z^k dx) at a place P above the x-place; z counts as integral where it is unramified."""
    v_z = place.v_z if place.v_z is not None else 0
    return -a * place.v_y + k * v_z + place.v_dx


def eigen_index(model: CurveModel, a: int) -> int:
    """lambda with tau(y^-a) = zeta^lambda y^-a."""
    n = model.group.n
    return (-model.group.r_act * a) % n if n > 1 else 0


def build_block(model: CurveModel, places: List[PlaceModel], a: int, k: int) -> BasisBlock:
    divisor: Dict[str, int] = {}
    num_roots: Dict[int, int] = {}
    den_roots: Dict[int, int] = {}
    for place in places:
        coeff = place_budget(place, a, k) // place.ramification_index
        divisor[place.label] = coeff
        if place.root is None or coeff == 0:
            continue
        if coeff < 0:
            num_roots[place.root] = -coeff
        else:
            den_roots[place.root] = coeff
    ring = model.ring
    return BasisBlock(
        a=a,
        k=k,
        lam=eigen_index(model, a),
        divisor=divisor,
        numerator=ring.from_roots(num_roots),
        denominator=ring.from_roots(den_roots),
        degree=sum(divisor.values()),
    )


def build_basis(model: CurveModel, places: List[PlaceModel]) -> DiffBasis:
    """
    One block per (a, k); block (a, k) spans x^i num/den y^-a z^k dx for
    0 <= i <= deg D_(a,k), where D_(a,k) is the largest divisor of the x-line
    keeping every such differential holomorphic.

    Raises:
        BasisConstructionError: if the number of differentials is not the genus
    """
    g = model.group
    blocks = [build_block(model, places, a, k) for a in range(g.n) for k in range(g.p_ell)]
    basis = DiffBasis(blocks=[b for b in blocks if b.size > 0])
    genus = genus_F(tower_from_curve(model.spec))
    if basis.dimension != genus:
        raise BasisConstructionError(f"basis construction failed: {basis.dimension} differentials for genus {genus}")
    return basis


def describe_block(model: CurveModel, block: BasisBlock) -> str:
    """Human-readable partial-fraction form of the block's first differential."""
    den_roots = {int(label): c for label, c in block.divisor.items() if label != "inf" and c > 0}
    poly, atoms = partial_fractions(model.ring, block.numerator, den_roots)
    terms: List[str] = []
    for i, c in enumerate(poly):
        if c:
            terms.append(f"{c}*x^{i}" if i else f"{c}")
    for (root, j), c in sorted(atoms.items()):
        terms.append(f"{c}*(x-{root})^-{j}")
    h = " + ".join(terms) if terms else "0"
    y_part = f" y^-{block.a}" if block.a else ""
    z_part = f" z^{block.k}" if block.k else ""
    return f"({h}){y_part}{z_part} dx"


class BasisBuilder:
    """Oracle stage 2: basis of holomorphic differentials from raw valuation budgets."""

    def run(self, model: CurveModel, places: List[PlaceModel], session_id: Optional[str] = None) -> DiffBasis:
        with traced_operation(
            "oracle_basis",
            {"n": model.group.n, "p_ell": model.group.p_ell},
            session_id=session_id,
            engine_name="BasisBuilder",
        ) as span:
            basis = build_basis(model, places)
            for block in basis.blocks:
                logger.debug(f"block a={block.a} k={block.k} lambda={block.lam}: {block.size} differentials")
            log_result_summary(span, {"dimension": basis.dimension, "blocks": len(basis.blocks)})
            return basis
