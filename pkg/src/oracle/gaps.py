"""
Weierstrass gaps at a totally ramified place from the explicit basis.
"""
import logging
from typing import List, Optional

from ..errors import BasisConstructionError, EliminationError
from ..exactmath.linalg import Matrix
from ..models import DiffBasis, PlaceModel
from ..tracing import traced_operation
from .basis import place_budget
from .places import CurveModel

logger = logging.getLogger(__name__)


def find_place(places: List[PlaceModel], label: str) -> PlaceModel:
    for place in places:
        if place.label == label:
            return place
    raise ValueError(f"no modelled place above x = {label}")


def _local_vectors(model: CurveModel, place: PlaceModel, degree: int) -> List[List[int]]:
    """Row i: expansion of x^i at the place, indexed by increasing order."""
    ring = model.ring
    vectors = []
    for i in range(degree + 1):
        if place.root is None:
            v = [0] * (degree + 1)
            v[degree - i] = 1
        else:
            taylor = ring.taylor(ring.x_power(i), place.root)
            v = taylor + [0] * (degree + 1 - len(taylor))
        vectors.append(v)
    return vectors


def gaps_oracle(model: CurveModel, places: List[PlaceModel], basis: DiffBasis, label: str) -> List[int]:
    """
    Echelonize each block by vanishing order at the place; the realized orders v
    give the gaps v + 1.

    Raises:
        EliminationError: if two differentials share a vanishing order
    """
    place = find_place(places, label)
    e = place.ramification_index
    if e != model.group.order:
        raise ValueError(f"place above x = {label} has e = {e}, not n p^ell = {model.group.order}")
    ring = model.ring
    orders: List[int] = []
    for block in basis.blocks:
        budget = place_budget(place, block.a, block.k)
        coeff = block.divisor[place.label]
        if place.root is None:
            base = ring.degree(block.denominator) - ring.degree(block.numerator) - block.degree
        else:
            base = -coeff
        _, pivots = Matrix(model.field, _local_vectors(model, place, block.degree)).rref()
        if len(pivots) != block.size:
            raise EliminationError(f"block (a={block.a}, k={block.k}) is not linearly independent at x = {label}")
        for t in pivots:
            v = e * (base + t) + budget
            if v < 0:
                raise BasisConstructionError(f"differential with pole of order {-v} at x = {label}", label=(block.lam, block.k))
            orders.append(v)
    if len(set(orders)) != len(orders):
        raise EliminationError(f"vanishing orders at x = {label} are not distinct: {sorted(orders)}")
    return sorted(v + 1 for v in orders)


class GapOracle:
    """Oracle stage 5: gaps at the designated place."""

    def run(
        self,
        model: CurveModel,
        places: List[PlaceModel],
        basis: DiffBasis,
        label: Optional[str],
        session_id: Optional[str] = None,
    ) -> Optional[List[int]]:
        if label is None:
            return None
        with traced_operation(
            "oracle_gaps",
            {"place": label},
            session_id=session_id,
            engine_name="GapOracle",
        ) as span:
            gaps = gaps_oracle(model, places, basis, label)
            span.update(output={"gaps": gaps})
            return gaps
