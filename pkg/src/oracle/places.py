"""
Explicit covers of the projective line over F_q and their local data.

The curve is F = F_q(x, y, z) with y^n = prod (x - beta)^phi and
z^p - z = sum c (x - alpha)^-m. Every modelled x-place carries the valuations
of y, z and dx at the places of F above it.
"""
import logging
from math import gcd
from typing import Dict, List, Optional

from ..exactmath.fields import FiniteField, field_of_size, smallest_field
from ..exactmath.polys import PolyRing
from ..models import BranchPoint, CurveSpec, GroupSpec, PlaceModel, TowerData
from ..ramdata import ensure_valid, totally_wild
from ..tracing import traced_operation

logger = logging.getLogger(__name__)


def choose_field(spec: CurveSpec) -> FiniteField:
    """The requested F_q, or the smallest one with n | q - 1 and room for every x-value."""
    g = spec.group
    if spec.q is not None:
        field = field_of_size(spec.q)
        if field.p != g.p:
            raise ValueError(f"q={spec.q} is not a power of p={g.p}")
        if (field.q - 1) % g.n:
            raise ValueError(f"n={g.n} does not divide q - 1 = {field.q - 1}")
    else:
        values = spec.x_values
        field = smallest_field(g.p, g.n, min_size=max(len(values) + 2, max(values, default=0)))
    for root in spec.x_values:
        if root >= field.q:
            raise ValueError(f"x-value {root} is not an element of F_{field.q}")
    return field


class CurveModel:
    """A CurveSpec together with its field, polynomial ring and primitive n-th root of unity."""

    def __init__(self, spec: CurveSpec):
        self.spec = spec
        self.group: GroupSpec = spec.group
        self.field = choose_field(spec)
        self.ring = PolyRing(self.field)
        self.zeta = self.field.element_of_order(self.group.n)
        self.phi: Dict[int, int] = {kr.root: kr.phi for kr in spec.b_roots}
        self.poles: Dict[int, int] = {t.root: t.order for t in spec.f_terms}

    @property
    def p_ell(self) -> int:
        return self.group.p_ell

    def tame_index(self, phi: int) -> int:
        n = self.group.n
        return n // gcd(n, phi) if phi else 1


def _place(model: CurveModel, root: Optional[int]) -> PlaceModel:
    g = model.group
    n, p = g.n, g.p
    if root is None:
        phi = model.spec.phi_infinity
        v_b = -sum(model.phi.values())
        pole = 0
    else:
        phi = model.phi.get(root, 0)
        v_b = phi
        pole = model.poles.get(root, 0)
    e_tame = model.tame_index(phi)
    v_z = None
    e_wild = 1
    delta = 0
    if pole:
        jump = e_tame * pole
        if jump % p == 0:
            raise ValueError(f"pole order {jump} at x = {root} is divisible by p = {p}: not in Artin-Schreier standard form")
        e_wild = p
        v_z = -jump
        delta = (jump + 1) * (p - 1)
    if (e_tame * v_b) % n:
        raise ValueError(f"v(y) is not integral above x = {root}")
    e = e_tame * e_wild
    different = delta + e_wild * (e_tame - 1)
    v_dx = different + (-2 * e if root is None else 0)
    return PlaceModel(
        root=root,
        tame_index=e_tame,
        wild_index=e_wild,
        v_x_local=e,
        v_y=e_wild * e_tame * v_b // n,
        v_z=v_z,
        different=different,
        v_dx=v_dx,
        tame_phi=phi,
        pole_order=pole,
    )


def model_places(model: CurveModel) -> List[PlaceModel]:
    """Local data above every finite branch x-value, then above infinity."""
    places = [_place(model, root) for root in model.spec.x_values]
    places.append(_place(model, None))
    return places


def tower_from_curve(spec: CurveSpec) -> TowerData:
    """Ramification data of the curve read off its equations; the base is the x-line."""
    model = CurveModel(spec)
    points: List[BranchPoint] = []
    for place in model_places(model):
        wild = totally_wild(spec.group.p, (-place.v_z,)) if place.v_z is not None else None
        if place.tame_phi or wild is not None:
            points.append(BranchPoint(id=place.label, tame_phi=place.tame_phi, wild=wild))
    return ensure_valid(TowerData(group=spec.group, base_genus=0, branch_points=points))


class PlaceModeler:
    """Oracle stage 1: local valuations at every modelled place."""

    def run(self, model: CurveModel, session_id: Optional[str] = None) -> List[PlaceModel]:
        with traced_operation(
            "oracle_places",
            {"x_values": model.spec.x_values, "q": model.field.q},
            session_id=session_id,
            engine_name="PlaceModeler",
        ) as span:
            places = model_places(model)
            for place in places:
                logger.debug(
                    f"place {place.label}: e={place.ramification_index} v(y)={place.v_y} "
                    f"v(z)={place.v_z} v(dx)={place.v_dx}"
                )
            span.update(output={"places": [p.label for p in places]})
            return places
