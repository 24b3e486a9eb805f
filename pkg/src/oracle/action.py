"""
Matrix of the generator g = sigma tau on the differential basis, where
sigma: z -> z + 1 and tau: y -> zeta^r_act y.
"""
import logging
from math import comb
from typing import Dict, List, Optional, Tuple

from ..errors import ActionSpanError
from ..exactmath.linalg import Matrix
from ..models import DiffBasis
from ..tracing import traced_operation
from .places import CurveModel

logger = logging.getLogger(__name__)


def action_matrix(model: CurveModel, basis: DiffBasis) -> Matrix:
    """
    Column j holds the coordinates of g(basis_j).

    g(x^i num_k/den_k y^-a z^k dx) = zeta^lambda sum_j C(k, j) x^i num_k/den_k y^-a z^j dx,
    and each summand is rewritten in block (a, j) through the exact quotient
    x^i num_k den_j / (den_k num_j).

    Raises:
        ActionSpanError: if an image leaves the span of the basis
    """
    F = model.field
    ring = model.ring
    p = model.group.p
    index = basis.index()
    position: Dict[Tuple[int, int], int] = {}
    offsets: Dict[int, int] = {}
    offset = 0
    for pos, block in enumerate(basis.blocks):
        position[(block.a, block.k)] = pos
        offsets[pos] = offset
        offset += block.size
    dim = basis.dimension
    rows: List[List[int]] = [[0] * dim for _ in range(dim)]

    for col, (pos, i) in enumerate(index):
        block = basis.blocks[pos]
        eigen = F.pow(model.zeta, block.lam)
        source = ring.mul(ring.x_power(i), block.numerator)
        for j in range(block.k + 1):
            binom = F.from_int(comb(block.k, j) % p)
            if binom == 0:
                continue
            label = (block.lam, block.k)
            target_pos = position.get((block.a, j))
            if target_pos is None:
                raise ActionSpanError(f"image has a z^{j} component but block (a={block.a}, k={j}) is empty", label=label)
            target = basis.blocks[target_pos]
            quotient = ring.exact_div(
                ring.mul(source, target.denominator),
                ring.mul(block.denominator, target.numerator),
            )
            if quotient is None or ring.degree(quotient) > target.degree:
                raise ActionSpanError(f"image does not lie in L(D) of block (a={block.a}, k={j})", label=label)
            scale = F.mul(eigen, binom)
            for t, c in enumerate(quotient):
                if c:
                    row = offsets[target_pos] + t
                    rows[row][col] = F.add(rows[row][col], F.mul(scale, c))
    return Matrix(F, rows, dim)


class ActionBuilder:
    """Oracle stage 3: the generator's matrix on the basis."""

    def run(self, model: CurveModel, basis: DiffBasis, session_id: Optional[str] = None) -> Matrix:
        with traced_operation(
            "oracle_action",
            {"dimension": basis.dimension},
            session_id=session_id,
            engine_name="ActionBuilder",
        ):
            matrix = action_matrix(model, basis)
            logger.debug(f"action matrix {matrix}")
            return matrix
