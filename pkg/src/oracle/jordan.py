"""
Reading V = (+) V(lambda, k)^d off the action matrix.
"""
import logging
from collections import Counter
from typing import Dict, Optional, Tuple

from ..errors import EigenvalueError
from ..exactmath.fields import FiniteField
from ..exactmath.linalg import Matrix, unipotent_block_sizes
from ..models import GroupSpec
from ..tracing import log_result_summary, traced_operation

logger = logging.getLogger(__name__)


def jordan_table(matrix: Matrix, group: GroupSpec, zeta: int) -> Dict[Tuple[int, int], int]:
    """
    d(lambda, k) = number of size-k Jordan blocks at eigenvalue zeta^lambda.

    Raises:
        EigenvalueError: if some eigenvalue is not an n-th root of unity
    """
    F: FiniteField = matrix.field
    table: Dict[Tuple[int, int], int] = {}
    covered = 0
    for lam in range(group.n):
        eigenvalue = F.pow(zeta, lam)
        sizes = unipotent_block_sizes(matrix, eigenvalue)
        covered += sum(size * count for size, count in sizes.items())
        for size, count in sizes.items():
            if size > group.p_ell:
                raise EigenvalueError(f"Jordan block of size {size} exceeds p^ell = {group.p_ell}", label=(lam, size))
            table[(lam, size)] = count
    if covered != matrix.nrows:
        raise EigenvalueError(
            f"generalized eigenspaces of the n-th roots of unity cover {covered} of {matrix.nrows} dimensions"
        )
    return table


def order_check(matrix: Matrix, group: GroupSpec) -> bool:
    """M^(n p^ell) = I."""
    return matrix.pow(group.order).is_identity()


def restriction_sizes(matrix: Matrix, group: GroupSpec) -> Counter:
    """Unipotent block sizes of M^n, which acts on each V(lambda, k) as one block of size k."""
    return unipotent_block_sizes(matrix.pow(group.n), 1)


def expected_restriction_sizes(table: Dict[Tuple[int, int], int]) -> Counter:
    sizes: Counter = Counter()
    for (_, k), d in table.items():
        if d:
            sizes[k] += d
    return sizes


def wild_power_sizes(matrix: Matrix, group: GroupSpec, zeta: int) -> Dict[int, Counter]:
    """Block sizes of M^(p^ell) at zeta^(lambda p^ell); sigma^(p^ell) = 1, so only size-1 blocks occur."""
    F: FiniteField = matrix.field
    power = matrix.pow(group.p_ell)
    return {lam: unipotent_block_sizes(power, F.pow(zeta, lam * group.p_ell)) for lam in range(group.n)}


def expected_wild_power_sizes(table: Dict[Tuple[int, int], int], n: int) -> Dict[int, Counter]:
    sizes: Dict[int, Counter] = {lam: Counter() for lam in range(n)}
    for (lam, k), d in table.items():
        if d:
            sizes[lam][1] += k * d
    return sizes


class JordanAnalyzer:
    """Oracle stage 4: Jordan data of the action matrix."""

    def run(
        self,
        matrix: Matrix,
        group: GroupSpec,
        zeta: int,
        session_id: Optional[str] = None,
    ) -> Dict[Tuple[int, int], int]:
        with traced_operation(
            "oracle_jordan",
            {"dimension": matrix.nrows, "n": group.n, "p_ell": group.p_ell},
            session_id=session_id,
            engine_name="JordanAnalyzer",
        ) as span:
            table = jordan_table(matrix, group, zeta)
            logger.debug(f"oracle decomposition: {sorted(table.items())}")
            log_result_summary(span, {"modules": len(table)})
            return table
