"""
End-to-end oracle verification of one curve.
"""
import logging
from typing import Optional

from ..models import CurveSpec, OracleReport, TowerData
from ..orchestrator import run_oracle_pipeline
from ..ramdata import ensure_valid

logger = logging.getLogger(__name__)


def verify(spec: CurveSpec, tower: Optional[TowerData] = None, session_id: Optional[str] = None) -> OracleReport:
    """
    Run the oracle on `spec` and compare with the closed-form engines.

    `tower` defaults to the ramification data read off the curve; passing a
    different tower turns every comparison into a check of that tower.
    Mismatches come back as FAIL entries in the report.
    """
    if tower is not None:
        ensure_valid(tower)
    report = run_oracle_pipeline(spec, tower=tower, session_id=session_id)
    if not report.passed:
        logger.warning(f"oracle verification of {report.spec_hash} failed: {[c.name for c in report.comparisons if not c.passed]}")
    return report
