from typing import Any, Dict, Optional

from langchain_core.runnables import RunnableLambda, RunnableSequence

from .models import CurveSpec, OracleReport, TowerData
from .oracle.action import ActionBuilder
from .oracle.basis import BasisBuilder
from .oracle.compare import OracleComparator, default_place
from .oracle.gaps import GapOracle
from .oracle.jordan import JordanAnalyzer
from .oracle.places import CurveModel, PlaceModeler, tower_from_curve


def build_oracle_pipeline() -> RunnableSequence:
    """
    Build a LangChain Runnable pipeline that runs the explicit-curve oracle.

    Inputs to the pipeline should be a dict with:
    - "spec": CurveSpec
    - Optional: "tower" (a declared TowerData to check instead of the derived one), "session_id"

    The pipeline will:
    1) Model the places above every branch x-value and infinity.
    2) Build the basis of holomorphic differentials.
    3) Compute the generator's action matrix.
    4) Read the Jordan table off the matrix.
    5) Compute gaps at the designated totally ramified place.
    6) Compare everything with the closed-form engines.
    """
    places_stage = PlaceModeler()
    basis_stage = BasisBuilder()
    action_stage = ActionBuilder()
    jordan_stage = JordanAnalyzer()
    gaps_stage = GapOracle()
    compare_stage = OracleComparator()

    def add_places(inputs: Dict[str, Any]) -> Dict[str, Any]:
        spec: CurveSpec = inputs["spec"]
        model = CurveModel(spec)
        places = places_stage.run(model, session_id=inputs.get("session_id"))
        tower: TowerData = inputs.get("tower") or tower_from_curve(spec)
        return {**inputs, "model": model, "places": places, "tower": tower, "place": default_place(spec, places)}

    def add_basis(inputs: Dict[str, Any]) -> Dict[str, Any]:
        basis = basis_stage.run(inputs["model"], inputs["places"], session_id=inputs.get("session_id"))
        return {**inputs, "basis": basis}

    def add_action(inputs: Dict[str, Any]) -> Dict[str, Any]:
        matrix = action_stage.run(inputs["model"], inputs["basis"], session_id=inputs.get("session_id"))
        return {**inputs, "matrix": matrix}

    def add_jordan(inputs: Dict[str, Any]) -> Dict[str, Any]:
        model: CurveModel = inputs["model"]
        table = jordan_stage.run(inputs["matrix"], model.group, model.zeta, session_id=inputs.get("session_id"))
        return {**inputs, "d_oracle": table}

    def add_gaps(inputs: Dict[str, Any]) -> Dict[str, Any]:
        gaps = gaps_stage.run(
            inputs["model"],
            inputs["places"],
            inputs["basis"],
            inputs["place"],
            session_id=inputs.get("session_id"),
        )
        return {**inputs, "gaps": gaps}

    def run_compare(inputs: Dict[str, Any]) -> OracleReport:
        return compare_stage.run(
            inputs["spec"],
            inputs["tower"],
            inputs["basis"],
            inputs["matrix"],
            inputs["d_oracle"],
            inputs["gaps"],
            inputs["place"],
            session_id=inputs.get("session_id"),
        )

    pipeline: RunnableSequence = RunnableSequence(
        RunnableLambda(add_places),
        RunnableLambda(add_basis),
        RunnableLambda(add_action),
        RunnableLambda(add_jordan),
        RunnableLambda(add_gaps),
        RunnableLambda(run_compare),
    )
    return pipeline


def run_oracle_pipeline(
    spec: CurveSpec,
    tower: Optional[TowerData] = None,
    session_id: Optional[str] = None,
) -> OracleReport:
    """
    Convenience helper that builds the oracle pipeline and immediately invokes it.

    Example:
        from src.models import CurveSpec, GroupSpec, PoleTerm
        from src.orchestrator import run_oracle_pipeline

        spec = CurveSpec(group=GroupSpec(p=5, ell=1), f_terms=[PoleTerm(root=0, order=3)])
        report = run_oracle_pipeline(spec)
    """
    chain = build_oracle_pipeline()
    return chain.invoke({"spec": spec, "tower": tower, "session_id": session_id})
