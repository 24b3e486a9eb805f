"""
Exception hierarchy; the CLI maps each family to an exit code.
"""
from typing import List, Optional, Tuple


class ConfigParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class TowerValidationError(ValueError):
    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ConsistencyError(RuntimeError):
    """Raised when an internal identity fails; `label` names the offending (lambda, k)."""

    def __init__(self, message: str, label: Optional[Tuple[int, int]] = None):
        self.label = label
        where = f" at (lambda={label[0]}, k={label[1]})" if label is not None else ""
        super().__init__(f"{message}{where}")


class BasisConstructionError(ConsistencyError):
    pass


class ActionSpanError(ConsistencyError):
    pass


class EigenvalueError(ConsistencyError):
    pass


class EliminationError(ConsistencyError):
    pass
