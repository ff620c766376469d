"""
Exception hierarchy for coopgraph
"""
from typing import List, Optional, Sequence


class CoopGraphError(Exception):
    """Base class for every error raised by coopgraph"""


class GraphError(CoopGraphError, ValueError):
    """Invalid graph construction (out-of-range index, self-loop, ...)"""


class EdgeListFormatError(GraphError):
    """Malformed edge-list file"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DisconnectedGraphError(CoopGraphError, ValueError):
    """Operation requires a connected graph"""

    def __init__(self, component_sizes: Sequence[int], context: str = ""):
        self.component_sizes = list(component_sizes)
        prefix = f"{context}: " if context else ""
        super().__init__(
            f"{prefix}graph is disconnected "
            f"({len(self.component_sizes)} components, sizes {self.component_sizes})"
        )


class GeneratorError(CoopGraphError, ValueError):
    """Generator parameters outside their valid range or sampling failure"""


class ConnectionAttemptsExhausted(CoopGraphError):
    """ensure_connected ran out of attempts"""

    def __init__(self, family: str, attempts: int, component_sizes: Sequence[int]):
        self.family = family
        self.attempts = attempts
        self.component_sizes = list(component_sizes)
        super().__init__(
            f"{family}: no connected draw in {attempts} attempts; last attempt had "
            f"{len(self.component_sizes)} components, largest {max(self.component_sizes, default=0)}"
        )


class SolverConvergenceError(CoopGraphError):
    """Meeting-time solver did not reach the requested residual"""

    def __init__(self, message: str, residual_trace: Optional[List[float]] = None):
        self.residual_trace = list(residual_trace or [])
        super().__init__(message)


class IdentityViolationError(CoopGraphError):
    """Remeeting-time identity failed; solver tolerance too loose"""


class PoleError(CoopGraphError, ValueError):
    """Quantity undefined at a pole of the critical ratio"""


class SelectionStrengthError(CoopGraphError, ValueError):
    """Copying weight 1 + delta*f became nonpositive"""


class StepLimitExceeded(CoopGraphError):
    """Simulation did not reach an absorbing state within the step cap"""

    def __init__(self, steps: int):
        self.steps = steps
        super().__init__(f"no absorbing state after {steps} steps")


class MeanFieldDomainError(CoopGraphError, ValueError):
    """Closed form evaluated outside the parameters it is defined for"""


class ProblemSizeError(CoopGraphError, ValueError):
    """Graph exceeds a configured size cap"""


class OracleSizeError(ProblemSizeError):
    """Graph too large for exhaustive state enumeration"""


class ConfigError(CoopGraphError, ValueError):
    """Invalid experiment configuration"""
