"""Error types shared across modules; each maps to a CLI exit code."""


class TigerError(Exception):
    exit_code = 1


class InvalidInput(TigerError, ValueError):
    exit_code = 2


class CSSViolation(InvalidInput):
    """G @ H.T has nonzero entries; ``violations`` lists (g_row, h_row, value)."""

    def __init__(self, violations):
        self.violations = violations
        desc = ", ".join(f"G[{i}].H[{j}] = {v}" for i, j, v in violations[:8])
        super().__init__(f"CSS condition fails: {desc}")


class PreconditionError(TigerError):
    exit_code = 3


class InadmissibleDelta(PreconditionError):
    """The requested Fock sector is empty."""


class SearchBoundExceeded(TigerError):
    exit_code = 4
