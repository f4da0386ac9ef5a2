"""Exception hierarchy shared across the package."""


class SLOrbitsError(Exception):
    pass


class DomainError(SLOrbitsError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class StructureError(SLOrbitsError, ValueError):
    """Modulus or dimension mismatch between operands."""


class NotInSLError(SLOrbitsError, ValueError):
    def __init__(self, det, n):
        self.det = det
        self.n = n
        super().__init__(f"not in SL(m, Z_{n}): det = {det} (mod {n})")


class BudgetExceeded(SLOrbitsError, RuntimeError):
    def __init__(self, needed, budget, what="candidates"):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"refusing to enumerate {needed} {what}: enumeration budget is {budget}"
        )


class ConsistencyError(SLOrbitsError, AssertionError):
    """An internal cross-check between two exact computations disagreed."""
