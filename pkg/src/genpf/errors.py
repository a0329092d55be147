"""Exception hierarchy shared by the solver modules."""


class GenPFError(Exception):
    """Base class for all library errors."""


class InvalidSystem(GenPFError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid system")


class UnclassifiableSystem(GenPFError, ValueError):
    pass


class NotSquare(GenPFError, ValueError):
    pass


class BudgetExceeded(GenPFError):
    def __init__(self, count, budget):
        self.count = count
        self.budget = budget
        super().__init__(f"budget exceeded: {count} selections > budget {budget}")


class ReducibleSystem(GenPFError):
    def __init__(self, report, message="reducible system"):
        self.report = report
        super().__init__(message)


class ConvergenceError(GenPFError):
    """Power iteration ran out of iterations; carries the best iterate."""

    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)


class NoExtendingSupporter(GenPFError):
    def __init__(self, entity, beta):
        self.entity = entity
        self.beta = beta
        super().__init__(f"no supporter of entity {entity} keeps the system feasible at beta={beta}")


class VerificationFailed(GenPFError):
    def __init__(self, message, best=None, diagnostics=None):
        self.best = best
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class DegenerateScenario(GenPFError, ValueError):
    pass


class ScenarioError(GenPFError, ValueError):
    """An application scenario cannot be turned into a gain system."""
