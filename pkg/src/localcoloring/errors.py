"""Exception types raised across the package."""


class LocalColoringError(Exception):
    pass


class InfeasibleSpec(LocalColoringError):
    pass


class DegreeOverflow(LocalColoringError):
    pass


class EdgeCollision(LocalColoringError):
    pass


class AlgorithmUndefined(LocalColoringError):
    pass


class ImproperInput(LocalColoringError):
    pass


class NoRFound(LocalColoringError):
    pass


class NoPatchInBall(LocalColoringError):
    pass


class KCliqueFound(LocalColoringError):
    pass


class GrowthViolated(LocalColoringError):
    pass


class OddCycleWithDeltaTwo(LocalColoringError):
    pass


class NotShiftable(LocalColoringError):
    pass


class ImproperShift(LocalColoringError):
    pass


class NotAugmenting(LocalColoringError):
    pass


class StepBudgetExhausted(LocalColoringError):
    pass


class EnumerationBudgetExhausted(LocalColoringError):
    pass


class BudgetExhausted(LocalColoringError):
    pass


class AlgorithmUndefinedAtTerminal(LocalColoringError):
    pass


class NoWinningIndex(LocalColoringError):
    pass


class NotAHomomorphism(LocalColoringError):
    pass
