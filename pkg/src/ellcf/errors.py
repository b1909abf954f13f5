"""Exception hierarchy shared by every module of the package."""


class EllcfError(Exception):
    """Base class for all package errors."""


class DivisionByZero(EllcfError, ZeroDivisionError):
    pass


class FieldMismatch(EllcfError, TypeError):
    pass


class OddDegree(EllcfError, ValueError):
    pass


class NonSquareLeadingCoefficient(EllcfError, ValueError):
    pass


class PerfectSquare(EllcfError, ValueError):
    """The radicand is a square, so its root is not irrational."""


class PrecisionExhausted(EllcfError):
    """A series degree could not be certified within the precision cap."""


class InvariantBroken(EllcfError, AssertionError):
    """An identity that must hold exactly failed; indicates a bug upstream."""


class SingularStep(EllcfError):
    """A partial quotient blows up because e_{h+1} (or e_h going back) is zero."""

    def __init__(self, h, msg=None):
        self.h = h
        super().__init__(msg or f"singular step at index {h}")


class ZeroV(EllcfError, ValueError):
    pass


class ZeroNormalization(EllcfError, ValueError):
    pass


class PointNotOnCurve(EllcfError, ValueError):
    pass


class MapUndefined(EllcfError, ValueError):
    pass


class TorsionDegenerate(EllcfError):
    """The singular start cannot proceed because some W_m vanishes."""

    def __init__(self, m):
        self.m = m
        super().__init__(f"W_{m} = 0: divisor at infinity has torsion order {m}")


class TorsionTruncation(EllcfError):
    def __init__(self, m):
        self.m = m
        super().__init__(f"sequence truncated at W_{m} = 0")


class Mismatch(EllcfError):
    def __init__(self, h, detail=""):
        self.h = h
        self.detail = detail
        super().__init__(f"mismatch at h={h}: {detail}")


class NoPeriodFound(EllcfError):
    pass


class PreconditionFailed(EllcfError):
    pass


class InvalidK(EllcfError, ValueError):
    pass


class NoNormalization(EllcfError):
    pass
