"""
Errors raised across the pipeline.

Every error belongs to one of three families that the command line
maps to exit codes: input problems (1), polygons failing validation (2)
and numerical failures inside a stage (3).
"""


class HypDomainError(Exception):
    exit_code = 3


class InputError(HypDomainError):
    exit_code = 1


class SchemaError(InputError):
    pass


class ConfigError(InputError):
    pass


class ValidationError(HypDomainError):
    exit_code = 2


class TooFewSides(ValidationError):
    pass


class NotMatching(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class PairingMismatch(ValidationError):
    pass


class OpenPolygon(ValidationError):
    pass


class EulerMismatch(ValidationError):
    pass


class NotCounterclockwise(ValidationError):
    pass


class PoincareConditionError(ValidationError):
    pass


class NumericError(HypDomainError):
    exit_code = 3


class OutsideDisk(NumericError, ValueError):
    pass


class RenormalizationError(NumericError):
    pass


class EllipticOrParabolic(NumericError):
    pass


class Disjoint(NumericError):
    pass


class Identical(NumericError):
    pass


class Collinear(NumericError):
    pass


class CenterAtInfinity(NumericError):
    pass


class SelfIntersecting(NumericError):
    pass


class InvalidPolygon(NumericError):
    pass


class NonClosingStar(NumericError):
    pass


class LiftNotFound(NumericError):
    pass


class WordMismatch(NumericError):
    pass


class NoCrossingLoop(NumericError):
    pass


class BoundViolation(NumericError):
    pass


class NotConvex(NumericError):
    pass


class AreaMismatch(NumericError):
    pass


class DegenerateQuad(NumericError):
    pass


class IterationLimit(NumericError):
    pass


class DegenerateCell(NumericError):
    pass


class BisectionFailure(NumericError):
    pass
