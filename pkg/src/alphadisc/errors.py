"""Exception hierarchy.

Errors split into two families so the CLI can map them onto exit codes:
``InvalidInput`` for bad arguments (exit 2) and ``NumericalDegeneracy`` for
inputs that are well-formed but hit a singular point (exit 3).
"""


class AlphaDiscError(Exception):
    pass


class InvalidInput(AlphaDiscError, ValueError):
    pass


class NumericalDegeneracy(AlphaDiscError, ArithmeticError):
    pass


# poly
class ZeroPolynomial(NumericalDegeneracy):
    pass


class ZeroDenominator(InvalidInput):
    pass


class ConstantPolynomial(NumericalDegeneracy):
    pass


# transform
class MapSingularity(NumericalDegeneracy):
    pass


class DegenerateDenominator(NumericalDegeneracy):
    pass


class AlphaZero(InvalidInput):
    pass


class ParamOutOfRange(InvalidInput):
    pass


class MissingParam(InvalidInput):
    pass


class UnexpectedParam(InvalidInput):
    pass


# systems
class NonPositiveFrequency(InvalidInput):
    pass


class NonPositiveQ(InvalidInput):
    pass


# analysis
class PoleOnAxis(NumericalDegeneracy):
    pass


class PoleOnCircle(NumericalDegeneracy):
    pass


class FrequencyOutOfRange(InvalidInput):
    pass


# timedomain
class SampleRateMismatch(InvalidInput):
    pass


class NonCausalSystem(InvalidInput):
    pass
