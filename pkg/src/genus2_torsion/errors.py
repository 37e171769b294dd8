__all__ = [
    "BadDegree",
    "BasisNotInvariant",
    "BothZero",
    "CongruenceFailure",
    "CountsOutOfRange",
    "CurveFileError",
    "DegreeOutOfRange",
    "DivisionByZero",
    "EllDividesQ",
    "EllDoesNotDivideOrder",
    "EllExceptional",
    "EllTooSmall",
    "EvenCharacteristic",
    "ExceedsCap",
    "FieldTooLarge",
    "FieldTooLargeForSearch",
    "Genus2TorsionError",
    "HintDoesNotAnnihilate",
    "Inconclusive",
    "InvalidInput",
    "ModelUnsupported",
    "MuEllNotInField",
    "NonIntegralT",
    "NotASubfield",
    "NotAWeilPolynomial",
    "NotCoprime",
    "NotPrime",
    "NotSquarefree",
    "OrderOdd",
    "PreconditionViolated",
    "RankBoundNotApplicable",
    "Reducible",
    "Singular",
    "SupportCollision",
    "TorsionNotRational",
    "VerificationFailure",
]


class Genus2TorsionError(Exception):
    pass


class InvalidInput(Genus2TorsionError):
    """Input violates a precondition; the CLI exits with status 1"""


class Inconclusive(Genus2TorsionError):
    """No verdict within the available theory or caps; the CLI exits with status 2"""


class VerificationFailure(Genus2TorsionError):
    """A claim was checked and found false; the CLI exits with status 3"""


class NotPrime(InvalidInput):
    pass


class DegreeOutOfRange(InvalidInput):
    pass


class FieldTooLarge(InvalidInput):
    pass


class DivisionByZero(InvalidInput, ZeroDivisionError):
    pass


class NotASubfield(InvalidInput):
    pass


class BothZero(InvalidInput):
    pass


class NotSquarefree(InvalidInput):
    pass


class NotCoprime(InvalidInput):
    pass


class EvenCharacteristic(InvalidInput):
    pass


class BadDegree(InvalidInput):
    pass


class Singular(InvalidInput):
    pass


class HintDoesNotAnnihilate(InvalidInput):
    pass


class CountsOutOfRange(InvalidInput):
    pass


class NonIntegralT(InvalidInput):
    pass


class NotAWeilPolynomial(InvalidInput):
    pass


class EllDividesQ(InvalidInput):
    pass


class Reducible(InvalidInput):
    pass


class EllDoesNotDivideOrder(InvalidInput):
    pass


class PreconditionViolated(InvalidInput):
    pass


class OrderOdd(InvalidInput):
    pass


class EllTooSmall(InvalidInput):
    pass


class MuEllNotInField(InvalidInput):
    pass


class TorsionNotRational(InvalidInput):
    pass


class FieldTooLargeForSearch(InvalidInput):
    pass


class CurveFileError(InvalidInput):
    pass


class ModelUnsupported(Inconclusive):
    pass


class RankBoundNotApplicable(Inconclusive):
    """ℓ divides q − 1 while ℓ does not divide 4τ, so no rank bound applies"""


class EllExceptional(Inconclusive):
    pass


class SupportCollision(Inconclusive):
    pass


class ExceedsCap(Inconclusive):
    pass


class CongruenceFailure(VerificationFailure):
    pass


class BasisNotInvariant(VerificationFailure):
    pass
