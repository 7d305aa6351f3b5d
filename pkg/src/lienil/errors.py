"""Exception hierarchy shared by all lienil modules."""


class LienilError(Exception):
    """Base class for all errors raised by this package."""


class MalformedScalar(LienilError):
    """Scalar text does not match ``[-]?digits(/digits)?``."""


class ZeroDenominator(MalformedScalar):
    """Scalar text has denominator 0."""


class NonInvertibleModP(MalformedScalar):
    """Denominator is divisible by p, so the fraction has no residue mod p."""


class DivisionByZero(LienilError):
    pass


class FieldMismatch(LienilError):
    """Value does not belong to the field performing the operation."""


class DimensionMismatch(LienilError):
    pass


class BadDimension(LienilError):
    """Constructor called with a dimension outside its valid range."""


class SchemaError(LienilError):
    """JSON document does not follow the algebra interchange format."""


class IndexOutOfRange(SchemaError):
    """Basis index outside [1, dim], or a pair violating i < j."""


class DuplicateBracket(SchemaError):
    """The same (i, j) pair or the same target index listed twice."""


class NotADerivation(LienilError):
    """Matrix fails the Leibniz identity, so it cannot act in an extension."""


class MissingAssignment(LienilError):
    """Parameter assignment does not cover the full index set."""
