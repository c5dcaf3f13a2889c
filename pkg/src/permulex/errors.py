"""Exception hierarchy shared across permulex."""


class PermulexError(Exception):
    """Base class for all library errors."""


class ValidationError(PermulexError, ValueError):
    """Malformed input: bad morphism, bad seed, bad parameters."""


class ParseError(ValidationError):
    """A spec file or scalar string could not be parsed."""

    def __init__(self, message, *, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class NonExtensible(ValidationError):
    """The seed letter does not generate an infinite fixed point."""


class PeriodicWord(ValidationError):
    """The fixed point looks ultimately periodic."""


class ComparisonExhausted(PermulexError):
    """Two shifts agreed up to the hard depth cap."""

    def __init__(self, i, j, depth):
        self.i, self.j, self.depth = i, j, depth
        super().__init__(f"shifts {i} and {j} agree on {depth} letters; word may be periodic")


class UnresolvableComparison(PermulexError, ArithmeticError):
    """Ball arithmetic could not separate two values at the maximal precision."""


class DuplicateValue(PermulexError, ValueError):
    """A value list handed to a rank computation contains equal entries."""


class AnalysisRejection(PermulexError):
    """The morphism is outside the class handled by the interval construction."""

    reason = "rejected"


class NotPrimitive(AnalysisRejection):
    reason = "not-primitive"


class NotMonotone(AnalysisRejection):
    reason = "not-monotone"

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotSeparable(AnalysisRejection):
    reason = "inseparable"

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class TypeMissing(PermulexError):
    """A position type never occurs in the sampled prefix."""

    def __init__(self, ptype):
        self.ptype = ptype
        super().__init__(f"position type {tuple(ptype)} does not occur in the prefix")


class EndpointHit(PermulexError):
    """A sequence value landed exactly on an interval endpoint that should never be attained."""


class FactorAbsent(PermulexError, LookupError):
    """The requested factor does not occur in the scanned prefix."""
