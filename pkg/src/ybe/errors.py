"""Exception types shared across the package."""


class YbeError(Exception):
    """Base class for all package-specific errors."""


# scalar tower -------------------------------------------------------------

class DivisionByZero(YbeError, ZeroDivisionError):
    """Division by the zero polynomial or zero rational function."""


class SubstitutionPole(YbeError):
    """A substitution sent a denominator to the zero polynomial."""


class EvalPole(YbeError):
    """A denominator vanishes at the requested evaluation point."""


class PoleAtExpansionPoint(YbeError):
    """The denominator vanishes at h = 0, so no Taylor expansion in h exists."""


class OrderMismatch(YbeError):
    """Arithmetic between truncated series of different truncation orders."""


class ParseError(YbeError):
    """Malformed polynomial / rational-function / matrix string."""


# tensor layer -------------------------------------------------------------

class DimensionMismatch(YbeError):
    """Incompatible matrix or leg dimensions."""


class DuplicateLeg(YbeError):
    """The same ambient leg was named twice in an embedding."""


# symmetric pairs ----------------------------------------------------------

class NotInSpan(YbeError):
    """A matrix does not lie in the span of the pair's basis."""


class SingularGram(YbeError):
    """The bilinear form is degenerate on the given span."""


class SplittingViolation(YbeError):
    """The eigenspace splitting violates the symmetric-pair bracket relations."""


class NoProportionality(YbeError):
    """No single rational constant relates the two tensors."""


# catalog / semiclassical --------------------------------------------------

class ParamOutOfRange(YbeError):
    """Entry parameters outside their validated range."""


class Mismatch(YbeError):
    """Two matrices that must agree exactly differ; carries the first witness."""


class IdentityFail(YbeError):
    """A product identity chain is violated; names the identity and the link."""


class NotProportional(YbeError):
    """A matrix expected to be a scalar multiple of the identity is not."""


class NoSolution(YbeError):
    """No rational candidate survived exact verification."""
