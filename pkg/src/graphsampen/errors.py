"""Exception hierarchy.

Everything raised by this package derives from :class:`GraphSampEnError`.
Errors that mean "the entropy of this input is undefined" (rather than
"the input is malformed") derive from :class:`EntropyUndefined` so callers
can catch the whole family when aggregating over repetitions.
"""


class GraphSampEnError(Exception):
    """Base class for all errors raised by graphsampen."""


class InvalidParameter(GraphSampEnError, ValueError):
    """A parameter is outside its documented domain."""


class InvalidSize(InvalidParameter):
    """A requested structure is too small to construct."""


class DimensionMismatch(GraphSampEnError, ValueError):
    """Array lengths or profile depths do not line up."""


class InvalidPermutation(GraphSampEnError, ValueError):
    """A relabeling is not a bijection on the node set."""


class EntropyUndefined(GraphSampEnError):
    """The sample entropy of this input is undefined."""


class InsufficientPatterns(EntropyUndefined):
    """Fewer than two templates are available for matching."""

    def __init__(self, message, n_templates_m=None, n_templates_m1=None):
        super().__init__(message)
        self.n_templates_m = n_templates_m
        self.n_templates_m1 = n_templates_m1


class NoMatches(EntropyUndefined):
    """No template pair matched at dimension m (B = 0)."""

    def __init__(self, message, epsilon=None, n_templates_m=None, n_templates_m1=None):
        super().__init__(message)
        self.epsilon = epsilon
        self.n_templates_m = n_templates_m
        self.n_templates_m1 = n_templates_m1


class NoExtendedMatches(EntropyUndefined):
    """Matches exist at dimension m but none extend to m+1 (A = 0, B > 0).

    Carries the mean match count ``b`` so callers can decide their own
    aggregation policy (e.g. treat the result as +infinity).
    """

    def __init__(self, message, b, epsilon=None, n_templates_m=None, n_templates_m1=None):
        super().__init__(message)
        self.b = b
        self.epsilon = epsilon
        self.n_templates_m = n_templates_m
        self.n_templates_m1 = n_templates_m1


class OracleTooLarge(GraphSampEnError):
    """The brute-force reference refuses inputs this large."""


class DegenerateDegree(GraphSampEnError, ValueError):
    """An operation requiring positive degrees met an isolated node."""


class ParseError(GraphSampEnError):
    """A text input failed to parse; carries the 1-based line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class FormatError(GraphSampEnError):
    """A file or structure violates its documented format."""


class EmptyGraph(GraphSampEnError):
    """A construction produced a graph with no edges at all."""


class CoverageError(GraphSampEnError):
    """A resampling grid point has no bracketing raw samples."""

    def __init__(self, message, sensor=None):
        super().__init__(message)
        self.sensor = sensor


class WriteError(GraphSampEnError):
    """Result serialisation failed."""
