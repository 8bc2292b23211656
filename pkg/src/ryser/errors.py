"""Exception hierarchy shared by all ryser modules."""


class RyserError(Exception):
    """Base class for all errors raised by this package."""


# --- finite fields ---

class NotPrimeError(RyserError):
    pass


class DegenerateDegreeError(RyserError):
    pass


class SizeExceededError(RyserError):
    pass


class ZeroInverseError(RyserError):
    pass


# --- planes ---

class InvalidPointIndexError(RyserError):
    pass


# --- hypergraphs / .rhg files ---

class EmptyHypergraphError(RyserError):
    pass


class PartitenessError(RyserError):
    """An edge uses two vertices from the same side."""


class DuplicateEdgeError(RyserError):
    pass


class UniformityError(RyserError):
    """Edge sizes are not all equal and not two consecutive integers."""


class ParseError(RyserError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# --- solver ---

class SolverTimeout(RyserError):
    """Search exceeded its wall-clock budget; no certificate produced."""


class TooLargeError(RyserError):
    pass


class NonUniformError(RyserError):
    pass


# --- construction ---

class InvalidSpecError(RyserError):
    pass


class BadEdgeSizeError(RyserError):
    pass


class InvalidProfileError(RyserError):
    pass


class LineNotFoundError(RyserError):
    """The base hypergraph lacks the unique connecting edge a true
    truncated plane would have; treated as input corruption."""


class MissingLabelsError(RyserError):
    pass


# --- analysis ---

class NotExtremalError(RyserError):
    pass


class ViolationsPresentError(RyserError):
    pass


# --- cli ---

class ConfigError(RyserError):
    pass
