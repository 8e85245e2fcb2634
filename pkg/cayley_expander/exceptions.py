"""
Exceptions
==========
"""


class ExpanderError(Exception):
    """Base class for errors raised by cayley_expander"""


class ModulusError(ExpanderError, ValueError):
    """Modulus below 2, or two group elements with different moduli"""


class GraphError(ExpanderError, ValueError):
    """Malformed graph, unknown edge, out of range index or shape mismatch"""


class DisconnectedGraphError(GraphError):
    pass


class GraphTooLargeError(GraphError):
    """Input exceeds the size cap of an exhaustive computation"""


class InvalidDistributionError(ExpanderError, ValueError):
    pass


class ConvergenceError(ExpanderError, RuntimeError):
    """Iteration budget exhausted"""


class ConsistencyError(ExpanderError, RuntimeError):
    """A proven bound or cross-module identity failed to hold"""
