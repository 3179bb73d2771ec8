"""Exceptions raised by the library.

``Infeasible`` subclasses signal a mathematical obstruction (the CLI exits
with status 2 for those); everything else is a usage or input problem.
"""


class TropcramError(Exception):
    pass


class PreconditionError(TropcramError, ValueError):
    """An input violates the documented preconditions of an operation."""


class UnsupportedSemiring(PreconditionError):
    """The semiring lacks a structural property the algorithm relies on."""


class BruteForceBoundExceeded(PreconditionError):
    """A permutation expansion was requested above the configured size."""


class Infeasible(TropcramError):
    """A mathematical obstruction, reported with a certificate when known."""


class StructurallySingular(Infeasible):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DivergentStar(Infeasible):
    def __init__(self, message, circuit_node=None):
        super().__init__(message)
        self.circuit_node = circuit_node


class TransportInfeasible(Infeasible):
    pass


class NoMonotoneWitness(Infeasible):
    """No thin element can continue a monotone iteration at this step."""
