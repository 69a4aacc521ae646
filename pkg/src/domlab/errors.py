"""Exception hierarchy shared by every module."""


class DomlabError(Exception):
    """Base class for all errors raised by domlab."""


class InvalidInstanceError(DomlabError, ValueError):
    """An instance descriptor violates its preconditions (e.g. a factor size below 2)."""


class InvalidArgumentError(DomlabError, ValueError):
    """An argument is malformed for the instance it is used with."""


class NotApplicableError(DomlabError):
    """A construction or reduction was requested outside its hypotheses."""


class CapacityError(DomlabError):
    """The requested computation exceeds a configured size or enumeration budget."""


class SchemaError(DomlabError, ValueError):
    """A serialized certificate or payload does not match the expected schema."""


class CertificateRejected(DomlabError):
    """A certificate failed verification.

    ``which`` names the failing certificate (e.g. ``"total_dominating"`` or
    ``"run_witness"``) and ``reason`` gives a human readable explanation.
    """

    def __init__(self, which, reason):
        super().__init__(f"{which}: {reason}")
        self.which = which
        self.reason = reason


class SolverTimeout(DomlabError):
    """The exact solver ran out of time.

    The exception carries the proven interval ``lower <= value <= upper``
    and the best witness found so far.
    """

    def __init__(self, lower, upper, witness=None, nodes_explored=0):
        super().__init__(f"time limit reached; value in [{lower}, {upper}]")
        self.lower = lower
        self.upper = upper
        self.witness = witness
        self.nodes_explored = nodes_explored
