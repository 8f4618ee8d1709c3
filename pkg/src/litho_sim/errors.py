"""Exception hierarchy shared by all modules."""


class LithoError(ValueError):
    """Base class for every error raised by litho_sim."""


class PreconditionError(LithoError):
    """An argument violates a documented precondition."""


class DegenerateBranchError(PreconditionError):
    """The two kets of an NMES branch coincide (2m == N)."""


class PhotonCutoffError(PreconditionError):
    """A photon number exceeds the exact-combinatorics cutoff."""


class NoFringeError(LithoError):
    """A curve has no resolvable maximum/minimum pair."""
