"""Exception hierarchy shared by all modules."""


class ArtinError(ValueError):
    """Base class for invalid-input errors raised by this package."""


class InvalidG(ArtinError):
    """g is 0, -1 or a perfect square."""


class NotCoprime(ArtinError):
    pass


class NotSquarefree(ArtinError):
    pass


class DegenerateH(ArtinError):
    """C(h) vanishes, which happens only for even h."""


class PreconditionViolated(ArtinError):
    pass
