"""Exception hierarchy shared by every module."""


class OplabError(Exception):
    """Base class for all errors raised by oplab."""


class DomainError(OplabError, ValueError):
    """A parameter lies outside the domain where an operation is defined."""


class ConfigurationError(OplabError, ValueError):
    """A grid, rule, or suite configuration is unusable."""


class SingularityError(OplabError, ZeroDivisionError):
    """Evaluation requested at (or too close to) a pole."""


class BranchError(OplabError, ValueError):
    """A principal-branch power would be evaluated across its cut."""


class SpectrumError(OplabError, ValueError):
    """A resolvent was requested at a point of the spectrum."""


class DivergenceError(OplabError, ValueError):
    """An integral weight is not integrable at the origin."""


class PreconditionError(OplabError, ValueError):
    """An input does not lie in the subspace the operation acts on."""


class AliasingError(OplabError, ValueError):
    """A quadrature rule is too coarse to integrate the input exactly."""
