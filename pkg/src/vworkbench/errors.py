"""Exception types shared across the package."""


class VWError(Exception):
    """Base class for all package errors."""


class InvalidDiagramError(VWError):
    """A diagram violates a structural or variant constraint."""


class TokenMismatchError(VWError):
    """An orienting monomial does not cover a diagram's generators exactly once."""


class NonTerminationError(VWError):
    """The Arnold rewriting exceeded its decreasing-measure bound (a bug)."""


class FieldRequiredError(VWError):
    """An operation needs a field but was handed the integers."""


class ResourceLimitError(VWError):
    """A configured size or time cap was exceeded."""


class ClosureViolationError(VWError):
    """A subcomplex differential left its span (a convention bug)."""


class NonHomogeneousError(VWError):
    """A sign needed a homogeneous total degree but the input mixes parities."""


class OddDegreeError(VWError):
    """Divided powers of an odd-degree element outside characteristic 2."""


class ArityMismatchError(VWError):
    """A gluing base diagram has the wrong number of active points."""


class TopAsteriskError(VWError):
    """A gluing base diagram carries top asterisks."""


class VariantMismatchError(VWError):
    """A linear combination is not supported on the expected diagram variant."""


class NotAChainMapError(VWError):
    """A commuting-square check failed for a named chain map."""
