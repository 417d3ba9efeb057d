"""Exception types shared across the package."""


class HypothesisError(ValueError):
    """A case's standing hypotheses are violated (e.g. N <= 2k, beta >= N - 4*gamma)."""


class QuadratureError(RuntimeError):
    """A quadrature rule could not be built or evaluated on the requested domain."""


class InternalConsistencyError(AssertionError):
    """Two internal routes to the same quantity disagree.

    Raised when a cross-check that should hold by construction fails, such as a
    chain replay whose endpoint constants differ from the closed forms.
    """
