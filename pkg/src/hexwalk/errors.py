"""Library-specific exceptions.

Invalid parameters raise the builtin ``ValueError``; ``NumericalError``
marks computations that failed for numerical reasons (lost root bracket,
singular evaluation point, too few fit points).
"""


class NumericalError(RuntimeError):
    """A numerical procedure failed to produce a trustworthy result."""
