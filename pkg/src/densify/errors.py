"""Exception types shared across the package."""


class DensifyError(Exception):
    """Base class for all densify-specific errors."""


class SizeLimitError(DensifyError, ValueError):
    """An exact computation would exceed its declared size limits."""


class SpecError(DensifyError, ValueError):
    """A generator or sampling specification is invalid."""


class ConsistencyError(DensifyError, ValueError):
    """Two artifacts that must describe the same scene disagree."""


class InputDataError(DensifyError):
    """An input file is missing, malformed, or yields no usable rows."""


class NoDatasetError(DensifyError):
    """A session operation needs a dataset but none is loaded."""


class DecayUnachievableError(DensifyError):
    """No sampling fraction achieves the requested ratio decay.

    Carries the smallest decay that is achievable at the granularity of the
    sampling grid, so callers can report it.
    """

    def __init__(self, smallest_decay: float):
        self.smallest_decay = smallest_decay
        super().__init__(
            f"no sampling fraction achieves the requested decay; "
            f"smallest achievable decay is {smallest_decay:.4f}"
        )
