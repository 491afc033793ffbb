"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the physical or mathematical domain of an operation."""


class LayoutError(ValueError):
    """Sub-mode labels or dimensions are inconsistent with the requested operation."""
