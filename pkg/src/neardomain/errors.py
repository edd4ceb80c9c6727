"""Exception types shared across the package."""


class NearDomainError(Exception):
    """Base class for all package errors."""


class TableFormatError(NearDomainError):
    """Malformed table data or table file: wrong shape, bad entries, bad syntax."""


class GroupFormatError(NearDomainError):
    """Malformed permutation group data or group file."""


class ConstructionError(NearDomainError):
    """A constructor's validity check failed (bad parameters or a broken convention)."""


class AxiomError(NearDomainError):
    """An operation that requires a near-domain was fed a table that is not one."""


class ContractError(NearDomainError):
    """A documented precondition was violated (unsupported input, out of range, too large)."""
