"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`StabcapError`, so the CLI can map them to exit code 2.
"""


class StabcapError(Exception):
    """Base class for all package errors."""


class DomainError(StabcapError, ValueError):
    """An argument lies outside the domain of an operation."""


class UnsupportedRegion(StabcapError):
    """No exact data is available for this range of the ellipsoid parameter."""


class UnsupportedPartition(StabcapError):
    """A gluing coefficient was requested for a partition shape we do not model."""


class RationalParam(StabcapError, ValueError):
    """An operation needs an irrational (tilted) parameter but got an exact rational."""


class MalformedCertificate(StabcapError):
    """A certificate could not be parsed or is structurally invalid."""
