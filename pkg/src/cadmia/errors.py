"""Exception hierarchy shared by the library and the command line front end."""


class CadmiaError(Exception):
    """Base class for all errors raised by :mod:`cadmia`."""


class DomainError(CadmiaError, ValueError):
    """An argument lies outside the domain of a mathematical operation."""


class FixtureError(CadmiaError, ValueError):
    """Tabulated input data (spectral curves, humidity tables) is malformed."""


class ConfigError(CadmiaError, ValueError):
    """A scenario configuration is invalid or incomplete."""


class GridError(CadmiaError, ValueError):
    """Mesh parameters violate the ``N * step == 1`` identity or nesting rules."""


class CapacityError(CadmiaError, MemoryError):
    """A requested computation exceeds the configured resource limits."""
