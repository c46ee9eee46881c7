"""Exception types shared across the package."""


class ZeroNormError(ValueError):
    """A vector that must carry energy is identically zero."""


class AllElementsOffError(ValueError):
    """A layout operation needs at least one radiating element."""


class NoPeakError(ValueError):
    """A power pattern has no distinct main-beam peak."""


class EmptySidelobeRegionError(ValueError):
    """A sidelobe metric was requested but the sidelobe region is empty."""


class NoFeasibleThinningError(RuntimeError):
    """No element count K <= N satisfies the matching threshold."""


class ConfigError(ValueError):
    """An experiment configuration file is missing, malformed or inconsistent."""
