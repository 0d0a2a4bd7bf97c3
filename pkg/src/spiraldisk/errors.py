"""Exception types raised by spiraldisk."""

from __future__ import annotations


class SpiralDiskError(Exception):
    """Base class for all package errors."""


class SingularityProximity(SpiralDiskError, ValueError):
    """Evaluation point too close to the poles +-ia or on the branch set."""

    def __init__(self, z, message: str | None = None):
        self.z = z
        super().__init__(message or f"point {z!r} is too close to a singularity of h_a")


class OutsideDomain(SpiralDiskError, ValueError):
    def __init__(self, z, a: float):
        self.z = z
        self.a = a
        super().__init__(f"point {z!r} lies outside Omega_a for a={a}")


class PathLeavesDomain(SpiralDiskError, ValueError):
    pass


class RectNotInDomain(SpiralDiskError, ValueError):
    pass


class QuadratureFailure(SpiralDiskError, RuntimeError):
    def __init__(self, message: str, error_estimate: float = float("nan")):
        self.error_estimate = error_estimate
        super().__init__(message)


class InvalidResolution(SpiralDiskError, ValueError):
    pass


class ZeroSliceHeight(SpiralDiskError, ValueError):
    pass
