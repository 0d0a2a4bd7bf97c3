"""Properly embedded minimal disks Sigma_a in a fixed cylinder, with curvature blow-up at the origin.

The family comes from the Weierstrass data g_a = exp(i arctan(z/a)/a), dz on
unbounded domains Omega_a.  The modules build the surfaces and check their
quantitative properties numerically.
"""

from .domain import THETA0, X_A, X_B, DomainSpec, half_width
from .errors import (
    InvalidResolution,
    OutsideDomain,
    PathLeavesDomain,
    QuadratureFailure,
    RectNotInDomain,
    SingularityProximity,
    SpiralDiskError,
    ZeroSliceHeight,
)
from .immersion import QuadratureConfig, SurfaceSample, TriangleMesh, build_mesh, immerse
from .slices import SliceCurve, excursion, slice_curve
from .weierstrass import PlanePoint, WeierstrassParams, eval_h

__version__ = "0.1.0"
