"""Constant-angle surfaces in warped products I x_f E^2.

Thin Python layer over the C++ core: build the generated families (or
symbolic / sampled surfaces), read pointwise geometry, run the verification
suites and classify unknown grids.
"""

import json as _json

from ._core import (
    Error,
    Spec,
    Surface,
    __version__,
    make_surface,
    minimal_power_angle,
    surface_from_expression,
    surface_from_samples,
)


def verify(surface, suite="all", nu=24, nv=24):
    """Run a verification suite and return the report as a dict."""
    return _json.loads(surface.verify_json(suite, nu, nv))


__all__ = [
    "Error",
    "Spec",
    "Surface",
    "__version__",
    "make_surface",
    "minimal_power_angle",
    "surface_from_expression",
    "surface_from_samples",
    "verify",
]
