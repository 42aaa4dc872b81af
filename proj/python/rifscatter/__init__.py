"""Spontaneous vacuum emission at a moving refractive index front.

Thin wrapper over the compiled core. All functions accept an optional
``config`` dict of ``key=value`` overrides using the same keys as the CLI
(``config_keys()`` lists them); frequencies cross the boundary in rad/s and
wavelengths in meters.
"""

from ._core import (
    RifError,
    config_keys,
    defaults,
    group_velocity,
    lab_spectrum,
    moving_spectrum,
    photon_number,
    refractive_index,
    scattering_matrix,
    sli_edges,
    solve_modes,
    version,
)

__version__ = version()

__all__ = [
    "RifError",
    "config_keys",
    "defaults",
    "group_velocity",
    "lab_spectrum",
    "moving_spectrum",
    "photon_number",
    "refractive_index",
    "scattering_matrix",
    "sli_edges",
    "solve_modes",
    "version",
]
