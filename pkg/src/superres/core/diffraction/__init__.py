from .quadrature import QuadratureSpec, QuadratureResult, gauss_legendre, integrate_disc
from .kirchhoff import (
    convergence_report,
    detector_phase,
    diffracted_amplitude,
    diffracted_amplitude_by_aperture,
    nearfield_integrand,
    nearfield_kernel,
    spherical_wave,
)
from .farfield import disc_transform, farfield_amplitude
from .weyl import (
    WavevectorComponent,
    WeylReconstruction,
    evanescent_fraction,
    standing_wave,
    standing_wave_period,
    weyl_kz,
    weyl_reconstruct,
)


__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "gauss_legendre",
    "integrate_disc",
    "convergence_report",
    "detector_phase",
    "diffracted_amplitude",
    "diffracted_amplitude_by_aperture",
    "nearfield_integrand",
    "nearfield_kernel",
    "spherical_wave",
    "disc_transform",
    "farfield_amplitude",
    "WavevectorComponent",
    "WeylReconstruction",
    "evanescent_fraction",
    "standing_wave",
    "standing_wave_period",
    "weyl_kz",
    "weyl_reconstruct",
]
