"""Spectral toolkit for -h^2*Laplacian + i*x1 on a circular annulus
(Neumann at the inner circle, Dirichlet at the outer one), its
boundary-layer eigenvalue asymptotics, and the associated 1D model
operators (complex Airy, rotated harmonic oscillator)."""

from .annulus import AnnulusGeometry, BasisMode, build_basis, radial_roots
from .asymptotics import lambda_app, match_spectrum
from .eigensolve import Spectrum, eig_dense, match_conjugates, smin_grid
from .galerkin import GalerkinSystem, assemble
from .model1d import (
    converged_halfline_spectrum,
    left_margin,
    rotated_oscillator_spectrum,
)
from .specfun import airy_ai, airy_zeros, bessel_jy, gauss_legendre

__version__ = "0.1.0"
