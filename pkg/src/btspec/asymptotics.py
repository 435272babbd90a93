"""Boundary-layer eigenvalue asymptotics for the annulus operator,
matching of computed spectra against them, and eigenmode localization.

Two families of branches exist: inner-Neumann modes clinging to the
r = 1 circle (leading term i, independent of the outer radius) and
outer-Dirichlet modes at r = R (leading term i R).  Both formulas carry
an O(h^{5/3}) remainder, which sets the matching tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .annulus import AnnulusGeometry, BasisMode
from .eigensolve import Spectrum
from .specfun import airy_zeros, gauss_legendre

__all__ = [
    "AsymptoticEigenvalue",
    "LocalizationReport",
    "MatchResult",
    "lambda_app",
    "generate_candidates",
    "match_spectrum",
    "localize",
]

INNER_NEUMANN = "inner-N"
OUTER_DIRICHLET = "outer-D"


@dataclass(frozen=True)
class AsymptoticEigenvalue:
    """One approximate eigenvalue branch value.

    boundary is "inner-N" or "outer-D"; n indexes the Airy zero, k the
    transverse excitation; order is the exponent of the h-power remainder.
    """

    boundary: str
    n: int
    k: int
    value: complex
    order: float = 5.0 / 3.0

    @property
    def label(self) -> str:
        tag = "N" if self.boundary == INNER_NEUMANN else "D"
        return f"{tag}({self.n},{self.k})"


@dataclass
class LocalizationReport:
    eigen_index: int
    inner_mass: float
    outer_mass: float
    label: str  # "inner", "outer" or "delocalized"


@dataclass
class MatchResult:
    """Greedy nearest matching of computed eigenvalues to branch values."""

    matches: dict[int, AsymptoticEigenvalue]
    unmatched_eigenvalues: list[int]
    unmatched_candidates: list[AsymptoticEigenvalue]
    tolerance: float


def lambda_app(boundary: str, n: int, k: int, h: float, R: float) -> complex:
    """Approximate eigenvalue of branch (n, k) at the given h and R."""
    if h <= 0 or R <= 1:
        raise ValueError("require h > 0 and R > 1")
    zeros = airy_zeros(n)
    if boundary == INNER_NEUMANN:
        apn = abs(zeros.a_prime[n - 1])
        return (1j
                + h ** (2.0 / 3.0) * apn * np.exp(1j * math.pi / 3.0)
                + h * (2 * k - 1) * np.exp(-1j * math.pi / 4.0) / math.sqrt(2.0)
                + h ** (4.0 / 3.0) * np.exp(1j * math.pi / 6.0) / (2.0 * apn))
    if boundary == OUTER_DIRICHLET:
        an = abs(zeros.a[n - 1])
        return (1j * R
                + h ** (2.0 / 3.0) * an * np.exp(-1j * math.pi / 3.0)
                + h * (2 * k - 1) * np.exp(-1j * math.pi / 4.0) / math.sqrt(2.0 * R))
    raise ValueError(f"unknown boundary {boundary!r}")


def generate_candidates(h: float, R: float, n_max: int = 2, k_max: int = 6,
                        conjugates: bool = True) -> list[AsymptoticEigenvalue]:
    """All branch values with n <= n_max, k <= k_max.

    All integer k are generated; which of them are realized (per parity
    sector) is left to the matching report.  Conjugate partners (the
    localization points at x1 = -1 and the mirrored outer point) are
    produced explicitly when requested.
    """
    cands = []
    for boundary in (INNER_NEUMANN, OUTER_DIRICHLET):
        for n in range(1, n_max + 1):
            for k in range(1, k_max + 1):
                val = lambda_app(boundary, n, k, h, R)
                cands.append(AsymptoticEigenvalue(boundary, n, k, val))
                if conjugates:
                    cands.append(AsymptoticEigenvalue(boundary, n, k,
                                                      complex(np.conj(val))))
    return cands


def match_spectrum(spectrum: Spectrum, h: float,
                   candidates: list[AsymptoticEigenvalue],
                   tolerance: float | None = None) -> MatchResult:
    """Greedy nearest-neighbor matching in the complex plane.

    Pairs are accepted closest-first while the distance stays within the
    tolerance, default 20 * h^{5/3} (the remainder order of the formulas
    with a safety constant).
    """
    tol = 20.0 * h ** (5.0 / 3.0) if tolerance is None else tolerance
    w = spectrum.eigenvalues
    dists = []
    for ci, cand in enumerate(candidates):
        d = np.abs(w - cand.value)
        for ei in np.nonzero(d <= tol)[0]:
            dists.append((d[ei], int(ei), ci))
    dists.sort(key=lambda t: t[0])
    matches: dict[int, AsymptoticEigenvalue] = {}
    used_c: set[int] = set()
    for d, ei, ci in dists:
        if ei in matches or ci in used_c:
            continue
        matches[ei] = candidates[ci]
        used_c.add(ci)
    unmatched_e = [i for i in range(len(w)) if i not in matches]
    unmatched_c = [c for i, c in enumerate(candidates) if i not in used_c]
    return MatchResult(matches=matches, unmatched_eigenvalues=unmatched_e,
                       unmatched_candidates=unmatched_c, tolerance=tol)


def localize(spectrum: Spectrum, basis: list[BasisMode],
             geometry: AnnulusGeometry, h: float,
             indices: list[int] | None = None,
             threshold: float = 0.8) -> list[LocalizationReport]:
    """Classify eigenmodes by the L2 mass near each boundary circle.

    The eigenfunction u = sum_i c_i mode_i is reconstructed on a polar
    quadrature grid (Gauss-Legendre radially, uniform trapezoid in theta,
    exact for the trigonometric angular content); the shell width is
    delta = 5 h^{2/3}, several boundary-layer widths.
    """
    if spectrum.eigenvectors is None:
        raise ValueError("localization requires eigenvectors")
    R = geometry.r_outer
    delta = 5.0 * h ** (2.0 / 3.0)
    if indices is None:
        indices = list(range(len(spectrum)))

    n_max = max(md.n for md in basis)
    rule = gauss_legendre(max(128, 6 * n_max))
    r, wr = rule.mapped(1.0, R)
    n_theta = 4 * (max(md.m for md in basis) + 1)
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    w_theta = 2.0 * math.pi / n_theta

    # mode values factorize: radial profile (per mode) x angular profile
    radial_vals = np.vstack([md.norm_const * md.radial(r) for md in basis])
    angular_vals = np.vstack([
        np.cos(md.m * theta) if md.parity == "even" else np.sin(md.m * theta)
        for md in basis
    ])

    inner_shell = r <= 1.0 + delta
    outer_shell = r >= R - delta
    reports = []
    for idx in indices:
        c = spectrum.eigenvectors[:, idx]
        if not np.any(c):
            raise ValueError(f"zero coefficient vector at index {idx}")
        u = (c[:, None] * radial_vals).T @ angular_vals  # (n_r, n_theta)
        density = np.sum(np.abs(u) ** 2, axis=1) * w_theta * r * wr
        total = density.sum()
        inner_mass = float(density[inner_shell].sum() / total)
        outer_mass = float(density[outer_shell].sum() / total)
        if inner_mass > threshold:
            label = "inner"
        elif outer_mass > threshold:
            label = "outer"
        else:
            label = "delocalized"
        reports.append(LocalizationReport(eigen_index=idx, inner_mass=inner_mass,
                                          outer_mass=outer_mass, label=label))
    return reports
