"""Orthonormal Laplacian eigenbasis of the annulus 1 < |x| < R.

Boundary conditions: Neumann at r = 1, Dirichlet at r = R.  The radial
part of each mode is the Bessel cross product

    R_{m,n}(r) = J_m(k r) Y'_m(k) - Y_m(k r) J'_m(k),

which satisfies the Neumann condition at r = 1 identically; the radial
wavenumbers k are the positive roots of the Dirichlet condition

    F_m(k) = J'_m(k) Y_m(k R) - Y'_m(k) J_m(k R) = 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import special as _sp
from scipy.optimize import brentq

from .specfun import QuadratureRule, gauss_legendre

__all__ = [
    "AnnulusGeometry",
    "BasisMode",
    "RootScanError",
    "radial_roots",
    "build_basis",
    "evaluate_mode",
    "save_basis",
    "load_basis",
]

BASIS_SCHEMA = "btspec-basis-v1"


class RootScanError(RuntimeError):
    """Root scan failed (suspected missed or spurious root in an interval)."""


@dataclass(frozen=True)
class AnnulusGeometry:
    """Circular annulus 1 < |x| < r_outer."""

    r_outer: float
    r_inner: float = 1.0

    def __post_init__(self):
        if not self.r_outer > 1.0:
            raise ValueError(f"r_outer must exceed 1, got {self.r_outer}")
        if self.r_inner != 1.0:
            raise ValueError("inner radius is fixed at 1")


@dataclass(frozen=True)
class BasisMode:
    """One Laplacian eigenmode of the annulus.

    lam = k**2 is the eigenvalue of -Laplacian; norm_const is the overall
    constant making norm_const * R_{m,n}(r) * {cos,sin}(m theta) have unit
    L2 norm on the annulus.
    """

    m: int
    parity: str  # "even" (cos) or "odd" (sin)
    n: int
    k: float
    lam: float
    norm_const: float

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if self.parity == "odd" and self.m == 0:
            raise ValueError("odd parity requires m >= 1 (sin(0*theta) vanishes)")

    @property
    def angular_factor(self) -> float:
        """Integral over theta of the squared (unnormalized) angular part."""
        return 2.0 * math.pi if (self.m == 0 and self.parity == "even") else math.pi

    def radial(self, r) -> np.ndarray:
        """Unnormalized cross-product radial function R_{m,n}(r)."""
        k = self.k
        return (_sp.jv(self.m, k * r) * _sp.yvp(self.m, k)
                - _sp.yv(self.m, k * r) * _sp.jvp(self.m, k))

    def radial_normalized(self, r) -> np.ndarray:
        """Radial part scaled to unit norm in L2((1,R), r dr)."""
        return self.norm_const * math.sqrt(self.angular_factor) * self.radial(r)


def _cross_product(m: int, k, r_outer: float):
    return (_sp.jvp(m, k) * _sp.yv(m, k * r_outer)
            - _sp.yvp(m, k) * _sp.jv(m, k * r_outer))


def radial_roots(geometry: AnnulusGeometry, m: int, n_max: int) -> np.ndarray:
    """First n_max positive roots of F_m, found by sign-change scan + brentq.

    The scan step pi / (8 (R-1)) is four times finer than the asymptotic
    root spacing pi / (R-1), guarding against near-double roots.  Each
    bracketed root is refined to machine precision and validated against
    the local envelope of F_m.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    R = geometry.r_outer
    step = math.pi / (8.0 * (R - 1.0))
    # No roots below the oscillatory regime k*R ~ m; starting the scan
    # there also avoids Y_m overflow at k << m.
    k_lo = max(1e-3, 0.7 * m / R)
    roots: list[float] = []
    chunk = 4096
    k_prev = k_lo
    f_prev = _cross_product(m, k_prev, R)
    while len(roots) < n_max:
        grid = k_prev + step * np.arange(1, chunk + 1)
        vals = _cross_product(m, grid, R)
        ks = np.concatenate(([k_prev], grid))
        fs = np.concatenate(([f_prev], vals))
        good = np.isfinite(fs)
        sign_change = good[:-1] & good[1:] & (fs[:-1] * fs[1:] < 0)
        for idx in np.nonzero(sign_change)[0]:
            a, b = ks[idx], ks[idx + 1]
            root = brentq(lambda k: _cross_product(m, k, R), a, b,
                          xtol=1e-14, rtol=8.9e-16)
            envelope = max(abs(fs[idx]), abs(fs[idx + 1]))
            if not abs(_cross_product(m, root, R)) < 1e-10 * max(envelope, 1e-300):
                raise RootScanError(
                    f"root refinement failed for m={m} in ({a}, {b})")
            roots.append(root)
            if len(roots) == n_max:
                break
        k_prev = ks[-1]
        f_prev = fs[-1]
    roots_arr = np.array(roots[:n_max])
    if np.any(np.diff(roots_arr) <= 0):
        raise RootScanError(f"non-increasing roots for m={m}")
    return roots_arr


def normalization_order(geometry: AnnulusGeometry,
                        roots: dict[int, np.ndarray]) -> int:
    """Quadrature order resolving products of the most oscillatory modes.

    The worst integrand oscillates at twice the largest radial wavenumber,
    so the node count must cover ~4 points per period of that product on
    [1, R]; the floor max(64, 4 n_max) matches the default truncation
    aspect and the cap keeps leggauss cheap.
    """
    n_max = max(len(ks) for ks in roots.values())
    k_top = max(float(ks[-1]) for ks in roots.values())
    oscillation = 1.5 * (geometry.r_outer - 1.0) * k_top
    return min(2048, max(64, 4 * n_max, math.ceil(oscillation)))


def build_basis(
    geometry: AnnulusGeometry,
    m_max: int,
    n_max: int,
    parities: tuple[str, ...] = ("even", "odd"),
    cache_dir: str | Path | None = None,
) -> list[BasisMode]:
    """All modes with m in [0, m_max], n in [1, n_max], requested parities.

    Odd parity is skipped at m = 0.  Normalization constants are computed
    with a Gauss-Legendre rule of order max(64, 4 n_max), which resolves
    the most oscillatory radial mode.  When cache_dir is given, a basis
    cached for the same (R, m_max, n_max) is reused (both parities are
    always cached).
    """
    if m_max < 0 or n_max < 1:
        raise ValueError("require m_max >= 0 and n_max >= 1")
    cache_path = None
    if cache_dir is not None:
        cache_path = Path(cache_dir) / _cache_name(geometry.r_outer, m_max, n_max)
        if cache_path.is_file():
            modes = load_basis(cache_path)
            return [md for md in modes if md.parity in parities]

    roots = {m: radial_roots(geometry, m, n_max) for m in range(m_max + 1)}
    rule = gauss_legendre(normalization_order(geometry, roots))
    r, wr = rule.mapped(1.0, geometry.r_outer)
    modes: list[BasisMode] = []
    for m in range(m_max + 1):
        ks = roots[m]
        for parity in ("even", "odd"):
            if parity == "odd" and m == 0:
                continue
            af = 2.0 * math.pi if (m == 0 and parity == "even") else math.pi
            for n, k in enumerate(ks, start=1):
                vals = (_sp.jv(m, k * r) * _sp.yvp(m, k)
                        - _sp.yv(m, k * r) * _sp.jvp(m, k))
                radial_norm_sq = float(np.sum(vals * vals * r * wr))
                norm_const = 1.0 / math.sqrt(af * radial_norm_sq)
                modes.append(BasisMode(m=m, parity=parity, n=n, k=float(k),
                                       lam=float(k * k), norm_const=norm_const))
    if cache_path is not None:
        save_basis(cache_path, geometry, m_max, n_max, modes)
    return [md for md in modes if md.parity in parities]


def evaluate_mode(mode: BasisMode, geometry: AnnulusGeometry, r, theta):
    """Value of the normalized eigenfunction at (r, theta)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < geometry.r_inner - 1e-12) or np.any(r > geometry.r_outer + 1e-12):
        raise ValueError("r outside the annulus")
    ang = np.cos(mode.m * np.asarray(theta)) if mode.parity == "even" \
        else np.sin(mode.m * np.asarray(theta))
    return mode.norm_const * mode.radial(r) * ang


def _cache_name(r_outer: float, m_max: int, n_max: int) -> str:
    return f"basis_R{r_outer:g}_m{m_max}_n{n_max}.json"


def save_basis(path: str | Path, geometry: AnnulusGeometry,
               m_max: int, n_max: int, modes: list[BasisMode]) -> None:
    doc = {
        "schema": BASIS_SCHEMA,
        "r_outer": geometry.r_outer,
        "m_max": m_max,
        "n_max": n_max,
        "modes": [
            {"m": md.m, "parity": md.parity, "n": md.n, "k": md.k,
             "lambda": md.lam, "norm_const": md.norm_const}
            for md in modes
        ],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc))


def load_basis(path: str | Path) -> list[BasisMode]:
    doc = json.loads(Path(path).read_text())
    if doc.get("schema") != BASIS_SCHEMA:
        raise ValueError(f"unexpected basis schema in {path}: {doc.get('schema')!r}")
    return [
        BasisMode(m=entry["m"], parity=entry["parity"], n=entry["n"],
                  k=entry["k"], lam=entry["lambda"],
                  norm_const=entry["norm_const"])
        for entry in doc["modes"]
    ]
