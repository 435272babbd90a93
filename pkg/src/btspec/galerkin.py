"""Galerkin matrices of the annulus operator in the Laplacian eigenbasis.

The operator -h^2*Laplacian + i*x1 acts on the basis coefficients as the
complex symmetric matrix A = h^2*diag(k^2) + i*B, where B holds the
projections of the multiplier x1 = r*cos(theta) onto pairs of basis modes.
The angular integral kills every entry except |m - m'| = 1 with matching
parity, so the even (cos) and odd (sin) sectors decouple into blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .annulus import AnnulusGeometry, BasisMode
from .specfun import QuadratureRule

__all__ = [
    "GalerkinSystem",
    "QuadratureConvergenceError",
    "angular_coupling",
    "radial_coupling",
    "assemble",
]

# Max change of any B entry allowed when the quadrature order is doubled.
QUADRATURE_TOL = 1e-10


class QuadratureConvergenceError(RuntimeError):
    """Doubling the quadrature order moved a projection entry too much."""


def angular_coupling(m: int, parity: str, m2: int, parity2: str) -> float:
    """Normalized angular integral of ang_m * cos(theta) * ang_m2.

    ang_m is the L2-normalized angular factor (cos(m theta)/sqrt(pi) etc.).
    Nonzero only for |m - m2| = 1 with equal parity; the value is
    1/sqrt(2) when the pair involves m = 0 and 1/2 otherwise.
    """
    if parity != parity2 or abs(m - m2) != 1:
        return 0.0
    if parity == "odd" and min(m, m2) == 0:
        return 0.0
    if min(m, m2) == 0:
        return 1.0 / np.sqrt(2.0)
    return 0.5


def radial_coupling(mode_i: BasisMode, mode_j: BasisMode,
                    geometry: AnnulusGeometry, rule: QuadratureRule) -> float:
    """Quadrature of R~_i(r) R~_j(r) r^2 over (1, R), radially normalized parts.

    One power of r comes from x1 = r cos(theta), the other from the polar
    area element.  The result must be converged: doubling the rule order
    may change it by at most QUADRATURE_TOL.
    """
    if abs(mode_i.m - mode_j.m) != 1:
        raise ValueError("radial_coupling requires |m_i - m_j| = 1")

    def value(q: QuadratureRule) -> float:
        r, w = q.mapped(1.0, geometry.r_outer)
        return float(np.sum(mode_i.radial_normalized(r)
                            * mode_j.radial_normalized(r) * r * r * w))

    from .specfun import gauss_legendre

    v = value(rule)
    v2 = value(gauss_legendre(2 * rule.order))
    if abs(v2 - v) > QUADRATURE_TOL:
        raise QuadratureConvergenceError(
            f"radial projection not converged for modes "
            f"(m={mode_i.m},n={mode_i.n}) x (m={mode_j.m},n={mode_j.n}): "
            f"order doubling moved the value by {abs(v2 - v):.3e}")
    return v


@dataclass
class GalerkinSystem:
    """Truncated matrices of the annulus operator.

    modes are ordered even sector first, then odd; Lambda holds k^2 per
    mode and B the x1 projections.  parity_blocks maps sector name to the
    index slice of its (decoupled) block.
    """

    h: float
    geometry: AnnulusGeometry
    modes: list[BasisMode]
    Lambda: np.ndarray
    B: np.ndarray
    parity_blocks: dict[str, slice] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.modes)

    def operator_matrix(self, sector: str | None = None) -> np.ndarray:
        """Dense complex symmetric matrix h^2*diag(Lambda) + i*B (or one block)."""
        sl = slice(None) if sector is None else self.parity_blocks[sector]
        lam = self.Lambda[sl]
        return np.diag(self.h ** 2 * lam).astype(complex) + 1j * self.B[sl, sl]

    def sector_of(self, index: int) -> str:
        return self.modes[index].parity


def _radial_matrix(modes: list[BasisMode], r: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Rows of radially normalized mode values at the quadrature nodes."""
    return np.vstack([md.radial_normalized(r) for md in modes])


def assemble(h: float, geometry: AnnulusGeometry, basis: list[BasisMode],
             rule: QuadratureRule) -> GalerkinSystem:
    """Assemble Lambda and B for the given basis.

    B is built blockwise between adjacent angular indices within each
    parity sector (the selection rule makes every other entry zero) and
    mirrored, so it is exactly symmetric.  Every block is checked for
    quadrature convergence against a rule of doubled order.
    """
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    if not basis:
        raise ValueError("basis must be nonempty")

    modes = sorted(basis, key=lambda md: (md.parity == "odd", md.m, md.n))
    N = len(modes)
    Lambda = np.array([md.lam for md in modes])
    B = np.zeros((N, N))

    parity_blocks: dict[str, slice] = {}
    start = 0
    for parity in ("even", "odd"):
        count = sum(1 for md in modes if md.parity == parity)
        if count:
            parity_blocks[parity] = slice(start, start + count)
            start += count

    from .specfun import gauss_legendre

    r, w = rule.mapped(1.0, geometry.r_outer)
    rule2 = gauss_legendre(2 * rule.order)
    r2, w2 = rule2.mapped(1.0, geometry.r_outer)

    for parity, block in parity_blocks.items():
        sector = modes[block.start:block.stop]
        by_m: dict[int, list[int]] = {}
        for local, md in enumerate(sector):
            by_m.setdefault(md.m, []).append(block.start + local)
        for m in sorted(by_m):
            if m + 1 not in by_m:
                continue
            rows = by_m[m]
            cols = by_m[m + 1]
            ang = angular_coupling(m, parity, m + 1, parity)
            left = [modes[i] for i in rows]
            right = [modes[j] for j in cols]
            V1 = _radial_matrix(left, r, w)
            W1 = _radial_matrix(right, r, w)
            blk = ang * (V1 * (r * r * w)) @ W1.T
            V2 = _radial_matrix(left, r2, w2)
            W2 = _radial_matrix(right, r2, w2)
            blk2 = ang * (V2 * (r2 * r2 * w2)) @ W2.T
            defect = np.max(np.abs(blk2 - blk)) if blk.size else 0.0
            if defect > QUADRATURE_TOL:
                raise QuadratureConvergenceError(
                    f"projection block m={m}<->{m + 1} ({parity}) not "
                    f"converged: order doubling moved entries by {defect:.3e}")
            B[np.ix_(rows, cols)] = blk
            B[np.ix_(cols, rows)] = blk.T

    return GalerkinSystem(h=h, geometry=geometry, modes=modes,
                          Lambda=Lambda, B=B, parity_blocks=parity_blocks)
