"""Dense non-Hermitian eigensolvers and smallest-singular-value grids.

eig_dense wraps LAPACK's balanced Hessenberg + implicitly shifted QR
driver (scipy.linalg.eig); smin_grid evaluates the smallest singular
value of (A - z) over a complex rectangle, whose reciprocal is the
resolvent norm of the truncated operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg as la

__all__ = [
    "Spectrum",
    "ResolventGrid",
    "EigenConvergenceError",
    "eig_dense",
    "smin_grid",
    "match_conjugates",
]


class EigenConvergenceError(RuntimeError):
    """The QR iteration failed to converge."""


@dataclass
class Spectrum:
    """Eigenvalues sorted by increasing real part (ties by imaginary part).

    eigenvectors, when requested, are coefficient vectors in the assembly
    basis, column i belonging to eigenvalues[i]; residuals are the
    backward errors ||A v - lambda v|| / ||v||.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    sectors: list[str] | None = None
    residuals: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.eigenvalues)


@dataclass
class ResolventGrid:
    """smin(A - z) over the rectangle re x im; 1/smin is the resolvent norm."""

    re: np.ndarray
    im: np.ndarray
    smin: np.ndarray  # shape (len(im), len(re))


def eig_dense(A: np.ndarray, want_vectors: bool = False,
              sector: str | None = None) -> Spectrum:
    """All eigenvalues (optionally eigenvectors) of a dense square matrix.

    Balancing is applied by the LAPACK driver before the Hessenberg
    reduction; with vectors requested, per-pair backward errors are
    computed and must sit at the 1e-8 * ||A|| level.
    """
    A = np.ascontiguousarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A must be square")
    if not np.all(np.isfinite(A)):
        raise ValueError("A has non-finite entries")
    try:
        if want_vectors:
            w, v = la.eig(A)
        else:
            w = la.eigvals(A)
            v = None
    except la.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise EigenConvergenceError(str(exc)) from exc

    order = np.lexsort((w.imag, w.real))
    w = w[order]
    residuals = None
    if v is not None:
        v = v[:, order]
        resid = A @ v - v * w[np.newaxis, :]
        residuals = np.linalg.norm(resid, axis=0) / np.linalg.norm(v, axis=0)
    sectors = [sector] * len(w) if sector is not None else None
    return Spectrum(eigenvalues=w, eigenvectors=v, sectors=sectors,
                    residuals=residuals)


def merge_spectra(*spectra: Spectrum) -> Spectrum:
    """Union of spectra (e.g. both parity sectors), re-sorted."""
    w = np.concatenate([s.eigenvalues for s in spectra])
    sectors = None
    if all(s.sectors is not None for s in spectra):
        sectors = [tag for s in spectra for tag in s.sectors]
    order = np.lexsort((w.imag, w.real))
    if sectors is not None:
        sectors = [sectors[i] for i in order]
    return Spectrum(eigenvalues=w[order], sectors=sectors)


def smin_grid(A: np.ndarray, re: np.ndarray, im: np.ndarray) -> ResolventGrid:
    """Smallest singular value of (A - z I) at each node of a complex grid."""
    re = np.atleast_1d(np.asarray(re, dtype=float))
    im = np.atleast_1d(np.asarray(im, dtype=float))
    if re.size == 0 or im.size == 0:
        raise ValueError("grid must be nonempty")
    n = A.shape[0]
    out = np.empty((im.size, re.size))
    eye = np.eye(n)
    for i, y in enumerate(im):
        for j, x in enumerate(re):
            s = la.svdvals(A - (x + 1j * y) * eye)
            out[i, j] = s[-1]
    return ResolventGrid(re=re, im=im, smin=out)


def match_conjugates(spectrum: Spectrum,
                     rtol: float = 1e-6) -> tuple[list[tuple[int, int]], list[int]]:
    """Greedy pairing of each eigenvalue with its complex conjugate.

    Returns (pairs, unpaired); a real eigenvalue pairs with itself.  The
    match tolerance is rtol * (1 + |lambda|).
    """
    w = spectrum.eigenvalues
    unused = set(range(len(w)))
    pairs: list[tuple[int, int]] = []
    unpaired: list[int] = []
    for i in sorted(unused, key=lambda i: (w[i].real, w[i].imag)):
        if i not in unused:
            continue
        target = np.conj(w[i])
        tol = rtol * (1.0 + abs(w[i]))
        if abs(w[i].imag) <= tol:
            pairs.append((i, i))
            unused.discard(i)
            continue
        candidates = [j for j in unused if j != i]
        if not candidates:
            unpaired.append(i)
            unused.discard(i)
            continue
        j = min(candidates, key=lambda j: abs(w[j] - target))
        if abs(w[j] - target) <= tol:
            pairs.append((i, j))
            unused.discard(i)
            unused.discard(j)
        else:
            unpaired.append(i)
            unused.discard(i)
    return pairs, unpaired
