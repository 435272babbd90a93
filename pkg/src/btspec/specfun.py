"""Special-function kernels: Bessel J/Y, Airy Ai and its zeros, Gauss-Legendre rules.

Evaluation is delegated to scipy.special (LAPACK-grade accuracy, well below
the 1e-12 tolerances required downstream); the zero finders are Newton
iterations seeded from the standard asymptotic expansions of the zero
locations, which puts every seed inside the Newton convergence basin.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

__all__ = [
    "QuadratureRule",
    "AiryZeros",
    "RangeError",
    "NewtonConvergenceError",
    "bessel_jy",
    "airy_ai",
    "airy_zeros",
    "gauss_legendre",
]

MAX_BESSEL_ORDER = 200
_NEWTON_MAX_ITER = 50


class RangeError(ValueError):
    """Argument combination outside the supported evaluation range."""


class NewtonConvergenceError(RuntimeError):
    """A Newton iteration failed to converge within the iteration cap."""


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre rule on (-1, 1).

    nodes are strictly increasing, weights positive and summing to 2;
    the rule is exact on polynomials up to degree 2*order - 1.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))

    def mapped(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights transplanted to the interval [a, b]."""
        x = 0.5 * (b - a) * self.nodes + 0.5 * (b + a)
        w = 0.5 * (b - a) * self.weights
        return x, w


@dataclass(frozen=True)
class AiryZeros:
    """Negative zeros of Ai and Ai', ordered decreasing (closest to 0 first)."""

    a: np.ndarray
    a_prime: np.ndarray


def bessel_jy(m: int, x: float) -> tuple[float, float, float, float]:
    """Evaluate J_m(x), Y_m(x) and their derivatives at x > 0.

    Raises RangeError if x <= 0, m is out of range, or the evaluation
    over/underflows (extreme m/x ratio).
    """
    if x <= 0.0:
        raise RangeError(f"bessel_jy requires x > 0, got {x}")
    if not 0 <= m <= MAX_BESSEL_ORDER:
        raise RangeError(f"bessel_jy supports 0 <= m <= {MAX_BESSEL_ORDER}, got {m}")
    with np.errstate(all="ignore"), warnings.catch_warnings():
        # over/underflow in intermediate terms surfaces as non-finite output
        warnings.simplefilter("ignore", RuntimeWarning)
        j = _sp.jv(m, x)
        y = _sp.yv(m, x)
        jp = _sp.jvp(m, x)
        yp = _sp.yvp(m, x)
    vals = (float(j), float(y), float(jp), float(yp))
    if not all(np.isfinite(v) for v in vals):
        raise RangeError(f"bessel_jy overflow at m={m}, x={x}")
    return vals


def airy_ai(x: float) -> tuple[float, float]:
    """Evaluate (Ai(x), Ai'(x))."""
    ai, aip, _, _ = _sp.airy(x)
    return float(ai), float(aip)


def _newton(f, fprime, x0: float, tol: float = 1e-14) -> float:
    x = x0
    for _ in range(_NEWTON_MAX_ITER):
        fx = f(x)
        step = fx / fprime(x)
        x -= step
        if abs(step) < tol * max(1.0, abs(x)):
            return x
    raise NewtonConvergenceError(
        f"Newton failed to converge from x0={x0} (last x={x})"
    )


def airy_zeros(count: int) -> AiryZeros:
    """First `count` negative zeros of Ai and Ai'.

    Newton is seeded from the asymptotic location of the n-th zero,
    t^(2/3) with t = 3*pi*(4n-1)/8 for Ai and t = 3*pi*(4n-3)/8 for Ai'.
    """
    if not 1 <= count <= 20:
        raise ValueError(f"count must be in [1, 20], got {count}")

    def ai(x):
        return _sp.airy(x)[0]

    def aip(x):
        return _sp.airy(x)[1]

    def aipp(x):
        # Airy equation: Ai''(x) = x * Ai(x)
        return x * _sp.airy(x)[0]

    a = np.empty(count)
    a_prime = np.empty(count)
    for n in range(1, count + 1):
        guess_a = -((3.0 * np.pi * (4 * n - 1) / 8.0) ** (2.0 / 3.0))
        guess_ap = -((3.0 * np.pi * (4 * n - 3) / 8.0) ** (2.0 / 3.0))
        a[n - 1] = _newton(ai, aip, guess_a)
        a_prime[n - 1] = _newton(aip, aipp, guess_ap)
    return AiryZeros(a=a, a_prime=a_prime)


def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule of the given order on (-1, 1)."""
    if not 1 <= order <= 2048:
        raise ValueError(f"order must be in [1, 2048], got {order}")
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return QuadratureRule(nodes=nodes, weights=weights, order=order)
