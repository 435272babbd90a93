"""
1D model operators
==================

The boundary layers of the annulus problem are governed by 1D model
operators with closed-form spectra:

  * complex Airy on the half line, -u'' + i*j*x*u, whose eigenvalues are
    e^{i pi/3} |a_n| j^{2/3} (Dirichlet) or with a'_n (Neumann);
  * the rotated harmonic oscillator -u'' + i*a*x^2*u with eigenvalues
    e^{i pi/4} sqrt(a) (2n - 1).

This script compares the finite-difference solver against the exact
values and prints the left-margin constants.
"""

import numpy as np

from btspec.model1d import (
    converged_halfline_spectrum,
    left_margin,
    rotated_oscillator_spectrum,
)
from btspec.specfun import airy_zeros

zeros = airy_zeros(3)
rot = np.exp(1j * np.pi / 3.0)

for bc, mags in (("D", np.abs(zeros.a)), ("N", np.abs(zeros.a_prime))):
    rep = converged_halfline_spectrum(bc, 1.0, n_report=3)
    print(f"half-line Airy, bc = {bc} (converged: {rep.converged}):")
    for lam, mag in zip(rep.eigenvalues, mags):
        exact = rot * mag
        print(f"  {lam.real:+.8f} {lam.imag:+.8f}i   "
              f"exact {exact.real:+.8f} {exact.imag:+.8f}i   "
              f"|diff| = {abs(lam - exact):.1e}")
    print()

print("left-margin constants |a_1|/2 and |a'_1|/2:")
print(f"  Dirichlet: {left_margin('D', 1.0):.8f}")
print(f"  Neumann:   {left_margin('N', 1.0):.8f}")
print()

a = 1.0
w = rotated_oscillator_spectrum(a, n_report=4)
exact = np.exp(1j * np.pi / 4.0) * np.sqrt(a) * (2 * np.arange(1, 5) - 1)
print(f"rotated oscillator, a = {a}:")
for lam, ex in zip(w, exact):
    print(f"  {lam.real:+.6f} {lam.imag:+.6f}i   "
          f"exact {ex.real:+.6f} {ex.imag:+.6f}i   |diff| = {abs(lam - ex):.1e}")
