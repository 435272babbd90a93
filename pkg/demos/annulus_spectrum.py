"""
Spectrum of the annulus operator -h^2*Laplacian + i*x1
======================================================

Assembles the Galerkin matrices for a moderate truncation, diagonalizes
both parity sectors, and prints the eigenvalues that match the
boundary-layer branch formulas.  The truncation here is deliberately
smaller than the converged default so the script runs in under a minute;
raise m_max/n_max (or drop them to use the defaults) for table-grade
accuracy.
"""

import numpy as np

from btspec import runs
from btspec.asymptotics import lambda_app

h = 0.008
R = 1.5

run = runs.run_spectrum(h, R, m_max=50, n_max=16, cache_dir=".btspec-cache")

print(f"h = {h}, R = {R}, truncation ({run.m_max}, {run.n_max}), "
      f"matrix dimension {run.system.dim}")
print()

# leftmost part of the two-sector union
w = run.union.eigenvalues
left = w[np.argsort(w.real)][:12]
print("leftmost eigenvalues (both sectors):")
for lam in left:
    print(f"  {lam.real:+.6f} {lam.imag:+.6f}i")
print()

print("matched branches (positive-imaginary members):")
values = runs.matched_branch_values(run)
for label in sorted(values):
    lam = values[label]
    # compare against the asymptotic formula value of the same branch
    boundary = "inner-N" if label.startswith("N") else "outer-D"
    n, k = (int(t) for t in label[2:-1].split(","))
    app = lambda_app(boundary, n, k, h, R)
    print(f"  {label}: computed {lam.real:.4f}+{lam.imag:.4f}i, "
          f"formula {app.real:.4f}+{app.imag:.4f}i, "
          f"|diff| = {abs(lam - app):.2e}")
