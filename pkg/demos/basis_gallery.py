"""
Annulus Laplacian eigenbasis
============================

Shows the radial wavenumbers (roots of the Bessel cross product), the
boundary conditions of the modes, and the orthonormality of the basis
used by the Galerkin assembly.
"""

import numpy as np

from btspec.annulus import AnnulusGeometry, build_basis, radial_roots

geometry = AnnulusGeometry(r_outer=2.0)

print("first radial wavenumbers k_{m,n} (Neumann at r=1, Dirichlet at r=2):")
for m in range(4):
    ks = radial_roots(geometry, m, 5)
    print(f"  m = {m}: " + "  ".join(f"{k:.6f}" for k in ks))
print()
print("asymptotic spacing pi/(R-1) =", np.pi / (geometry.r_outer - 1.0))
print()

modes = build_basis(geometry, m_max=3, n_max=3, parities=("even",))
r = np.linspace(1.0, 2.0, 2001)
print("boundary values of the first even modes (radial part):")
for md in modes[:4]:
    vals = md.radial(r)
    dr = r[1] - r[0]
    neumann = (vals[1] - vals[0]) / dr          # ~0 at the inner circle
    print(f"  (m={md.m}, n={md.n}, k={md.k:.4f}): "
          f"R({geometry.r_outer}) = {vals[-1]:+.2e}, "
          f"R'(1) ~ {neumann:+.2e}")
print()

# Gram matrix of the m = 0 radial family under the r dr measure
fam = [md for md in modes if md.m == 0]
gram = np.array([[np.trapezoid(a.radial_normalized(r)
                               * b.radial_normalized(r) * r, r)
                  for b in fam] for a in fam])
print("m = 0 radial Gram matrix (should be the identity):")
print(np.array_str(gram, precision=6, suppress_small=True))
