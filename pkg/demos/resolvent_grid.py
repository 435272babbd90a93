"""
Resolvent norm left of the spectral margin
==========================================

Evaluates the smallest singular value of (A - z) on a grid in the
spectrum-free strip Re z <= (1 - eps) * margin, |Im z - 1| <= 0.2, and
prints the scale-free quantity h^{2/3}/smin, which stays bounded as h
shrinks (the uniform resolvent estimate in the region left of the
margin).
"""

from btspec import runs

for h in (0.02, 0.01):
    rep = runs.resolvent_scan(h, r_outer=1.5, epsilon=0.5, n_re=4, n_im=3,
                              cache_dir=".btspec-cache")
    print(f"h = {h}:  max h^(2/3)/smin = {rep['summary_max']:.4f}")
    header = "      Im\\Re " + "  ".join(f"{x:9.5f}" for x in rep["re"])
    print(header)
    for i, y in enumerate(rep["im"]):
        row = "  ".join(f"{rep['ratio'][i, j]:9.4f}"
                        for j in range(len(rep["re"])))
        print(f"  {y:9.5f}  {row}")
    print()
