"""Dimensions of weak curvature and curvature endomorphism spaces."""

import time

from walker.liealg import BUILTIN_ALGEBRAS, bspace, builtin_algebra, is_weak_berger, kspace

for name in ("so2", "so3", "so3-5dim", "u1-so4", "g2"):
    g = builtin_algebra(name)
    t0 = time.perf_counter()
    b, k = bspace(g).dim, kspace(g).dim
    print(f"{name:9s} dim {g.dim:2d} on R^{g.n}: dim B = {b:3d}, dim K = {k:3d}, "
          f"weak-Berger {is_weak_berger(g)}  ({time.perf_counter() - t0:.1f}s)")

print("available:", ", ".join(sorted(BUILTIN_ALGEBRAS)))
