"""Screen holonomy of a five-dimensional-fibre Walker metric.

Run with ``python3 demos/01_screen_holonomy.py``.
"""

import numpy as np

from walker.construct import builtin_example
from walker.holonomy import algebra_props, infinitesimal_holonomy, screen_killing_form
from walker.liealg import is_negative_definite
from walker.numeric import LoopSpec, loop_transport, screen_residual

# The metric has f = 0 and quadratic u_i in y3, y4, y5 (with sqrt 3 coefficients).
W = builtin_example("ike96")
for i, u in enumerate(W.u, 1):
    print(f"u{i} = {u}")

# Span of R, nabla R, nabla^2 R, ... at the origin, projected to the screen.
res = infinitesimal_holonomy(W)
print("dims by derivative order:", res.dims_by_order)
print("screen dims by order:   ", res.screen_dims_by_order)

props = algebra_props(res.screen)
B = screen_killing_form(res.screen)
print(f"screen algebra: dim {props.dim}, commutant {props.commutant_dim}, "
      f"Killing form negative definite: {is_negative_definite(B)}")
# dim 3, irreducible on R^5, compact: an so(3) acting on R^5

# Turning on f leaves the screen part alone but enlarges the full algebra.
res_f = infinitesimal_holonomy(builtin_example("ike96", f="x*y1^2"))
print("with f = x*y1^2:", res_f.dims_by_order, "screen dim", res_f.screen.dim)

# Independent check: transport around a small square in the (y3, z) plane.
out = loop_transport(W, LoopSpec((3, 6), (0,) * 7, 0.2, 32))
print(f"loop: |log screen block| = {np.linalg.norm(out.screen_log):.3f}, "
      f"residual off the screen algebra = {screen_residual(out.screen_log, res.screen.generators):.1e}, "
      f"isometry defect = {out.isometry_defect:.1e}")
