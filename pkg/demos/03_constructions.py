"""Metrics with prescribed screen holonomy from weak curvature endomorphisms."""

from walker.construct import galaev_metric, symmetric_metric
from walker.holonomy import infinitesimal_holonomy, z_derivative_projections
from walker.liealg import bspace, builtin_algebra, builtin_pair

# so(3) acting irreducibly on R^5 has a 5-dimensional space B of maps R^5 -> so(3)
# with the weak Bianchi property.  Two of them give a metric polynomial in z.
g = builtin_algebra("so3-5dim")
B = bspace(g)
print("dim B(so(3) on R^5) =", B.dim)
Q = [list(B.basis[0]), list(B.basis[3])]
W = galaev_metric(Q)
print("u1 =", W.u[0])

# The z-derivatives of the curvature give the endomorphisms back.
proj = z_derivative_projections(W, 2)
print("Q recovered:", all(proj[A][i] == Q[A][i] for A in range(2) for i in range(5)))
print("screen dim:", infinitesimal_holonomy(W).screen.dim)

# Symmetric pairs: the isotropy representation becomes the screen holonomy.
for name in ("sl3-so3", "su2-u1"):
    P = builtin_pair(name)
    res = infinitesimal_holonomy(symmetric_metric(P))
    print(f"{name}: screen dim {res.screen.dim}, equals ad(k): "
          f"{res.screen.same_span(list(P.isotropy().basis))}")
