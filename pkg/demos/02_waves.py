"""pp-waves, pr-waves and the flattening of closed u-forms."""

from walker.classify import check_pp_equivalences, classify, flatten_closed_phi
from walker.holonomy import algebra_props, infinitesimal_holonomy
from walker.metric import WalkerMetric

for f in ("y1^2 - y2^2", "z*y1^2", "y1^3 + y2^4", "x*y1^2", "x*z + y1^2"):
    W = WalkerMetric.from_strings(2, f)
    r = classify(W)
    on = [k for k, v in r.flags().items() if v]
    print(f"f = {f:12s} -> {', '.join(on)}")

# The three pp characterizations, with the trace function phi.
eq = check_pp_equivalences(WalkerMetric.from_strings(2, "y1^3 + y2^4"))
print("pp conditions:", eq.antisymmetrization, eq.rho_reconstruction, eq.trace_condition,
      "phi =", eq.phi)

# A pr-wave that is not pp: holonomy inside R x R^n, solvable in two steps.
res = infinitesimal_holonomy(WalkerMetric.from_strings(2, "x*y1^2"))
print("pr-wave holonomy derived series:", algebra_props(res.full).derived_dims)

# u = grad_y beta can be absorbed by x -> x - beta.
W = WalkerMetric.from_strings(2, "y1^2", ["y2*z", "y1*z"])
F = flatten_closed_phi(W)
print("flattened f =", F.f, "| u =", [str(u) for u in F.u], "| pr:", classify(F).pr_wave)
