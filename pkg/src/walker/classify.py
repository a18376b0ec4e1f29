"""Curvature classes of Walker metrics and the closed-phi flattening."""

from __future__ import annotations

from dataclasses import dataclass, field

from .curvature import (
    PhiFamily,
    Tensor,
    cov_deriv,
    lambda_12_34,
    lambda_123,
    ricci,
    riemann,
    trace_15_48,
)
from .errors import PreconditionError
from .metric import RecurrenceForm, WalkerMetric, adapted_frame, recurrence_form
from .polynomial import Polynomial

__all__ = [
    "ClassificationReport",
    "PPEquivalences",
    "classify",
    "check_pp_equivalences",
    "flatten_closed_phi",
    "closed_phi_potential",
    "restricted_screen_flatness",
    "spatial_block_vanishes",
]

FLAGS = ("brinkmann", "parallel_in_chart", "llhc", "pr_wave", "pp_wave", "plane_wave",
         "cahen_wallach", "ricci_isotropic")


def _name(W: WalkerMetric, idx) -> str:
    return ",".join(W.variables[i] for i in idx)


@dataclass
class ClassificationReport:
    """Curvature-class flags.

    ``brinkmann`` means the recurrent null field ``d_x`` can be rescaled to a
    parallel one (``d Theta = 0``, i.e. ``d f/d x`` depends on ``z`` only);
    ``parallel_in_chart`` is the stronger coordinate statement ``Theta = 0``.
    """

    brinkmann: bool
    llhc: bool
    pr_wave: bool
    pp_wave: bool
    plane_wave: bool
    cahen_wallach: bool
    ricci_isotropic: bool
    recurrence_form: RecurrenceForm
    parallel_in_chart: bool = True
    witness: dict = field(default_factory=dict)

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in FLAGS}

    def implication_violations(self) -> list[str]:
        """Names of violated structural implications (empty when consistent)."""
        bad = []
        rules = [
            ("pp_wave => pr_wave", not self.pp_wave or self.pr_wave),
            ("pr_wave => llhc", not self.pr_wave or self.llhc),
            ("cahen_wallach => plane_wave", not self.cahen_wallach or self.plane_wave),
            ("plane_wave => pp_wave", not self.plane_wave or self.pp_wave),
            ("pp_wave => brinkmann", not self.pp_wave or self.brinkmann),
            ("parallel_in_chart => brinkmann", not self.parallel_in_chart or self.brinkmann),
            ("pr_wave and ricci_isotropic <=> pp_wave",
             (self.pr_wave and self.ricci_isotropic) == (self.pr_wave and self.pp_wave)),
        ]
        for name, ok in rules:
            if not ok:
                bad.append(name)
        return bad


def _first_nonzero(T: Tensor, allowed) -> tuple | None:
    for key in sorted(T.comps):
        if all(k in allowed for k in key):
            return key
    return None


def _first_nonzero_where(T: Tensor, pred) -> tuple | None:
    for key in sorted(T.comps):
        if pred(key):
            return key
    return None


def spatial_block_vanishes(W: WalkerMetric, R: Tensor | None = None) -> tuple | None:
    """``None`` if ``R_abcd = 0`` for all ``a,b,c,d`` in ``{x, y}``, else a witness index."""
    R = riemann(W) if R is None else R
    return _first_nonzero(R, set(range(W.n + 1)))


def classify(W: WalkerMetric) -> ClassificationReport:
    R = riemann(W)
    z = W.z_index
    perp = set(range(W.n + 1))  # x and y indices span the orthogonal of the null line
    witness: dict = {}

    parallel = W.is_brinkmann
    if not parallel:
        witness["parallel_in_chart"] = "f depends on x"
    fx = W.f.diff("x")
    brinkmann = not any(fx.depends_on(v) for v in W.variables[:-1])
    if not brinkmann:
        witness["brinkmann"] = "d f/d x depends on x or y (d Theta != 0)"

    k = spatial_block_vanishes(W, R)
    llhc = k is None
    if not llhc:
        witness["llhc"] = f"R({_name(W, k)}) != 0"

    k = _first_nonzero_where(R, lambda key: key[2] in perp and key[3] in perp)
    pr = k is None
    if not pr:
        witness["pr_wave"] = f"R({_name(W, k)}) != 0"

    pp = pr and brinkmann
    if not pp:
        witness["pp_wave"] = witness.get("pr_wave", "not a Brinkmann wave")

    plane = cw = False
    if pp:
        dR = cov_deriv(R, W, antisymmetric=((0, 1), (2, 3)))
        k = _first_nonzero_where(dR, lambda key: key[4] != z)
        plane = k is None
        if not plane:
            witness["plane_wave"] = f"nabla R({_name(W, k)}) != 0"
        cw = dR.is_zero()
        if not cw:
            k = min(dR.comps)
            witness["cahen_wallach"] = f"nabla R({_name(W, k)}) != 0"
    else:
        witness["plane_wave"] = witness["cahen_wallach"] = "not a pp-wave"

    Ric = ricci(W)
    iso = True
    for a in sorted(perp):
        for b in range(W.dim):
            if Ric[a][b]:
                iso = False
                witness["ricci_isotropic"] = f"Ric({_name(W, (a, b))}) != 0"
                break
        if not iso:
            break

    return ClassificationReport(brinkmann, llhc, pr, pp, plane, cw, iso,
                                recurrence_form(W), parallel, witness)


@dataclass
class PPEquivalences:
    """The three equivalent characterizations of pp-waves among Brinkmann waves."""

    antisymmetrization: bool
    rho_reconstruction: bool
    trace_condition: bool
    rho: Tensor
    phi: Polynomial

    @property
    def all_true(self) -> bool:
        return self.antisymmetrization and self.rho_reconstruction and self.trace_condition


def check_pp_equivalences(W: WalkerMetric) -> PPEquivalences:
    """Evaluate the three conditions independently; refuses non-Brinkmann input.

    * ``Lambda_123(xi (x) R) = 0`` with ``xi = dz``;
    * ``R = Lambda_(12)(34)(xi (x) rho (x) xi)`` where ``rho_(yi yj) = -R(yi,z,yj,z)``;
    * ``tr_(1,5)(4,8)(R (x) R)`` is a multiple ``phi`` of ``xi^4``.
    """
    if not W.is_brinkmann:
        raise PreconditionError(
            "pp-wave equivalences need a Brinkmann wave with d_x parallel (f independent of x)")
    R = riemann(W)
    z = W.z_index
    D = W.dim

    cond1 = lambda_123(W, R).is_zero()

    rho = {}
    for i in range(1, W.n + 1):
        for j in range(1, W.n + 1):
            v = R[(i, z, j, z)]
            if v:
                rho[(i, j)] = -v
    rho_t = Tensor(2, D, W.variables, rho)
    cond2 = lambda_12_34(W, rho_t) == R

    tr = trace_15_48(W, R)
    zz = (z, z, z, z)
    phi = tr[zz]
    cond3 = all(k == zz for k in tr.comps)
    return PPEquivalences(cond1, cond2, cond3, rho_t, phi)


def closed_phi_potential(W: WalkerMetric) -> Polynomial:
    """``beta`` with ``d beta / d y_k = u_k`` (no y-free terms); requires ``d phi = 0``."""
    bad = PhiFamily.from_metric(W).is_closed()
    if bad is not None:
        i, j = bad
        raise PreconditionError(
            f"phi is not closed: d u{j}/d y{i} != d u{i}/d y{j} at pair ({i},{j})")
    beta = Polynomial.zero(W.variables)
    for k in range(1, W.n + 1):
        rest = W.u[k - 1] - beta.diff(k)
        beta = beta + rest.antideriv(k)
    return beta


def flatten_closed_phi(W: WalkerMetric) -> WalkerMetric:
    """Change ``x -> x - beta(y, z)`` to remove a closed ``phi``.

    The new metric has ``u = 0`` and ``f~ = f(x - beta, y, z) - 2 d beta/dz``.
    """
    beta = closed_phi_potential(W)
    V = W.variables
    f = W.f
    if f.depends_on("x"):
        f = f.substitute("x", Polynomial.var("x", V) - beta)
    f = f - beta.diff("z").scale(2)
    return WalkerMetric(W.n, f, tuple(Polynomial.zero(V) for _ in range(W.n)), W.g, W.g_inverse)


def restricted_screen_flatness(W: WalkerMetric, R: Tensor | None = None) -> bool:
    """Whether ``h(R(U,V)E_k, E_l) = 0`` for all ``U, V`` tangent to ``z = const``.

    ``E_k`` are the adapted screen vectors when ``g`` is the identity and the
    representatives ``d_yk`` of the screen bundle otherwise.  ``R`` may be
    supplied to test a curvature tensor directly.
    """
    R = riemann(W) if R is None else R
    V0 = W.variables
    if W.identity_fibre:
        E = adapted_frame(W).E
    else:
        one, zero = Polynomial.constant(1, V0), Polynomial.zero(V0)
        E = tuple(tuple(one if a == k + 1 else zero for a in range(W.dim)) for k in range(W.n))
    perp = range(W.n + 1)
    for U in perp:
        for V in perp:
            if U >= V:
                continue
            for k in range(W.n):
                for l in range(k + 1, W.n):
                    s = Polynomial.zero(V0)
                    for c, ec in enumerate(E[k]):
                        if not ec:
                            continue
                        for d, ed in enumerate(E[l]):
                            if ed and R[(U, V, c, d)]:
                                s = s + ec * ed * R[(U, V, c, d)]
                    if s:
                        return False
    return True
