"""Floating-point cross-checks: finite-difference curvature and loop transport.

Everything here is independent of the exact tensor engine except where a
symbolic reference value is explicitly requested.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.linalg import logm

from .errors import NonConvergenceError, PreconditionError
from .field import to_float
from .metric import WalkerMetric, metric_matrix
from .polynomial import Polynomial

__all__ = [
    "compile_poly",
    "EvaluatedMetric",
    "evaluate_metric",
    "fd_curvature",
    "symbolic_curvature_at",
    "relative_error",
    "LoopSpec",
    "LoopResult",
    "loop_transport",
    "screen_residual",
    "curvature_invariants",
    "pullback_defect",
    "shrinking_loop_check",
]


class compile_poly:
    """Vectorized float evaluator of a :class:`Polynomial`."""

    __slots__ = ("coeffs", "exps")

    def __init__(self, p: Polynomial):
        terms = list(p.terms.items())
        self.coeffs = np.array([to_float(c) for _, c in terms], dtype=float)
        self.exps = np.array([e for e, _ in terms], dtype=int).reshape(len(terms),
                                                                       len(p.variables))

    def __call__(self, x) -> float:
        if not len(self.coeffs):
            return 0.0
        x = np.asarray(x, dtype=float)
        return float(self.coeffs @ np.prod(x[None, :] ** self.exps, axis=1))


@lru_cache(maxsize=64)
def _compiled_metric(W: WalkerMetric):
    h = metric_matrix(W)
    D = W.dim
    H = [[compile_poly(h[a][b]) for b in range(D)] for a in range(D)]
    dH = [[[compile_poly(h[a][b].diff(c)) for c in range(D)] for b in range(D)]
          for a in range(D)]
    return H, dH


def _h(W, x):
    H, _ = _compiled_metric(W)
    return np.array([[f(x) for f in row] for row in H])


def _gamma_exact_derivs(W, x):
    """Christoffel symbols from exact first derivatives of ``h`` and a float inverse."""
    H, dH = _compiled_metric(W)
    D = W.dim
    h = np.array([[f(x) for f in row] for row in H])
    dh = np.array([[[dH[a][b][c](x) for c in range(D)] for b in range(D)] for a in range(D)])
    return _gamma_from(h, dh)


def _gamma_from(h, dh):
    # dh[a][b][c] = d_c h_ab ; first[l][i][j] = 1/2 (d_i h_lj + d_j h_li - d_l h_ij)
    first = 0.5 * (np.einsum("lji->lij", dh) + dh - np.einsum("ijl->lij", dh))
    return np.einsum("kl,lij->kij", np.linalg.inv(h), first)


@dataclass
class EvaluatedMetric:
    point: np.ndarray
    matrix: np.ndarray
    inverse: np.ndarray
    christoffel: np.ndarray

    def check(self, tol: float = 1e-12) -> float:
        """Largest deviation of ``h h^-1`` from the identity (raises above ``tol``)."""
        dev = np.abs(self.matrix @ self.inverse - np.eye(len(self.matrix))).max()
        asym = np.abs(self.matrix - self.matrix.T).max()
        if dev > tol or asym > 1e-14:
            raise NonConvergenceError(f"metric evaluation inaccurate: {dev:.3g}, {asym:.3g}")
        return float(dev)


def evaluate_metric(W: WalkerMetric, point) -> EvaluatedMetric:
    x = np.asarray([float(p) for p in point])
    h = _h(W, x)
    return EvaluatedMetric(x, h, np.linalg.inv(h), _gamma_exact_derivs(W, x))


def fd_curvature(W: WalkerMetric, point, step: float = 1e-4) -> np.ndarray:
    """``R_abcd`` from nested central differences of the metric values only."""
    if step <= 0:
        raise PreconditionError("step must be positive")
    D = W.dim
    x0 = np.asarray([float(p) for p in point])
    I = np.eye(D)

    def gamma(x):
        dh = np.empty((D, D, D))
        for c in range(D):
            dh[:, :, c] = (_h(W, x + step * I[c]) - _h(W, x - step * I[c])) / (2 * step)
        return _gamma_from(_h(W, x), dh)

    G = gamma(x0)
    dG = np.empty((D, D, D, D))  # dG[a][l][b][c] = d_a Gamma^l_bc
    for a in range(D):
        dG[a] = (gamma(x0 + step * I[a]) - gamma(x0 - step * I[a])) / (2 * step)
    # Rup[l][a][b][c]: d_l component of R(d_a, d_b) d_c
    Rup = (np.einsum("albc->labc", dG) - np.einsum("blac->labc", dG)
           + np.einsum("lam,mbc->labc", G, G) - np.einsum("lbm,mac->labc", G, G))
    h = _h(W, x0)
    return np.einsum("labc,ld->abcd", Rup, h)


def symbolic_curvature_at(W: WalkerMetric, point) -> np.ndarray:
    from .curvature import riemann

    D = W.dim
    x = np.asarray([float(p) for p in point])
    out = np.zeros((D,) * 4)
    for k, v in riemann(W).items():
        out[k] = compile_poly(v)(x)
    return out


def relative_error(approx: np.ndarray, exact: np.ndarray) -> float:
    """``max |approx - exact| / max(1, max |exact|)``."""
    return float(np.abs(approx - exact).max() / max(1.0, float(np.abs(exact).max())))


# -- loop transport ------------------------------------------------------------------

@dataclass(frozen=True)
class LoopSpec:
    """Coordinate square with half-side ``radius`` in the ``plane`` of two coordinates.

    Traversed counterclockwise (first coordinate, then second) starting at
    the corner ``center - radius * (e_i + e_j)``, which is joined to the
    centre by a straight tail so that the holonomy is based at the centre.
    ``steps`` is the number of integration steps per segment.
    """

    plane: tuple
    center: tuple
    radius: float
    steps: int = 256

    def __post_init__(self):
        i, j = self.plane
        if i == j:
            raise PreconditionError("loop plane needs two different coordinates")
        if self.steps < 16:
            raise PreconditionError("steps must be >= 16")
        if not self.radius > 0:
            raise PreconditionError("radius must be positive")

    def corners(self) -> list[np.ndarray]:
        i, j = self.plane
        c = np.array([float(Fraction(v)) for v in self.center])
        r = self.radius
        pts = []
        for si, sj in ((-1, -1), (1, -1), (1, 1), (-1, 1)):
            p = c.copy()
            p[i] += si * r
            p[j] += sj * r
            pts.append(p)
        return pts


def _transport_segment(W, P, a, b, steps):
    """RK4 for ``dP/dt = -Gamma(gamma(t))[gamma'] P`` along the segment a -> b."""
    v = b - a
    hstep = 1.0 / steps

    def rhs(t, P):
        G = _gamma_exact_derivs(W, a + t * v)
        return -np.einsum("kij,i->kj", G, v) @ P

    t = 0.0
    for _ in range(steps):
        k1 = rhs(t, P)
        k2 = rhs(t + hstep / 2, P + hstep / 2 * k1)
        k3 = rhs(t + hstep / 2, P + hstep / 2 * k2)
        k4 = rhs(t + hstep, P + hstep * k3)
        P = P + hstep / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += hstep
    return P


def _transport(W, loop: LoopSpec, steps: int) -> np.ndarray:
    cs = loop.corners()
    c = np.array([float(Fraction(v)) for v in loop.center])
    tail = _transport_segment(W, np.eye(W.dim), c, cs[0], steps)
    P = tail
    for a, b in zip(cs, cs[1:] + cs[:1]):
        P = _transport_segment(W, P, a, b, steps)
    return np.linalg.solve(tail, P)


def _frame_matrix(W: WalkerMetric, x) -> np.ndarray:
    """Columns ``X, E_1..E_n, Z`` at ``x`` (general ``g``: ``E`` orthonormalized)."""
    D, n = W.dim, W.n
    h = _h(W, x)
    F = np.zeros((D, D))
    F[0, 0] = 1.0
    # E_i = d_yi - u_i d_x then Gram-Schmidt on the g-block
    E = np.zeros((D, n))
    for i in range(n):
        E[i + 1, i] = 1.0
        E[0, i] = -h[i + 1, D - 1]
    g = E.T @ h @ E
    L = np.linalg.cholesky(g)
    E = E @ np.linalg.inv(L).T
    F[:, 1:n + 1] = E
    Z = np.zeros(D)
    Z[D - 1] = 1.0
    Z[0] = -0.5 * h[D - 1, D - 1]
    # remove E components from Z so that h(Z, E_i) = 0
    Z = Z - E @ (E.T @ h @ Z)
    Z[0] -= 0.5 * (Z @ h @ Z)
    F[:, D - 1] = Z
    return F


@dataclass
class LoopResult:
    matrix: np.ndarray
    frame_matrix: np.ndarray
    screen_block: np.ndarray
    screen_log: np.ndarray
    isometry_defect: float
    halving_difference: float


def loop_transport(W: WalkerMetric, loop: LoopSpec, tol: float = 1e-8,
                   check: bool = True) -> LoopResult:
    """Parallel transport around ``loop``; the screen block is taken in the adapted frame.

    With ``check`` the integration is repeated with half the step size and a
    difference above ``tol`` raises :class:`NonConvergenceError`.
    """
    P = _transport(W, loop, loop.steps)
    diff = 0.0
    if check:
        P2 = _transport(W, loop, 2 * loop.steps)
        diff = float(np.abs(P2 - P).max())
        if diff > tol:
            raise NonConvergenceError(
                f"loop transport did not converge: step halving changed the result by {diff:.3g}")
        P = P2
    x0 = np.array([float(Fraction(v)) for v in loop.center])
    h = _h(W, x0)
    F = _frame_matrix(W, x0)
    Pf = np.linalg.solve(F, P @ F)
    n = W.n
    S = Pf[1:n + 1, 1:n + 1]
    L = np.real(logm(S)) if n else np.zeros((0, 0))
    defect = float(np.abs(P.T @ h @ P - h).max())
    return LoopResult(P, Pf, S, L, defect, diff)


def screen_residual(M: np.ndarray, generators, atol: float = 1e-12) -> float:
    """Relative distance of ``M`` from the span of the generator matrices.

    Matrices with norm below ``atol`` count as zero (residual 0).
    """
    norm = float(np.linalg.norm(M))
    if norm < atol:
        return 0.0
    if not generators:
        return 1.0
    A = np.stack([np.asarray(g.to_float() if hasattr(g, "to_float") else g).ravel()
                  for g in generators], axis=1)
    coef, *_ = np.linalg.lstsq(A, M.ravel(), rcond=None)
    return float(np.linalg.norm(A @ coef - M.ravel()) / norm)


def curvature_invariants(W: WalkerMetric, point, fd: bool = False) -> dict:
    """Scalar curvature, ``|Ric|^2`` and ``|R|^2`` at ``point``.

    By default ``R`` is the exact tensor evaluated in floats; ``fd`` switches to
    finite differences (needed for fibre metrics without a polynomial inverse).
    """
    R = fd_curvature(W, point) if fd else symbolic_curvature_at(W, point)
    hinv = np.linalg.inv(_h(W, np.asarray(point, dtype=float)))
    Ric = np.einsum("ad,abcd->bc", hinv, R)
    scal = float(np.einsum("bc,bc->", hinv, Ric))
    ric2 = float(np.einsum("ab,cd,ac,bd->", hinv, hinv, Ric, Ric))
    Rup = np.einsum("ae,bf,cg,dh,efgh->abcd", hinv, hinv, hinv, hinv, R)
    return {"scalar": scal, "ricci_squared": ric2, "riemann_squared": float(np.sum(Rup * R))}


def pullback_defect(W_old: WalkerMetric, W_new: WalkerMetric, phi, jacobian, point) -> float:
    """Relative mismatch between ``R_new(q)`` and ``phi^* R_old`` at ``q = point``.

    ``phi`` maps new coordinates to old ones and ``jacobian(q)[e][a]`` is
    ``d phi^e / d q^a``.
    """
    q = np.asarray(point, dtype=float)
    J = np.asarray(jacobian(q), dtype=float)
    R_old = symbolic_curvature_at(W_old, phi(q))
    pulled = np.einsum("ea,fb,gc,hd,efgh->abcd", J, J, J, J, R_old)
    return relative_error(pulled, symbolic_curvature_at(W_new, q))


def shrinking_loop_check(W: WalkerMetric, plane, center, radii=(0.04, 0.02, 0.01),
                         steps: int = 64) -> dict:
    """Screen logs of shrinking loops, scaled by area and Richardson-extrapolated.

    ``center`` must be exact (integers, fractions or decimal strings).

    The limit is compared with ``-pr_so(n) R(d_i, d_j)`` at the centre in the
    adapted frame (a counterclockwise loop transports by ``1 - area R``).
    """
    from .curvature import riemann
    from .holonomy import screen_projection
    from .metric import adapted_frame

    scaled = []
    for r in radii:
        res = loop_transport(W, LoopSpec(tuple(plane), tuple(center), r, steps), check=False)
        scaled.append(res.screen_log / (2 * r) ** 2)
    # first-order Richardson on halving radii, applied twice
    r1 = [2 * scaled[k + 1] - scaled[k] for k in range(len(scaled) - 1)]
    limit = r1[-1] if len(r1) == 1 else 2 * r1[1] - r1[0]
    i, j = plane
    exact = tuple(Fraction(v) for v in center)
    vals = riemann(W).evaluate(exact)
    endo = {(a, b): v for (p, q, a, b), v in vals.items() if p == i and q == j}
    ref = -screen_projection(endo, adapted_frame(W).at(exact)).to_float()
    scale = float(np.abs(ref).max())
    err = float(np.abs(limit - ref).max()) / (scale if scale else 1.0)
    return {"scaled": scaled, "limit": limit, "reference": ref, "relative_error": err}
