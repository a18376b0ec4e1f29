"""Infinitesimal holonomy of Walker metrics and its screen (so(n)) projection.

Curvature endomorphisms are written in the adapted frame ``(X, E_1..E_n, Z)``
of :func:`walker.metric.adapted_frame`.  An endomorphism ``T`` of the
parabolic algebra is stored as the triple ``(a, A, v)`` with::

    T X   = a X
    T E_k = v_k X + sum_l A[l][k] E_l

so ``a = h(TX, Z)``, ``v_k = h(T E_k, Z)`` and ``A[l][k] = h(T E_k, E_l)``:
``A`` is the matrix of the induced endomorphism of the screen.
"""

from __future__ import annotations

import warnings as _warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .curvature import Tensor, cov_deriv, cov_deriv_along, riemann
from .errors import PreconditionError
from .field import is_zero
from .linalg import RationalMatrix, Span, kernel_basis
from .metric import NumericFrame, WalkerMetric, adapted_frame

__all__ = [
    "ParabolicElement",
    "ScreenAlgebra",
    "HolonomyResult",
    "AlgebraProperties",
    "screen_projection",
    "parabolic_projection",
    "infinitesimal_holonomy",
    "algebra_props",
    "commutant_dim",
    "screen_killing_form",
    "default_max_order",
    "z_derivative_projections",
]


@dataclass(frozen=True)
class ParabolicElement:
    a: object
    A: RationalMatrix
    v: tuple

    @property
    def n(self) -> int:
        return len(self.v)

    def bracket(self, other: "ParabolicElement") -> "ParabolicElement":
        """``[(a,A,x),(b,B,y)] = (0, [A,B], (A + a)y - (B + b)x)``."""
        Ay = self.A @ other.v
        Bx = other.A @ self.v
        w = tuple(ay + self.a * y - bx - other.a * x
                  for ay, y, bx, x in zip(Ay, other.v, Bx, self.v))
        return ParabolicElement(0, self.A.bracket(other.A), w)

    def to_matrix(self) -> RationalMatrix:
        """Block matrix ``[[a, v^t, 0], [0, A, v], [0, 0, -a]]``."""
        n = self.n
        rows = [[0] * (n + 2) for _ in range(n + 2)]
        rows[0][0] = self.a
        rows[n + 1][n + 1] = -self.a
        for i in range(n):
            rows[0][i + 1] = self.v[i]
            rows[i + 1][n + 1] = self.v[i]
            for j in range(n):
                rows[i + 1][j + 1] = self.A[i, j]
        return RationalMatrix(rows)

    def as_vector(self) -> tuple:
        return (self.a,) + self.A.so_coordinates() + tuple(self.v)

    @classmethod
    def from_vector(cls, n: int, vec: Sequence) -> "ParabolicElement":
        m = n * (n - 1) // 2
        return cls(vec[0], RationalMatrix.from_so_coordinates(n, vec[1:1 + m]),
                   tuple(vec[1 + m:]))

    def is_zero(self) -> bool:
        return is_zero(self.a) and self.A.is_zero() and all(is_zero(x) for x in self.v)


def _form(omega: Mapping, P: Sequence, Q: Sequence):
    s = 0
    for (c, d), w in omega.items():
        pc = P[c]
        if is_zero(pc):
            continue
        qd = Q[d]
        if is_zero(qd):
            continue
        s = s + pc * qd * w
    return s


def parabolic_projection(R_endo: Mapping, frame: NumericFrame) -> ParabolicElement:
    """Triple ``(a, A, v)`` of the endomorphism with ``h(T d_c, d_d) = R_endo[(c, d)]``."""
    n = len(frame.E)
    a = _form(R_endo, frame.X, frame.Z)
    v = tuple(_form(R_endo, e, frame.Z) for e in frame.E)
    rows = [[0] * n for _ in range(n)]
    for k in range(n):
        for l in range(k + 1, n):
            w = _form(R_endo, frame.E[k], frame.E[l])
            rows[l][k] = w
            rows[k][l] = -w
    return ParabolicElement(a, RationalMatrix(rows), v)


def screen_projection(R_endo: Mapping, frame: NumericFrame) -> RationalMatrix:
    """so(n)-part: ``A[l][k] = h(T E_k, E_l)`` at the evaluation point."""
    return parabolic_projection(R_endo, frame).A


@dataclass
class ScreenAlgebra:
    """Subalgebra of so(n) given by an independent list of generators."""

    n: int
    generators: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.generators)

    def span(self) -> Span:
        s = Span(self.n * (self.n - 1) // 2)
        for g in self.generators:
            s.add(g.so_coordinates())
        return s

    def contains(self, M: RationalMatrix) -> bool:
        return self.span().contains(M.so_coordinates())

    def is_bracket_closed(self) -> bool:
        s = self.span()
        gens = self.generators
        return all(s.contains(gens[i].bracket(gens[j]).so_coordinates())
                   for i in range(len(gens)) for j in range(i + 1, len(gens)))

    def same_span(self, others: Sequence[RationalMatrix]) -> bool:
        s = self.span()
        o = Span(s.dim)
        for m in others:
            o.add(m.so_coordinates())
        return len(o) == len(s) and all(s.contains(m.so_coordinates()) for m in others)


@dataclass
class HolonomyResult:
    full: list
    screen: ScreenAlgebra
    dims_by_order: list
    screen_dims_by_order: list
    orders_computed: int
    stabilized: bool
    point: tuple
    warnings: list = field(default_factory=list)

    def __iter__(self):
        yield self.full
        yield self.screen


def default_max_order(W: WalkerMetric) -> int:
    return max(W.f.degree(), *(p.degree() for p in W.u), 0) + 2


def _group_endomorphisms(values: Mapping) -> dict:
    """Split ``{(a, b, c, d, w...): val}`` into ``{(a, b, w...): {(c, d): val}}``."""
    groups: dict = {}
    for key, val in values.items():
        g = key[:2] + key[4:]
        groups.setdefault(g, {})[(key[2], key[3])] = val
    return groups


def infinitesimal_holonomy(W: WalkerMetric, point: Sequence | None = None,
                           max_order: int | None = None) -> HolonomyResult:
    """Span of ``(nabla^m R)(U, V; W_1..W_m)`` at ``point`` for ``m <= max_order``.

    Iteration ends early when the curvature vanishes, or when the (nonempty)
    span did not grow over two consecutive orders.  Hitting ``max_order``
    without either is reported in ``warnings``.
    """
    if not W.identity_fibre:
        raise PreconditionError("infinitesimal_holonomy requires the identity fibre metric g")
    n, D = W.n, W.dim
    point = tuple(0 for _ in range(D)) if point is None else tuple(point)
    if len(point) != D:
        raise PreconditionError(f"point must have {D} coordinates")
    if max_order is None:
        max_order = default_max_order(W)
    frame = adapted_frame(W).at(point)
    # Work at the origin of shifted coordinates.  Only the degree <= M - m
    # jet of nabla^m R can reach the value of nabla^M R there.
    W0 = W.translated(point) if any(c != 0 for c in point) else W
    origin = (0,) * D

    full_span = Span(1 + n * (n - 1) // 2 + n)
    screen_span = Span(n * (n - 1) // 2)
    full: list = []
    screen: list = []
    dims, sdims = [], []

    R = riemann(W0)
    T = Tensor(4, D, R.variables, {k: v.truncate(max_order) for k, v in R.items()})
    stabilized = False
    order = 0
    while True:
        values = {k: v.constant_term() for k, v in T.items() if k[0] < k[1] and k[2] < k[3]}
        for endo in _group_endomorphisms(values).values():
            el = parabolic_projection(endo, frame)
            if full_span.add(el.as_vector()):
                full.append(el)
            if screen_span.add(el.A.so_coordinates()):
                screen.append(el.A)
        dims.append(len(full_span))
        sdims.append(len(screen_span))
        if R.is_zero():
            stabilized = True
            break
        if T.is_zero():
            # the jet is exhausted: nothing new up to max_order
            dims += [dims[-1]] * (max_order - order)
            sdims += [sdims[-1]] * (max_order - order)
            stabilized = len(dims) >= 3 and dims[-1] == dims[-3]
            break
        if len(dims) >= 3 and dims[-1] and dims[-1] == dims[-2] == dims[-3]:
            stabilized = True
            break
        if order >= max_order:
            break
        order += 1
        T = cov_deriv(T, W0, max_degree=max_order - order, antisymmetric=((0, 1), (2, 3)))
    warn = []
    if not stabilized:
        warn.append(f"span not stabilized by order {max_order}; dims by order {dims}")
        _warnings.warn(warn[-1], RuntimeWarning, stacklevel=2)
    return HolonomyResult(full, ScreenAlgebra(n, screen), dims, sdims, order, stabilized,
                          point, warn)


def z_derivative_projections(W: WalkerMetric, orders: int, point: Sequence | None = None) -> list:
    """``out[m][i]``: so(n)-part of ``((nabla_{d_z})^m R)(d_yi, d_z)`` for ``m < orders``."""
    if not W.identity_fibre:
        raise PreconditionError("requires the identity fibre metric g")
    n, D = W.n, W.dim
    point = (0,) * D if point is None else tuple(point)
    frame = adapted_frame(W).at(point)
    W0 = W.translated(point) if any(c != 0 for c in point) else W
    z = W.z_index
    top = orders - 1
    T = riemann(W0)
    T = Tensor(4, D, T.variables, {k: v.truncate(top) for k, v in T.items()})
    out = []
    for m in range(orders):
        if m:
            T = cov_deriv_along(T, W0, z, max_degree=top - m)
        row = []
        for i in range(1, n + 1):
            endo = {(c, d): v.constant_term() for (a, b, c, d), v in T.items()
                    if a == i and b == z}
            row.append(screen_projection(endo, frame))
        out.append(row)
    return out


# -- algebraic properties ----------------------------------------------------

@dataclass(frozen=True)
class AlgebraProperties:
    dim: int
    abelian: bool
    solvable: bool
    two_step_solvable: bool
    derived_dims: tuple
    irreducible: bool | None = None
    commutant_dim: int | None = None

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _ops(A):
    if isinstance(A, ScreenAlgebra):
        return (list(A.generators), lambda x, y: x.bracket(y), lambda x: x.so_coordinates(),
                A.n * (A.n - 1) // 2)
    elems = list(A)
    if not elems:
        return [], None, None, 0
    n = elems[0].n
    return elems, lambda x, y: x.bracket(y), lambda x: x.as_vector(), 1 + n * (n - 1) // 2 + n


def algebra_props(A) -> AlgebraProperties:
    """Dimension, derived series and (for screen algebras) irreducibility."""
    elems, br, vec, vdim = _ops(A)
    dims = []
    current = elems
    while True:
        s = Span(vdim)
        basis = [x for x in current if s.add(vec(x))]
        dims.append(len(basis))
        if not basis or (len(dims) > 1 and dims[-1] == dims[-2]):
            break
        nxt = Span(vdim)
        current = []
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                b = br(basis[i], basis[j])
                if nxt.add(vec(b)):
                    current.append(b)
    def d(k):
        # the series is constant once it stops shrinking
        return dims[k] if k < len(dims) else dims[-1]

    d1, d2 = d(1), d(2)
    props = dict(dim=dims[0], abelian=(d1 == 0), solvable=(dims[-1] == 0),
                 two_step_solvable=(d2 == 0), derived_dims=tuple(dims))
    if isinstance(A, ScreenAlgebra):
        c = commutant_dim(A.n, A.generators)
        props.update(commutant_dim=c, irreducible=(c == 1))
    return AlgebraProperties(**props)


def commutant_dim(n: int, generators: Sequence[RationalMatrix]) -> int:
    """``dim {M in gl(n) : [M, g] = 0 for all g}``.

    A commutant of dimension one means the representation is absolutely
    irreducible; real representations of complex type (e.g. so(2) on R^2)
    have a 2-dimensional commutant and are reported as reducible.
    """
    rows = []
    for g in generators:
        # (M g - g M)[i][j] = sum_k M[i][k] g[k][j] - g[i][k] M[k][j]
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] = row[i * n + k] + g[k, j]
                    row[k * n + j] = row[k * n + j] - g[i, k]
                rows.append(row)
    if not rows:
        return n * n
    return len(kernel_basis(rows))


def screen_killing_form(A: ScreenAlgebra) -> RationalMatrix:
    """Killing form of the abstract Lie algebra spanned by the screen generators."""
    from .liealg import killing_form, structure_constants

    return killing_form(structure_constants(A.generators))
