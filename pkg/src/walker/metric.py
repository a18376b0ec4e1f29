"""Walker metrics, their inverse, Christoffel symbols and adapted frames.

Coordinates are ordered ``(x, y1, ..., yn, z)``; coordinate index ``a`` is the
position of the corresponding variable.  The metric is stored in the form::

    h = 2 dx dz + f dz^2 + 2 sum_i u_i dy_i dz + sum_ij g_ij dy_i dy_j

so that ``h(d/dy_i, d/dz) = u_i`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import PreconditionError
from .polynomial import Polynomial, parse_polynomial, walker_variables

__all__ = [
    "WalkerMetric",
    "AdaptedFrame",
    "RecurrenceForm",
    "metric_matrix",
    "inverse_metric",
    "christoffel",
    "adapted_frame",
    "recurrence_form",
    "pair",
]

HALF = Fraction(1, 2)

PolyMatrix = tuple  # tuple[tuple[Polynomial, ...], ...]


def _as_poly(p, variables) -> Polynomial:
    if isinstance(p, Polynomial):
        if p.variables != variables:
            return p.with_variables(variables)
        return p
    if isinstance(p, str):
        return parse_polynomial(p, variables)
    return Polynomial.constant(p, variables)


@dataclass(frozen=True)
class WalkerMetric:
    """The data ``(n, f, u, g)`` of a metric in Walker coordinates.

    ``g=None`` means the identity fibre metric.  For a non-identity ``g`` the
    exact polynomial inverse may be passed as ``g_inverse``; it is checked.
    """

    n: int
    f: Polynomial
    u: tuple[Polynomial, ...]
    g: tuple[tuple[Polynomial, ...], ...] | None = None
    g_inverse: tuple[tuple[Polynomial, ...], ...] | None = field(default=None, compare=True)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise PreconditionError("fibre dimension n must be an integer >= 1")
        V = walker_variables(n)
        object.__setattr__(self, "f", _as_poly(self.f, V))
        u = tuple(_as_poly(p, V) for p in self.u)
        if len(u) != n:
            raise PreconditionError(f"expected {n} u-components, got {len(u)}")
        object.__setattr__(self, "u", u)
        for i, p in enumerate(u, 1):
            if p.depends_on("x"):
                raise PreconditionError(f"u{i} depends on x")
        if self.g is not None:
            g = _square(self.g, n, V, "g")
            for i in range(n):
                for j in range(n):
                    if g[i][j] != g[j][i]:
                        raise PreconditionError(f"g is not symmetric at ({i + 1},{j + 1})")
                    if g[i][j].depends_on("x"):
                        raise PreconditionError(f"g{i + 1}{j + 1} depends on x")
            if _is_identity(g):
                g = None
            object.__setattr__(self, "g", g)
        if self.g_inverse is not None:
            gi = _square(self.g_inverse, n, V, "g_inverse")
            if _is_identity(gi) and self.g is None:
                gi = None
            else:
                prod = _matmul(self.fibre_metric(), gi)
                if not _is_identity(prod):
                    raise PreconditionError("g_inverse is not the inverse of g")
            object.__setattr__(self, "g_inverse", gi)

    @classmethod
    def from_strings(cls, n: int, f: str = "0", u: Sequence[str] | None = None,
                     g=None, g_inverse=None) -> "WalkerMetric":
        V = walker_variables(n)
        u = ["0"] * n if u is None else list(u)
        return cls(n, parse_polynomial(f, V), tuple(parse_polynomial(s, V) for s in u),
                   g, g_inverse)

    @property
    def variables(self) -> tuple[str, ...]:
        return walker_variables(self.n)

    @property
    def dim(self) -> int:
        return self.n + 2

    @property
    def z_index(self) -> int:
        return self.n + 1

    @property
    def identity_fibre(self) -> bool:
        return self.g is None

    def fibre_metric(self) -> PolyMatrix:
        if self.g is not None:
            return self.g
        return _identity(self.n, self.variables)

    def fibre_inverse(self) -> PolyMatrix:
        if self.g is None:
            return _identity(self.n, self.variables)
        if self.g_inverse is None:
            raise PreconditionError(
                "symbolic inversion unsupported for non-identity g without g_inverse; "
                "use the numeric oracle")
        return self.g_inverse

    def with_f(self, f) -> "WalkerMetric":
        return WalkerMetric(self.n, _as_poly(f, self.variables), self.u, self.g, self.g_inverse)

    def translated(self, point: Sequence) -> "WalkerMetric":
        """The same metric in coordinates centred at ``point`` (``v -> v + p_v``)."""
        V = self.variables
        if len(point) != len(V):
            raise PreconditionError(f"point must have {len(V)} coordinates")

        def shift(p: Polynomial) -> Polynomial:
            for name, c in zip(V, point):
                if c != 0:
                    p = p.substitute(name, Polynomial.var(name, V) + c)
            return p

        g = None if self.g is None else tuple(tuple(shift(p) for p in r) for r in self.g)
        gi = None if self.g_inverse is None else tuple(
            tuple(shift(p) for p in r) for r in self.g_inverse)
        return WalkerMetric(self.n, shift(self.f), tuple(shift(p) for p in self.u), g, gi)

    @property
    def is_brinkmann(self) -> bool:
        return not self.f.depends_on("x")

    def degree(self) -> int:
        polys = [self.f, *self.u]
        if self.g is not None:
            polys += [p for row in self.g for p in row]
        return max(0, max(p.degree() for p in polys))


def _square(m, n, V, name):
    rows = tuple(tuple(_as_poly(p, V) for p in row) for row in m)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise PreconditionError(f"{name} must be {n}x{n}")
    return rows


@lru_cache(maxsize=None)
def _identity(n, V):
    one = Polynomial.constant(1, V)
    zero = Polynomial.zero(V)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def _is_identity(m) -> bool:
    return all((m[i][j] == (1 if i == j else 0)) for i in range(len(m)) for j in range(len(m)))


def _matmul(a, b):
    n = len(a)
    V = a[0][0].variables
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = Polynomial.zero(V)
            for k in range(n):
                if a[i][k] and b[k][j]:
                    s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=256)
def metric_matrix(W: WalkerMetric) -> PolyMatrix:
    """(n+2)x(n+2) matrix of ``h`` in coordinates ``(x, y, z)``."""
    V = W.variables
    D, z = W.dim, W.z_index
    zero = Polynomial.zero(V)
    one = Polynomial.constant(1, V)
    m = [[zero] * D for _ in range(D)]
    m[0][z] = m[z][0] = one
    m[z][z] = W.f
    g = W.fibre_metric()
    for i in range(W.n):
        m[i + 1][z] = m[z][i + 1] = W.u[i]
        for j in range(W.n):
            m[i + 1][j + 1] = g[i][j]
    return tuple(tuple(r) for r in m)


@lru_cache(maxsize=256)
def inverse_metric(W: WalkerMetric) -> PolyMatrix:
    """Exact inverse of :func:`metric_matrix`.

    With ``G`` the fibre inverse: ``h^xx = u^T G u - f``, ``h^{x y} = -G u``,
    ``h^{xz} = 1``, ``h^{yy} = G``, all ``z``-row entries besides ``h^{zx}`` zero.
    """
    V = W.variables
    D, z, n = W.dim, W.z_index, W.n
    G = W.fibre_inverse()
    zero = Polynomial.zero(V)
    one = Polynomial.constant(1, V)
    Gu = [sum((G[i][j] * W.u[j] for j in range(n) if G[i][j] and W.u[j]), zero)
          for i in range(n)]
    m = [[zero] * D for _ in range(D)]
    m[0][z] = m[z][0] = one
    m[0][0] = sum((W.u[i] * Gu[i] for i in range(n) if Gu[i]), zero) - W.f
    for i in range(n):
        m[0][i + 1] = m[i + 1][0] = -Gu[i]
        for j in range(n):
            m[i + 1][j + 1] = G[i][j]
    return tuple(tuple(r) for r in m)


class Christoffel:
    """``Gamma^k_ij`` as a dense array ``G[k][i][j]`` plus a sparse view."""

    def __init__(self, G, variables):
        self.G = G
        self.variables = variables
        self.dim = len(G)
        # by_upper[l] = [(e, i, Gamma^l_{e i}), ...]  nonzero only
        self.by_upper = [
            [(i, j, G[l][i][j]) for i in range(self.dim) for j in range(self.dim) if G[l][i][j]]
            for l in range(self.dim)
        ]

    def __getitem__(self, kij):
        k, i, j = kij
        return self.G[k][i][j]

    def nonzero(self):
        for k in range(self.dim):
            for i, j, v in self.by_upper[k]:
                yield (k, i, j), v

    def at(self, point):
        return [[[self.G[k][i][j].evaluate(point) for j in range(self.dim)]
                 for i in range(self.dim)] for k in range(self.dim)]


@lru_cache(maxsize=256)
def christoffel(W: WalkerMetric) -> Christoffel:
    """Levi-Civita symbols ``Gamma^k_ij = 1/2 h^kl (d_i h_lj + d_j h_li - d_l h_ij)``."""
    h = metric_matrix(W)
    hinv = inverse_metric(W)
    V = W.variables
    D = W.dim
    dh = [[[h[a][b].diff(c) for c in range(D)] for b in range(D)] for a in range(D)]
    # first kind: Gamma_{l,ij}
    first = [[[None] * D for _ in range(D)] for _ in range(D)]
    for l in range(D):
        for i in range(D):
            for j in range(i, D):
                v = (dh[l][j][i] + dh[l][i][j] - dh[i][j][l]).scale(HALF)
                first[l][i][j] = first[l][j][i] = v
    zero = Polynomial.zero(V)
    G = [[[zero] * D for _ in range(D)] for _ in range(D)]
    for k in range(D):
        row = [(l, hinv[k][l]) for l in range(D) if hinv[k][l]]
        for i in range(D):
            for j in range(i, D):
                s = zero
                for l, hk in row:
                    f1 = first[l][i][j]
                    if f1:
                        s = s + hk * f1
                G[k][i][j] = G[k][j][i] = s
    return Christoffel(G, V)


def pair(W: WalkerMetric, U: Sequence[Polynomial], S: Sequence[Polynomial]) -> Polynomial:
    """Symbolic contraction ``h(U, S)`` of two vector fields."""
    h = metric_matrix(W)
    V = W.variables
    s = Polynomial.zero(V)
    for a, ua in enumerate(U):
        if not ua:
            continue
        for b, sb in enumerate(S):
            if sb and h[a][b]:
                s = s + ua * sb * h[a][b]
    return s


@dataclass(frozen=True)
class AdaptedFrame:
    """Vector fields ``X, E_1..E_n, Z`` with polynomial coordinate components."""

    X: tuple[Polynomial, ...]
    E: tuple[tuple[Polynomial, ...], ...]
    Z: tuple[Polynomial, ...]

    def vectors(self) -> list[tuple[Polynomial, ...]]:
        return [self.X, *self.E, self.Z]

    def at(self, point) -> "NumericFrame":
        ev = lambda vec: tuple(c.evaluate(point) for c in vec)  # noqa: E731
        return NumericFrame(ev(self.X), tuple(ev(e) for e in self.E), ev(self.Z))


@dataclass(frozen=True)
class NumericFrame:
    X: tuple
    E: tuple
    Z: tuple


def adapted_frame(W: WalkerMetric) -> AdaptedFrame:
    """``X = d_x``, ``Z = d_z - (f/2) d_x``, ``E_i = d_yi - u_i d_x`` (requires g = identity)."""
    if not W.identity_fibre:
        raise PreconditionError("adapted_frame requires the identity fibre metric g")
    V = W.variables
    D = W.dim
    zero = Polynomial.zero(V)
    one = Polynomial.constant(1, V)

    def vec(entries: dict) -> tuple:
        return tuple(entries.get(a, zero) for a in range(D))

    X = vec({0: one})
    Z = vec({0: -W.f.scale(HALF), W.z_index: one})
    E = tuple(vec({0: -W.u[i], i + 1: one}) for i in range(W.n))
    return AdaptedFrame(X, E, Z)


@dataclass(frozen=True)
class RecurrenceForm:
    """1-form ``Theta`` with ``nabla d_x = Theta (x) d_x``; ``components[a] = Theta(d_a)``."""

    components: tuple[Polynomial, ...]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)


def recurrence_form(W: WalkerMetric) -> RecurrenceForm:
    """Read ``Theta`` off the connection: ``nabla_a d_x = Gamma^k_{a x} d_k``."""
    G = christoffel(W)
    for a in range(W.dim):
        for k in range(1, W.dim):
            if G[k, a, 0]:
                raise PreconditionError(
                    f"d_x is not recurrent: Gamma^{k}_({a},x) = {G[k, a, 0]}")
    return RecurrenceForm(tuple(G[0, a, 0] for a in range(W.dim)))
