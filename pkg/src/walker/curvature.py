"""Riemann and Ricci tensors, covariant derivatives and tensor contractions.

Conventions::

    R(U,V)W = nabla_U nabla_V W - nabla_V nabla_U W - nabla_[U,V] W
    R_abcd  = h(R(d_a, d_b) d_c, d_d)
    Ric_bc  = sum_ad h^ad R_abcd          (trace over slots 1 and 4)

Covariant derivatives append the differentiation slot at the end:
``(nabla T)_{i1..ik e} = (nabla_{d_e} T)_{i1..ik}``.

Tensors are stored sparsely (missing components are zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .errors import PreconditionError
from .field import is_zero
from .metric import WalkerMetric, christoffel, inverse_metric, metric_matrix
from .polynomial import Polynomial

__all__ = [
    "Tensor",
    "PhiFamily",
    "metric_tensor",
    "xi_form",
    "riemann",
    "ricci",
    "cov_deriv",
    "cov_deriv_at",
    "cov_deriv_along",
    "contract",
    "outer",
    "antisymmetrize",
    "trace_35_46",
    "trace_15_48",
    "norm_squared",
    "lambda_123",
    "lambda_12_34",
    "codifferential_check",
    "second_bianchi_defect",
    "first_bianchi_defect",
]

HALF = Fraction(1, 2)


class Tensor:
    """Covariant tensor with polynomial components over a Walker chart."""

    __slots__ = ("rank", "dim", "variables", "comps")

    def __init__(self, rank: int, dim: int, variables, comps: dict | None = None):
        self.rank = rank
        self.dim = dim
        self.variables = variables
        self.comps = {k: v for k, v in (comps or {}).items() if v}

    def __getitem__(self, key) -> Polynomial:
        v = self.comps.get(tuple(key))
        return v if v is not None else Polynomial.zero(self.variables)

    def items(self):
        return self.comps.items()

    def is_zero(self) -> bool:
        return not self.comps

    def nnz(self) -> int:
        return len(self.comps)

    def evaluate(self, point) -> dict:
        out = {}
        for k, v in self.comps.items():
            val = v.evaluate(point)
            if not is_zero(val):
                out[k] = val
        return out

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.rank == other.rank and self.comps == other.comps

    def __sub__(self, other: "Tensor") -> "Tensor":
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out[k] - v if k in out else -v
        return Tensor(self.rank, self.dim, self.variables, out)

    def scale(self, c) -> "Tensor":
        return Tensor(self.rank, self.dim, self.variables,
                      {k: v.scale(c) for k, v in self.comps.items()})

    def __repr__(self):
        return f"Tensor(rank={self.rank}, dim={self.dim}, nnz={self.nnz()})"


def _acc(out: dict, key, val):
    cur = out.get(key)
    out[key] = val if cur is None else cur + val


def metric_tensor(W: WalkerMetric) -> Tensor:
    h = metric_matrix(W)
    return Tensor(2, W.dim, W.variables,
                  {(a, b): h[a][b] for a in range(W.dim) for b in range(W.dim)})


def xi_form(W: WalkerMetric) -> Tensor:
    """``xi = h(d_x, .) = dz``."""
    return Tensor(1, W.dim, W.variables, {(W.z_index,): Polynomial.constant(1, W.variables)})


@lru_cache(maxsize=128)
def riemann(W: WalkerMetric) -> Tensor:
    """``R_abcd`` from ``R^l_abc = d_a G^l_bc - d_b G^l_ac + G^l_am G^m_bc - G^l_bm G^m_ac``."""
    Gm = christoffel(W)
    G = Gm.G
    h = metric_matrix(W)
    D = W.dim
    V = W.variables
    zero = Polynomial.zero(V)
    dG = [[[[G[l][b][c].diff(a) for a in range(D)] for c in range(D)] for b in range(D)]
          for l in range(D)]
    h_rows = [[(l, h[d][l]) for l in range(D) if h[d][l]] for d in range(D)]
    comps: dict = {}
    for a in range(D):
        for b in range(a + 1, D):
            for c in range(D):
                up = []
                for l in range(D):
                    s = dG[l][b][c][a] - dG[l][a][c][b]
                    for m in range(D):
                        if G[l][a][m] and G[m][b][c]:
                            s = s + G[l][a][m] * G[m][b][c]
                        if G[l][b][m] and G[m][a][c]:
                            s = s - G[l][b][m] * G[m][a][c]
                    up.append(s)
                for d in range(D):
                    s = zero
                    for l, hv in h_rows[d]:
                        if up[l]:
                            s = s + hv * up[l]
                    if s:
                        comps[(a, b, c, d)] = s
                        comps[(b, a, c, d)] = -s
    return Tensor(4, D, V, comps)


@lru_cache(maxsize=128)
def ricci(W: WalkerMetric) -> tuple[tuple[Polynomial, ...], ...]:
    """Symmetric matrix ``Ric_bc = sum h^ad R_abcd``."""
    R = riemann(W)
    hinv = inverse_metric(W)
    D = W.dim
    V = W.variables
    out = [[Polynomial.zero(V) for _ in range(D)] for _ in range(D)]
    for (a, b, c, d), v in R.items():
        if hinv[a][d]:
            out[b][c] = out[b][c] + hinv[a][d] * v
    return tuple(tuple(r) for r in out)


def cov_deriv(T: Tensor, W: WalkerMetric, max_degree: int | None = None,
              antisymmetric: Sequence[tuple[int, int]] = ()) -> Tensor:
    """``(nabla T)_{i1..ik e} = d_e T_{i1..ik} - sum_s Gamma^l_{e i_s} T_{..l..}``.

    ``max_degree`` drops all terms of higher total degree (a jet at the
    origin).  ``antisymmetric`` lists slot pairs in which ``T`` is skew; only
    components with increasing indices in those pairs are computed and the
    rest are filled in by sign flips.
    """
    Gm = christoffel(W)
    D = W.dim
    if max_degree is None:
        by_upper = Gm.by_upper
    else:
        by_upper = [[(e, i, g.truncate(max_degree)) for e, i, g in row]
                    for row in Gm.by_upper]
        by_upper = [[t for t in row if t[2]] for row in by_upper]

    def keep(k):
        return all(k[p] < k[q] for p, q in antisymmetric)

    def mul(g, v):
        return g * v if max_degree is None else g.mul_truncated(v, max_degree)

    out: dict = {}
    for key, val in T.items():
        for e in range(D):
            nk = key + (e,)
            if not keep(nk):
                continue
            d = val.diff(e)
            if d:
                _acc(out, nk, d)
        for s, l in enumerate(key):
            for e, i, g in by_upper[l]:
                nk = key[:s] + (i,) + key[s + 1:] + (e,)
                if keep(nk):
                    prod = mul(g, val)
                    if prod:
                        _acc(out, nk, -prod)
    for p, q in antisymmetric:
        for k, v in list(out.items()):
            m = list(k)
            m[p], m[q] = m[q], m[p]
            out[tuple(m)] = -v
    return Tensor(T.rank + 1, D, T.variables, out)


def cov_deriv_at(T: Tensor, W: WalkerMetric, point) -> dict:
    """Values of ``nabla T`` at a point, without building polynomial components."""
    Gm = christoffel(W)
    D = W.dim
    Gp = [[(e, i, g.evaluate(point)) for e, i, g in Gm.by_upper[l]] for l in range(D)]
    Gp = [[(e, i, g) for e, i, g in row if not is_zero(g)] for row in Gp]
    out: dict = {}
    for key, val in T.items():
        for e in range(D):
            d = val.diff(e)
            if d:
                dv = d.evaluate(point)
                if not is_zero(dv):
                    _acc(out, key + (e,), dv)
        needs_val = any(Gp[l] for l in key)
        if not needs_val:
            continue
        v = val.evaluate(point)
        if is_zero(v):
            continue
        for s, l in enumerate(key):
            for e, i, g in Gp[l]:
                nk = key[:s] + (i,) + key[s + 1:] + (e,)
                _acc(out, nk, -(g * v))
    return {k: v for k, v in out.items() if not is_zero(v)}


def outer(T1: Tensor, T2: Tensor) -> Tensor:
    out = {}
    for k1, v1 in T1.items():
        for k2, v2 in T2.items():
            out[k1 + k2] = v1 * v2
    return Tensor(T1.rank + T2.rank, T1.dim, T1.variables, out)


def _raise_slot(T: Tensor, slot: int, hinv_rows) -> Tensor:
    out: dict = {}
    for key, v in T.items():
        b = key[slot]
        for a, hab in hinv_rows[b]:
            _acc(out, key[:slot] + (a,) + key[slot + 1:], hab * v)
    return Tensor(T.rank, T.dim, T.variables, out)


def contract(W: WalkerMetric, T1: Tensor, T2: Tensor | None,
             pairs: Iterable[tuple[int, int]]):
    """Metric contraction of ``T1 (x) T2`` over 1-based slot pairs.

    Slots ``1..rank(T1)`` belong to ``T1`` and the following ones to ``T2``.
    Each pair ``(p, q)`` is contracted with ``h^{-1}``.  The free slots keep
    their order.  Returns a :class:`Tensor`, or a :class:`Polynomial` when no
    slot is left free.
    """
    pairs = [tuple(p) for p in pairs]
    r1 = T1.rank
    r2 = T2.rank if T2 is not None else 0
    total = r1 + r2
    used = [s for p in pairs for s in p]
    if any(len(p) != 2 for p in pairs) or len(set(used)) != len(used) or \
            any(not 1 <= s <= total for s in used):
        raise PreconditionError(f"invalid index pairs {pairs} for total rank {total}")
    hinv = inverse_metric(W)
    D = W.dim
    hinv_rows = [[(a, hinv[a][b]) for a in range(D) if hinv[a][b]] for b in range(D)]

    # raise the second slot of each pair (in whichever factor it lives)
    A, B = T1, T2
    for p, q in pairs:
        hi = max(p, q)
        if hi <= r1:
            A = _raise_slot(A, hi - 1, hinv_rows)
        else:
            B = _raise_slot(B, hi - r1 - 1, hinv_rows)

    def self_trace(T: Tensor, slot_pairs):
        if not slot_pairs:
            return T, list(range(T.rank))
        out: dict = {}
        free = [s for s in range(T.rank) if all(s not in sp for sp in slot_pairs)]
        for k, v in T.items():
            if all(k[i] == k[j] for i, j in slot_pairs):
                _acc(out, tuple(k[s] for s in free), v)
        return Tensor(len(free), T.dim, T.variables, out), free

    within1 = [(p - 1, q - 1) for p, q in pairs if max(p, q) <= r1]
    within2 = [(p - r1 - 1, q - r1 - 1) for p, q in pairs if min(p, q) > r1]
    cross = [(min(p, q) - 1, max(p, q) - r1 - 1) for p, q in pairs
             if min(p, q) <= r1 < max(p, q)]
    A, free1 = self_trace(A, within1)
    if B is None:
        result = A
    else:
        B, free2 = self_trace(B, within2)
        pos1 = {s: i for i, s in enumerate(free1)}
        pos2 = {s: i for i, s in enumerate(free2)}
        c1 = [pos1[i] for i, _ in cross]
        c2 = [pos2[j] for _, j in cross]
        f1 = [i for i in range(A.rank) if i not in c1]
        f2 = [j for j in range(B.rank) if j not in c2]
        groups: dict = {}
        for k, v in B.items():
            groups.setdefault(tuple(k[j] for j in c2), []).append((tuple(k[j] for j in f2), v))
        out: dict = {}
        for k, v in A.items():
            match = groups.get(tuple(k[i] for i in c1))
            if not match:
                continue
            head = tuple(k[i] for i in f1)
            for tail, w in match:
                _acc(out, head + tail, v * w)
        result = Tensor(len(f1) + len(f2), D, W.variables, out)
    if result.rank == 0:
        return result[()]
    return result


def cov_deriv_along(T: Tensor, W: WalkerMetric, e: int, max_degree: int | None = None) -> Tensor:
    """``nabla_{d_e} T`` (same rank): ``d_e T - sum_s Gamma^l_{e i_s} T_{..l..}``.

    ``max_degree`` truncates the result as in :func:`cov_deriv`.
    """
    Gm = christoffel(W)
    rows = [[(i, g) for ee, i, g in Gm.by_upper[l] if ee == e] for l in range(W.dim)]
    if max_degree is not None:
        rows = [[(i, g.truncate(max_degree)) for i, g in row] for row in rows]
        rows = [[(i, g) for i, g in row if g] for row in rows]
    out: dict = {}
    for key, val in T.items():
        d = val.diff(e)
        if max_degree is not None:
            d = d.truncate(max_degree)
        if d:
            _acc(out, key, d)
        for s, l in enumerate(key):
            for i, g in rows[l]:
                prod = g * val if max_degree is None else g.mul_truncated(val, max_degree)
                if prod:
                    _acc(out, key[:s] + (i,) + key[s + 1:], -prod)
    return Tensor(T.rank, T.dim, T.variables, out)


def antisymmetrize(T: Tensor, slots: Sequence[int]) -> Tensor:
    """``sum_sigma sgn(sigma) T`` with the given 0-based slots permuted (no 1/k!)."""
    slots = list(slots)
    out: dict = {}
    for perm in permutations(range(len(slots))):
        sgn = _perm_sign(perm)
        for key, v in T.items():
            nk = list(key)
            for i, p in enumerate(perm):
                nk[slots[p]] = key[slots[i]]
            _acc(out, tuple(nk), v if sgn > 0 else -v)
    return Tensor(T.rank, T.dim, T.variables, out)


def _perm_sign(perm) -> int:
    perm = list(perm)
    sgn = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sgn = -sgn
    return sgn


# -- named contraction presets ------------------------------------------------

def trace_35_46(W: WalkerMetric, R: Tensor | None = None) -> Tensor:
    R = riemann(W) if R is None else R
    return contract(W, R, R, [(3, 5), (4, 6)])


def trace_15_48(W: WalkerMetric, R: Tensor | None = None) -> Tensor:
    R = riemann(W) if R is None else R
    return contract(W, R, R, [(1, 5), (4, 8)])


def norm_squared(W: WalkerMetric, R: Tensor | None = None) -> Polynomial:
    R = riemann(W) if R is None else R
    return contract(W, R, R, [(1, 5), (2, 6), (3, 7), (4, 8)])


def lambda_123(W: WalkerMetric, R: Tensor | None = None) -> Tensor:
    """Antisymmetrization of ``xi (x) R`` over its first three slots."""
    R = riemann(W) if R is None else R
    return antisymmetrize(outer(xi_form(W), R), [0, 1, 2])


def lambda_12_34(W: WalkerMetric, rho: Tensor) -> Tensor:
    """``xi (x) rho (x) xi`` antisymmetrized in slots (1,2) and in slots (3,4)."""
    xi = xi_form(W)
    T = outer(outer(xi, rho), xi)
    return antisymmetrize(antisymmetrize(T, [0, 1]), [2, 3])


# -- identities --------------------------------------------------------------

def first_bianchi_defect(R: Tensor) -> Tensor:
    out: dict = {}
    for (a, b, c, d), v in R.items():
        for key in ((a, b, c, d), (b, c, a, d), (c, a, b, d)):
            _acc(out, key, v)
    return Tensor(4, R.dim, R.variables, out)


def second_bianchi_defect(dR: Tensor) -> Tensor:
    """Cyclic sum over (slot 1, slot 2, derivative slot) of ``nabla R``."""
    out: dict = {}
    for (a, b, c, d, e), v in dR.items():
        for key in ((a, b, c, d, e), (b, e, c, d, a), (e, a, c, d, b)):
            _acc(out, key, v)
    return Tensor(5, dR.dim, dR.variables, out)


# -- Ricci isotropy via the codifferential -----------------------------------

@dataclass(frozen=True)
class PhiFamily:
    """The z-family of 1-forms ``sum_k u_k dy_k`` on flat R^n."""

    n: int
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.components) != self.n:
            raise PreconditionError("PhiFamily needs n components")
        for i, p in enumerate(self.components, 1):
            if p.depends_on("x"):
                raise PreconditionError(f"phi component {i} depends on x")

    @classmethod
    def from_metric(cls, W: WalkerMetric) -> "PhiFamily":
        return cls(W.n, W.u)

    def is_closed(self) -> tuple[int, int] | None:
        """``None`` if ``d phi = 0``, else the first violating pair (1-based)."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.components[j].diff(i + 1) != self.components[i].diff(j + 1):
                    return (i + 1, j + 1)
        return None


def codifferential_check(phi: PhiFamily) -> list[Polynomial]:
    """Components of ``d* d phi`` on flat R^n, normalized to equal ``Ric(d_z, d_yi)``:

    ``-1/2 sum_k (d_k d_k u_i - d_k d_i u_k)``.
    """
    n = phi.n
    u = phi.components
    V = u[0].variables
    out = []
    for i in range(n):
        s = Polynomial.zero(V)
        for k in range(n):
            s = s + u[i].diff(k + 1).diff(k + 1) - u[k].diff(i + 1).diff(k + 1)
        out.append(s.scale(-HALF))
    return out
