"""Subalgebras of so(n): weak curvature endomorphisms, curvature endomorphisms,
Killing forms and symmetric pairs.

A map ``Q : R^n -> g`` is stored as the tuple of matrices ``Q(e_1)..Q(e_n)``.
Matrices act on column vectors, so ``<Q(e_a) e_b, e_c> = Q(e_a)[c][b]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import PreconditionError, SpecError
from .field import SQRT3, is_zero, sign
from .linalg import RationalMatrix, Span, kernel_basis, rank, solve

__all__ = [
    "LieAlgebraRep",
    "WeakCurvatureSpace",
    "CurvatureSpace",
    "SymmetricPair",
    "structure_constants",
    "killing_form",
    "is_negative_definite",
    "bspace",
    "kspace",
    "rspace",
    "is_weak_berger",
    "is_berger",
    "weak_space_contains",
    "weak_bianchi_defect",
    "builtin_algebra",
    "builtin_pair",
    "BUILTIN_ALGEBRAS",
    "BUILTIN_PAIRS",
]


def _independent(mats: Sequence[RationalMatrix]) -> bool:
    return rank([m.flat() for m in mats]) == len(mats) if mats else True


def _coords(basis: Sequence[RationalMatrix], M: RationalMatrix) -> tuple | None:
    """Coefficients of ``M`` in ``basis``; ``None`` if ``M`` is not in the span."""
    if not basis:
        return () if M.is_zero() else None
    cols = [b.flat() for b in basis]
    A = [list(row) for row in zip(*cols)]
    return solve(A, M.flat())


@dataclass(frozen=True)
class LieAlgebraRep:
    """A Lie subalgebra of so(n), given by a basis of antisymmetric matrices."""

    n: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(b if isinstance(b, RationalMatrix) else RationalMatrix(b)
                      for b in self.basis)
        object.__setattr__(self, "basis", basis)
        for k, b in enumerate(basis):
            if b.shape != (self.n, self.n):
                raise SpecError(f"basis element {k} is not {self.n}x{self.n}")
            if not b.is_antisymmetric():
                raise PreconditionError(f"basis element {k} is not antisymmetric")
        if not _independent(basis):
            raise PreconditionError("basis is linearly dependent")
        s = Span(self.n * self.n)
        for b in basis:
            s.add(b.flat())
        for i, j in combinations(range(len(basis)), 2):
            if not s.contains(basis[i].bracket(basis[j]).flat()):
                raise PreconditionError(
                    f"basis not bracket-closed: [b{i}, b{j}] leaves the span")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, M: RationalMatrix) -> tuple | None:
        return _coords(self.basis, M)

    def combine(self, coeffs: Sequence) -> RationalMatrix:
        out = RationalMatrix.zeros(self.n)
        for c, b in zip(coeffs, self.basis):
            if not is_zero(c):
                out = out + b * c
        return out

    def structure_constants(self) -> list:
        return structure_constants(self.basis)

    def killing_form(self) -> RationalMatrix:
        return killing_form(self.structure_constants())


def structure_constants(basis: Sequence[RationalMatrix]) -> list:
    """``c[i][j][k]`` with ``[b_i, b_j] = sum_k c[i][j][k] b_k``."""
    d = len(basis)
    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            x = _coords(basis, basis[i].bracket(basis[j]))
            if x is None:
                raise PreconditionError(f"[b{i}, b{j}] is not in the span of the basis")
            for k in range(d):
                c[i][j][k] = x[k]
                c[j][i][k] = -x[k]
    return c


def killing_form(c: Sequence) -> RationalMatrix:
    """``B(b_i, b_l) = tr(ad b_i ad b_l) = sum_{j,k} c[i][k][j] c[l][j][k]``."""
    d = len(c)
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        for l in range(i, d):
            s = 0
            for j in range(d):
                for k in range(d):
                    a, b = c[i][k][j], c[l][j][k]
                    if not is_zero(a) and not is_zero(b):
                        s = s + a * b
            rows[i][l] = rows[l][i] = s
    return RationalMatrix(rows)


def is_negative_definite(B: RationalMatrix) -> bool:
    """Exact test via symmetric Gaussian elimination (all pivots negative)."""
    m = [list(r) for r in B.rows]
    d = len(m)
    for p in range(d):
        piv = m[p][p]
        if sign(piv) >= 0:
            return False
        for i in range(p + 1, d):
            if is_zero(m[i][p]):
                continue
            f = m[i][p] / piv
            m[i] = [a - f * b for a, b in zip(m[i], m[p])]
    return True


# -- B(g) and K(g) -------------------------------------------------------------

@dataclass
class WeakCurvatureSpace:
    """Basis of a space of maps ``Q: R^n -> g``; each element is a tuple of n matrices."""

    algebra: LieAlgebraRep
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def values_span(self) -> int:
        """``dim span{Q(x)}``."""
        return _values_dim(self.algebra, (M for Q in self.basis for M in Q))


@dataclass
class CurvatureSpace:
    """Basis of maps ``R: Lambda^2 R^n -> g``; ``R[(a, b)]`` for ``a < b``."""

    algebra: LieAlgebraRep
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    @staticmethod
    def value(R: dict, a: int, b: int, n: int) -> RationalMatrix:
        if a == b:
            return RationalMatrix.zeros(n)
        return R[(a, b)] if a < b else -R[(b, a)]


def _values_dim(g: LieAlgebraRep, mats) -> int:
    s = Span(g.n * (g.n - 1) // 2)
    for M in mats:
        s.add(M.so_coordinates())
    return len(s)


def weak_bianchi_defect(Q: Sequence[RationalMatrix]):
    """First triple ``(a, b, c)`` (0-based) where the cyclic sum is nonzero, else ``None``."""
    n = len(Q)
    for a, b, c in combinations(range(n), 3):
        s = Q[a][c, b] + Q[b][a, c] + Q[c][b, a]
        if not is_zero(s):
            return (a, b, c)
    return None


def bspace(g: LieAlgebraRep) -> WeakCurvatureSpace:
    """Kernel of the skew-symmetrization ``Hom(R^n, g) -> Lambda^3 (R^n)*``."""
    n, d = g.n, g.dim
    # unknown t[k*d + s]: Q(e_k) = sum_s t b_s
    rows = []
    for a, b, c in combinations(range(n), 3):
        row = [0] * (n * d)
        for s, B in enumerate(g.basis):
            row[a * d + s] = row[a * d + s] + B[c, b]
            row[b * d + s] = row[b * d + s] + B[a, c]
            row[c * d + s] = row[c * d + s] + B[b, a]
        rows.append(row)
    if rows:
        kern = kernel_basis(rows)
    else:
        kern = [tuple(1 if i == j else 0 for i in range(n * d)) for j in range(n * d)]
    basis = [tuple(g.combine(v[k * d:(k + 1) * d]) for k in range(n)) for v in kern]
    return WeakCurvatureSpace(g, basis)


def kspace(g: LieAlgebraRep) -> CurvatureSpace:
    """Maps ``Lambda^2 R^n -> g`` satisfying ``R(x,y)z + R(y,z)x + R(z,x)y = 0``."""
    n, d = g.n, g.dim
    pairs = list(combinations(range(n), 2))
    pidx = {p: i for i, p in enumerate(pairs)}
    rows = []
    for a, b, c in combinations(range(n), 3):
        # R(a,b)c + R(b,c)a + R(c,a)b with R(c,a) = -R(a,c)
        for out in range(n):
            row = [0] * (len(pairs) * d)
            for (p, q, v, sgn) in ((a, b, c, 1), (b, c, a, 1), (a, c, b, -1)):
                base = pidx[(p, q)] * d
                for s, B in enumerate(g.basis):
                    if not is_zero(B[out, v]):
                        row[base + s] = row[base + s] + sgn * B[out, v]
            rows.append(row)
    if d == 0:
        return CurvatureSpace(g, [])
    if rows:
        kern = kernel_basis(rows)
    else:
        m = len(pairs) * d
        kern = [tuple(1 if i == j else 0 for i in range(m)) for j in range(m)]
    basis = [{p: g.combine(v[i * d:(i + 1) * d]) for i, p in enumerate(pairs)} for v in kern]
    return CurvatureSpace(g, basis)


def rspace(K: CurvatureSpace) -> WeakCurvatureSpace:
    """Span of ``R(e_a, .)`` for ``R`` in ``K`` (independent elements only)."""
    g = K.algebra
    n = g.n
    s = Span(n * n * n)
    out = []
    for R in K.basis:
        for a in range(n):
            Q = tuple(CurvatureSpace.value(R, a, b, n) for b in range(n))
            if s.add(tuple(x for M in Q for x in M.flat())):
                out.append(Q)
    return WeakCurvatureSpace(g, out)


def weak_space_contains(B: WeakCurvatureSpace, Q: Sequence[RationalMatrix]) -> bool:
    s = Span(B.algebra.n ** 3)
    for P in B.basis:
        s.add(tuple(x for M in P for x in M.flat()))
    return s.contains(tuple(x for M in Q for x in M.flat()))


def is_weak_berger(g: LieAlgebraRep) -> bool:
    return bspace(g).values_span() == g.dim


def is_berger(g: LieAlgebraRep) -> bool:
    K = kspace(g)
    return _values_dim(g, (M for R in K.basis for M in R.values())) == g.dim


# -- symmetric pairs ------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricPair:
    """``g = k + m`` given by matrices; basis order is ``k`` first, then ``m``.

    ``inner_scale`` is ``B(X_1, X_1)``: the inner product on ``m`` used by the
    metric construction is ``B / inner_scale``, under which the m-basis is
    orthonormal.
    """

    dim_k: int
    dim_m: int
    structure: list
    killing: RationalMatrix
    inner_scale: object
    k_basis: tuple = ()
    m_basis: tuple = ()

    @classmethod
    def from_matrices(cls, k_basis: Sequence, m_basis: Sequence) -> "SymmetricPair":
        kb = tuple(RationalMatrix(b) if not isinstance(b, RationalMatrix) else b
                   for b in k_basis)
        mb = tuple(RationalMatrix(b) if not isinstance(b, RationalMatrix) else b
                   for b in m_basis)
        basis = kb + mb
        if not _independent(basis):
            raise PreconditionError("k + m basis is linearly dependent")
        c = structure_constants(basis)
        dk, dm = len(kb), len(mb)
        K = range(dk)
        M = range(dk, dk + dm)
        for i in range(dk + dm):
            for j in range(i + 1, dk + dm):
                target = K if (i in K) == (j in K) else M
                for k in range(dk + dm):
                    if k not in target and not is_zero(c[i][j][k]):
                        kind = {(True, True): "[k,k] in k", (False, False): "[m,m] in k"} \
                            .get((i in K, j in K), "[k,m] in m")
                        raise PreconditionError(f"not a symmetric pair: {kind} fails for "
                                                f"basis elements {i}, {j}")
        B = killing_form(c)
        scale = B[dk, dk]
        if is_zero(scale):
            raise PreconditionError("Killing form vanishes on X_1")
        for i in range(dm):
            for j in range(dm):
                v = B[dk + i, dk + j]
                if i != j and not is_zero(v):
                    raise PreconditionError(
                        f"m-basis not orthogonal w.r.t. the Killing form: "
                        f"B(X_{i + 1}, X_{j + 1}) = {v}")
                if i == j and v != scale:
                    raise PreconditionError(
                        f"m-basis norms differ: B(X_{i + 1}, X_{i + 1}) = {v} "
                        f"but B(X_1, X_1) = {scale}")
        return cls(dk, dm, c, B, scale, kb, mb)

    def ad_m(self, j: int) -> RationalMatrix:
        """Matrix of ``ad(Y)`` restricted to ``m``, ``Y`` the j-th full basis element.

        Only meaningful when ``ad(Y)`` preserves ``m`` (``Y`` in ``k``).
        """
        dk, dm = self.dim_k, self.dim_m
        c = self.structure
        return RationalMatrix([[c[j][dk + l][dk + i] for l in range(dm)] for i in range(dm)])

    def isotropy(self) -> LieAlgebraRep:
        """``k`` acting on ``m`` (in the orthonormal m-basis): a subalgebra of so(dim m)."""
        return LieAlgebraRep(self.dim_m, tuple(self.ad_m(j) for j in range(self.dim_k)))

    def bracket_mm(self, j: int, k: int) -> tuple:
        """Coordinates of ``[X_j, X_k]`` in the k-basis (0-based m indices)."""
        dk = self.dim_k
        return tuple(self.structure[dk + j][dk + k][s] for s in range(dk))

    def q_map(self, j: int) -> tuple:
        """``Q_j = [X_j, .]`` as a map ``m -> k`` acting on ``m``."""
        out = []
        for k in range(self.dim_m):
            coeffs = self.bracket_mm(j, k)
            M = RationalMatrix.zeros(self.dim_m)
            for s, cf in enumerate(coeffs):
                if not is_zero(cf):
                    M = M + self.ad_m(s) * cf
            out.append(M)
        return tuple(out)

    def killing_mm(self, a: Sequence, b: Sequence):
        """``B`` on two k-coordinate vectors."""
        s = 0
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in enumerate(b):
                if not is_zero(y):
                    s = s + x * y * self.killing[i, j]
        return s


# -- catalogue --------------------------------------------------------------------

def _E(n, i, j):
    return RationalMatrix.elementary_so(n, i, j)


def _so(n):
    return tuple(_E(n, i, j) for i in range(n) for j in range(i + 1, n))


def _unit(n, i, j, v=1):
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = v
    return rows


def _sym0_basis():
    """Trace-free symmetric 3x3 matrices; all have ``tr(X^2) = 2`` and are pairwise orthogonal."""
    third = Fraction(1, 3)
    X = [
        RationalMatrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        RationalMatrix([[SQRT3 * third, 0, 0], [0, SQRT3 * third, 0],
                        [0, 0, -2 * SQRT3 * third]]),
        RationalMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
        RationalMatrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        RationalMatrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
    ]
    return X


def _so3_on_sym0() -> LieAlgebraRep:
    X = _sym0_basis()
    gens = []
    for A in _so(3):
        cols = []
        for Y in X:
            Z = A.bracket(Y)
            # orthonormal up to the common factor 2
            cols.append([(Z @ Xi).trace() * Fraction(1, 2) for Xi in X])
        gens.append(RationalMatrix(list(zip(*cols))))
    return LieAlgebraRep(5, tuple(gens))


# G2-invariant 3-form, e_{abc} with 1-based indices and signs
_PHI = ((1, 2, 3, 1), (1, 4, 5, 1), (1, 6, 7, 1), (2, 4, 6, 1),
        (2, 5, 7, -1), (3, 4, 7, -1), (3, 5, 6, -1))


def _g2() -> LieAlgebraRep:
    """Stabilizer of the 3-form ``phi`` in so(7)."""
    n = 7
    phi = {}
    for a, b, c, s in _PHI:
        for perm, sg in (((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
                         ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1)):
            phi[tuple(x - 1 for x in perm)] = s * sg
    so7 = _so(n)
    rows = []
    for a, b, c in combinations(range(n), 3):
        # (A.phi)(e_a, e_b, e_c) = -phi(A e_a, e_b, e_c) - ...
        row = []
        for A in so7:
            v = 0
            for m in range(n):
                v -= A[m, a] * phi.get((m, b, c), 0)
                v -= A[m, b] * phi.get((a, m, c), 0)
                v -= A[m, c] * phi.get((a, b, m), 0)
            row.append(v)
        rows.append(row)
    basis = []
    for v in kernel_basis(rows):
        M = RationalMatrix.zeros(n)
        for cf, A in zip(v, so7):
            if not is_zero(cf):
                M = M + A * cf
        basis.append(M)
    return LieAlgebraRep(n, tuple(basis))


def _u1_so4() -> LieAlgebraRep:
    return LieAlgebraRep(4, (_E(4, 0, 1) + _E(4, 2, 3),))


BUILTIN_ALGEBRAS = {
    "so2": lambda: LieAlgebraRep(2, _so(2)),
    "so3": lambda: LieAlgebraRep(3, _so(3)),
    "so3-5dim": _so3_on_sym0,
    "g2": _g2,
    "u1-so4": _u1_so4,
    "trivial": lambda: LieAlgebraRep(3, ()),
}
# aliases
BUILTIN_ALGEBRAS["so2-2dim"] = BUILTIN_ALGEBRAS["so2"]


def builtin_algebra(name: str) -> LieAlgebraRep:
    try:
        return BUILTIN_ALGEBRAS[name]()
    except KeyError:
        raise SpecError(f"unknown algebra {name!r}; known: {', '.join(sorted(BUILTIN_ALGEBRAS))}") \
            from None


def _sl3_so3() -> SymmetricPair:
    return SymmetricPair.from_matrices(_so(3), _sym0_basis())


def _su2_u1() -> SymmetricPair:
    # su(2) ~ so(3); k = rotations about the third axis
    L = _so(3)  # E12, E13, E23
    return SymmetricPair.from_matrices([L[0]], [L[1], L[2]])


BUILTIN_PAIRS = {"sl3-so3": _sl3_so3, "su2-u1": _su2_u1}


def builtin_pair(name: str) -> SymmetricPair:
    try:
        return BUILTIN_PAIRS[name]()
    except KeyError:
        raise SpecError(f"unknown symmetric pair {name!r}; known: "
                        f"{', '.join(sorted(BUILTIN_PAIRS))}") from None
