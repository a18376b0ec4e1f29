"""Exact linear algebra over Q and Q(sqrt 3).

Vectors are tuples of exact scalars.  :class:`RationalMatrix` is a small
immutable matrix type used for so(n) elements and representation matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .field import QSqrt3, as_exact, is_zero

__all__ = [
    "RationalMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "span_dim",
    "Span",
    "solve",
    "flatten",
]


class RationalMatrix:
    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_exact(v) for v in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows):
        m = cls.__new__(cls)
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "RationalMatrix":
        c = r if c is None else c
        return cls._raw(tuple((0,) * c for _ in range(r)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls._raw(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def elementary_so(cls, n: int, i: int, j: int) -> "RationalMatrix":
        """``E_ij - E_ji`` (0-based indices)."""
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = 1
        rows[j][i] = -1
        return cls._raw(tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_shape(other)
        return RationalMatrix._raw(tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_shape(other)
        return RationalMatrix._raw(tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return RationalMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, c):
        if isinstance(c, RationalMatrix):
            return NotImplemented
        c = as_exact(c)
        return RationalMatrix._raw(tuple(tuple(a * c for a in r) for r in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other.rows)) if other.rows else []
            out = []
            for r in self.rows:
                row = []
                for col in cols:
                    s = 0
                    for a, b in zip(r, col):
                        if not is_zero(a) and not is_zero(b):
                            s = s + a * b
                    row.append(s)
                out.append(tuple(row))
            return RationalMatrix._raw(tuple(out))
        # matrix-vector
        vec = tuple(other)
        if len(vec) != self.shape[1]:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, vec) for r in self.rows)

    def bracket(self, other: "RationalMatrix") -> "RationalMatrix":
        return self @ other - other @ self

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix._raw(tuple(zip(*self.rows)))

    def trace(self):
        s = 0
        for i, r in enumerate(self.rows):
            s = s + r[i]
        return s

    def flat(self) -> tuple:
        return tuple(v for r in self.rows for v in r)

    def is_zero(self) -> bool:
        return all(is_zero(v) for r in self.rows for v in r)

    def is_antisymmetric(self) -> bool:
        n = len(self.rows)
        return all(self.rows[i][j] == -self.rows[j][i] for i in range(n) for j in range(n))

    def so_coordinates(self) -> tuple:
        """Upper-triangle entries ``A[i][j]``, ``i < j`` (coordinates in so(n))."""
        n = len(self.rows)
        return tuple(self.rows[i][j] for i in range(n) for j in range(i + 1, n))

    @classmethod
    def from_so_coordinates(cls, n: int, coords: Sequence) -> "RationalMatrix":
        rows = [[0] * n for _ in range(n)]
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = coords[k]
                rows[j][i] = -coords[k]
                k += 1
        return cls._raw(tuple(tuple(r) for r in rows))

    def to_float(self):
        import numpy as np

        return np.array([[float(v) for v in r] for r in self.rows], dtype=float)

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        from .field import scalar_to_str

        body = "; ".join(" ".join(scalar_to_str(v) for v in r) for r in self.rows)
        return f"RationalMatrix([{body}])"


def _dot(a, b):
    s = 0
    for x, y in zip(a, b):
        if not is_zero(x) and not is_zero(y):
            s = s + x * y
    return s


def flatten(item) -> tuple:
    if isinstance(item, RationalMatrix):
        return item.flat()
    return tuple(item)


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(m)):
            if not is_zero(m[i][c]):
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if not (piv == 1 and not isinstance(piv, QSqrt3)):
            inv = 1 / piv if isinstance(piv, QSqrt3) else Fraction(1) / piv
            m[r] = [v * inv if not is_zero(v) else 0 for v in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][c]):
                fac = m[i][c]
                m[i] = [a - fac * b if not is_zero(b) else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def kernel_basis(M) -> list[tuple]:
    """Exact basis of the right null space ``{v : M v = 0}``."""
    rows = M.rows if isinstance(M, RationalMatrix) else [tuple(r) for r in M]
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(red, pivots):
            if not is_zero(row[fcol]):
                v[pc] = -row[fcol]
        basis.append(tuple(v))
    return basis


def span_dim(items: Sequence) -> int:
    """Exact dimension of the span of vectors or same-shape matrices."""
    items = list(items)
    if not items:
        return 0
    vecs = [flatten(it) for it in items]
    if any(len(v) != len(vecs[0]) for v in vecs):
        raise ValueError("shape mismatch in span_dim")
    if isinstance(items[0], RationalMatrix):
        shapes = {it.shape for it in items}
        if len(shapes) != 1:
            raise ValueError("shape mismatch in span_dim")
    return rank(vecs)


def solve(A_rows: Sequence[Sequence], b: Sequence) -> tuple | None:
    """One exact solution of ``A x = b`` or ``None`` if inconsistent."""
    aug = [list(r) + [bb] for r, bb in zip(A_rows, b)]
    ncols = len(aug[0]) - 1 if aug else 0
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return tuple(x)


class Span:
    """Incrementally maintained subspace with a reduced echelon basis.

    ``add`` returns True iff the vector enlarged the span.  ``members`` keeps
    the originally added independent vectors in insertion order.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[list] = []
        self._pivots: list[int] = []
        self.members: list = []

    def __len__(self):
        return len(self._rows)

    def _reduce(self, v) -> list:
        v = list(v)
        if len(v) != self.dim:
            raise ValueError("vector length mismatch")
        for row, p in zip(self._rows, self._pivots):
            c = v[p]
            if not is_zero(c):
                v = [a - c * b if not is_zero(b) else a for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return all(is_zero(a) for a in self._reduce(flatten(v)))

    def add(self, item) -> bool:
        v = self._reduce(flatten(item))
        p = next((i for i, a in enumerate(v) if not is_zero(a)), None)
        if p is None:
            return False
        inv = 1 / v[p] if isinstance(v[p], QSqrt3) else Fraction(1) / v[p]
        v = [a * inv if not is_zero(a) else 0 for a in v]
        # keep rows fully reduced so _reduce works in one pass
        for k, row in enumerate(self._rows):
            c = row[p]
            if not is_zero(c):
                self._rows[k] = [a - c * b if not is_zero(b) else a for a, b in zip(row, v)]
        self._rows.append(v)
        self._pivots.append(p)
        self.members.append(item)
        return True

    def basis_rows(self) -> list[tuple]:
        return [tuple(r) for r in self._rows]
