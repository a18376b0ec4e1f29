"""Walker metrics with prescribed screen holonomy, and the example catalogue."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import PreconditionError, SpecError
from .field import QSqrt3, is_zero
from .liealg import SymmetricPair, weak_bianchi_defect
from .linalg import RationalMatrix
from .metric import WalkerMetric
from .polynomial import Polynomial, walker_variables

__all__ = [
    "galaev_metric",
    "symmetric_metric",
    "builtin_example",
    "EXAMPLES",
    "NORMALIZATIONS",
]

NORMALIZATIONS = ("polycurv", "printed")


def _weights(A: int, normalization: str) -> tuple[Fraction, int]:
    """Coefficient and z-exponent for the A-th endomorphism (A is 1-based).

    ``polycurv`` is chosen so that the so(n)-part of
    ``(nabla_z)^(A-1) R(d_yi, d_z)`` at the origin is exactly ``Q_A(e_i)``.
    ``printed`` is ``(A-1)!/3 * z^A``, kept for comparison.
    """
    if normalization == "polycurv":
        return Fraction(1, 3 * factorial(A - 1)), A - 1
    if normalization == "printed":
        return Fraction(factorial(A - 1), 3), A
    raise SpecError(f"unknown normalization {normalization!r}; use one of {NORMALIZATIONS}")


def _monomial(V, n, k, l, p):
    e = [0] * (n + 2)
    e[k + 1] += 1
    e[l + 1] += 1
    e[n + 1] += p
    return Polynomial._raw({tuple(e): 1}, V)


def galaev_metric(Q: Sequence[Sequence[RationalMatrix]], f=0, n: int | None = None,
                  normalization: str = "polycurv") -> WalkerMetric:
    """Metric with ``u_i = sum_A c_A sum_kl <Q_A(e_k)e_l + Q_A(e_l)e_k, e_i> y_k y_l z^p_A``.

    Each ``Q_A`` is a sequence of n antisymmetric matrices ``Q_A(e_1)..Q_A(e_n)``
    and must satisfy the weak Bianchi identity.
    """
    Q = [tuple(M if isinstance(M, RationalMatrix) else RationalMatrix(M) for M in q) for q in Q]
    if n is None:
        if not Q:
            raise PreconditionError("n is required when no endomorphisms are given")
        n = len(Q[0])
    V = walker_variables(n)
    for A, q in enumerate(Q, 1):
        if len(q) != n or any(M.shape != (n, n) for M in q):
            raise SpecError(f"Q_{A} must consist of {n} matrices of size {n}x{n}")
        for k, M in enumerate(q, 1):
            if not M.is_antisymmetric():
                raise PreconditionError(f"Q_{A}(e_{k}) is not antisymmetric")
        bad = weak_bianchi_defect(q)
        if bad is not None:
            a, b, c = (x + 1 for x in bad)
            raise PreconditionError(
                f"Q_{A} violates the weak Bianchi identity on (e_{a}, e_{b}, e_{c})")
    u = [Polynomial.zero(V) for _ in range(n)]
    for A, q in enumerate(Q, 1):
        c, p = _weights(A, normalization)
        for i in range(n):
            terms = Polynomial.zero(V)
            for k in range(n):
                for l in range(n):
                    w = q[k][i, l] + q[l][i, k]
                    if not is_zero(w):
                        terms = terms + _monomial(V, n, k, l, p).scale(w)
            u[i] = u[i] + terms.scale(c)
    return WalkerMetric(n, f if isinstance(f, Polynomial) else _f(f, V), tuple(u))


def _f(f, V):
    if isinstance(f, str):
        return Polynomial.parse(f, V)
    return Polynomial.constant(f, V)


def symmetric_metric(P: SymmetricPair, f=0, normalization: str = "polycurv") -> WalkerMetric:
    """Metric built from ``B([X_j,X_k],[X_l,X_i]) + B([X_j,X_l],[X_k,X_i])``.

    ``B`` is the Killing form divided by ``B(X_1, X_1)`` so that the m-basis is
    orthonormal; :class:`SymmetricPair` has already rejected bases that are
    not orthogonal or not of equal length.
    """
    n = P.dim_m
    V = walker_variables(n)
    scale = P.inner_scale
    inv = 1 / scale if isinstance(scale, QSqrt3) else Fraction(1) / scale
    br = [[P.bracket_mm(j, k) for k in range(n)] for j in range(n)]
    u = [Polynomial.zero(V) for _ in range(n)]
    for j in range(n):
        c, p = _weights(j + 1, normalization)
        for i in range(n):
            for k in range(n):
                for l in range(n):
                    w = P.killing_mm(br[j][k], br[l][i]) + P.killing_mm(br[j][l], br[k][i])
                    if not is_zero(w):
                        u[i] = u[i] + _monomial(V, n, k, l, p).scale(w * inv * c)
    return WalkerMetric(n, f if isinstance(f, Polynomial) else _f(f, V), tuple(u))


# -- catalogue -----------------------------------------------------------------

EXAMPLES = {
    "ike96": (5, "0", [
        "-y3^2 - 4*y4^2 - y5^2",
        "0",
        "-2*sqrt3*y2*y3 - 2*y4*y5",
        "0",
        "2*sqrt3*y2*y5 + 2*y3*y4",
    ]),
    "thesis": (5, "0", [
        "-4*y1*y2",
        "4*y1*y2",
        "-y1*y4 - y2*y4 + y1*y3 - y2*y3 + sqrt3*(y4*y5 - y3*y5)",
        "y1*y4 - y2*y4 + y1*y3 + y2*y3 + sqrt3*(y4*y5 + y3*y5)",
        "0",
    ]),
    # The literal transcription below carries two extra terms (-y5^2 in u3 and
    # y3*y5 in u5) that no weak curvature endomorphism of so(3) produces; the
    # corrected family drops them.  See galaev05-printed.
    "galaev05": (5, "0", [
        "-2/3*(y3^2 + 4*y4^2 + y5^2)",
        "2*sqrt3/3*(y3^2 - y5^2)",
        "2/3*(y1*y3 - sqrt3*y2*y3 - 3*y4*y5)",
        "8/3*y1*y4",
        "2/3*(y1*y5 + sqrt3*y2*y5 + 3*y3*y4)",
    ]),
    "galaev05-printed": (5, "0", [
        "-2/3*(y3^2 + 4*y4^2 + y5^2)",
        "2*sqrt3/3*(y3^2 - y5^2)",
        "2/3*(y1*y3 - sqrt3*y2*y3 - 3*y4*y5 - y5^2)",
        "8/3*y1*y4",
        "2/3*(y1*y5 + sqrt3*y2*y5 + 3*y3*y4 + y3*y5)",
    ]),
    "pp_quadratic": (2, "y1^2", ["0", "0"]),
    "pr_basic": (2, "x*y1^2", ["0", "0"]),
}


def builtin_example(name: str, f=None) -> WalkerMetric:
    """Catalogue metric by name; ``f`` (string or polynomial) overrides the default."""
    try:
        n, f0, u = EXAMPLES[name]
    except KeyError:
        raise SpecError(f"unknown example {name!r}; known: {', '.join(EXAMPLES)}") from None
    W = WalkerMetric.from_strings(n, f0, u)
    if f is not None:
        W = W.with_f(f)
    return W
