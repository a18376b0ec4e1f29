"""Seeded generators of random Walker metrics with prescribed structure.

All coefficients are small integers so the exact engine stays fast.  Every
generator takes a :class:`random.Random` so corpora are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .metric import WalkerMetric
from .polynomial import Polynomial, walker_variables

__all__ = [
    "NamedMetric",
    "random_poly",
    "random_general",
    "random_brinkmann",
    "random_pr",
    "random_brinkmann_llhc",
    "random_closed_phi",
    "random_fibre",
    "standard_corpus",
]


@dataclass(frozen=True)
class NamedMetric:
    name: str
    metric: WalkerMetric


def random_poly(rng: random.Random, variables, among, max_degree: int, terms: int,
                coeff: int = 3, min_degree: int = 0) -> Polynomial:
    """Sum of up to ``terms`` monomials in the variables named in ``among``."""
    idx = [variables.index(v) for v in among]
    out = {}
    for _ in range(terms):
        deg = rng.randint(min_degree, max_degree)
        e = [0] * len(variables)
        for _ in range(deg):
            e[rng.choice(idx)] += 1
        c = rng.choice([k for k in range(-coeff, coeff + 1) if k])
        out[tuple(e)] = out.get(tuple(e), 0) + c
    return Polynomial(out, variables)


def _yz(V):
    return V[1:]


def _y(V):
    return V[1:-1]


def random_general(rng, n: int, degree: int = 3) -> WalkerMetric:
    """``f`` in all variables, ``u`` in ``(y, z)``, identity fibre."""
    V = walker_variables(n)
    f = random_poly(rng, V, V, degree, 3)
    u = [random_poly(rng, V, _yz(V), degree, 2, min_degree=1) for _ in range(n)]
    return WalkerMetric(n, f, tuple(u))


def random_brinkmann(rng, n: int, degree: int = 3) -> WalkerMetric:
    V = walker_variables(n)
    f = random_poly(rng, V, _yz(V), degree, 3)
    u = [random_poly(rng, V, _yz(V), degree, 2, min_degree=1) for _ in range(n)]
    return WalkerMetric(n, f, tuple(u))


def random_pr(rng, n: int, degree: int = 3, brinkmann: bool | None = None) -> WalkerMetric:
    """``f = x a + b`` with ``u`` a gradient in ``y``; ``a`` depends on ``y`` unless ``brinkmann``.

    These are pr-waves; they are pp-waves exactly when ``a`` is a function of ``z``.
    """
    V = walker_variables(n)
    if brinkmann is None:
        brinkmann = rng.random() < 0.5
    among = ("z",) if brinkmann else _yz(V)
    a = random_poly(rng, V, among, 2, 2)
    if not brinkmann and not any(a.depends_on(v) for v in _y(V)):
        a = a + Polynomial.var(rng.choice(_y(V)), V)
    b = random_poly(rng, V, _yz(V), degree, 3)
    f = Polynomial.var("x", V) * a + b
    beta = random_poly(rng, V, _yz(V), degree, 2, min_degree=2) if rng.random() < 0.5 \
        else Polynomial.zero(V)
    u = tuple(beta.diff(v) for v in _y(V))
    return WalkerMetric(n, f, u)


def random_brinkmann_llhc(rng, n: int | None = None, degree: int = 4) -> WalkerMetric:
    """Brinkmann wave with identity fibre (hence llhc), degree <= ``degree``, n <= 5."""
    n = rng.randint(1, 5) if n is None else n
    V = walker_variables(n)
    f = random_poly(rng, V, _yz(V), degree, 2)
    u = [random_poly(rng, V, _yz(V), degree, 2 if n > 3 else 3, min_degree=1)
         for _ in range(n)]
    return WalkerMetric(n, f, tuple(u))


def random_closed_phi(rng, n: int, degree: int = 3, x_linear: bool = False):
    """Metric with ``u = grad_y beta``; returns ``(W, beta)``."""
    V = walker_variables(n)
    beta = random_poly(rng, V, _yz(V), degree, 3, min_degree=2)
    beta = beta - Polynomial({e: c for e, c in beta.terms.items()
                              if not any(e[1:n + 1])}, V)  # drop y-free part
    if beta.is_zero:
        beta = Polynomial.var("y1", V) ** 2 * Polynomial.var("z", V)
    f = random_poly(rng, V, _yz(V), degree, 3)
    if x_linear:
        f = f + Polynomial.var("x", V) * random_poly(rng, V, ("z",), 1, 1)
    u = tuple(beta.diff(v) for v in _y(V))
    return WalkerMetric(n, f, u), beta


def random_fibre(rng, n: int = 2, degree: int = 2, brinkmann: bool = True) -> WalkerMetric:
    """Non-identity fibre metric ``g = L^T L`` with ``L`` unipotent upper triangular."""
    V = walker_variables(n)
    zero, one = Polynomial.zero(V), Polynomial.constant(1, V)
    L = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            # g = sum_i (dy_i + sum_j L_ij dy_j)^2 is flat when L_ij depends on y_j only
            L[i][j] = random_poly(rng, V, (V[i + 1], "z"), degree, 2, min_degree=1)
    N = [[L[i][j] if i != j else zero for j in range(n)] for i in range(n)]

    def mul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(n)), zero) for j in range(n)]
                for i in range(n)]

    Linv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    P = [row[:] for row in Linv]
    for k in range(1, n):
        P = mul(P, N)
        sgn = -1 if k % 2 else 1
        Linv = [[Linv[i][j] + P[i][j].scale(sgn) for j in range(n)] for i in range(n)]
    T = lambda A: [[A[j][i] for j in range(n)] for i in range(n)]  # noqa: E731
    g = mul(T(L), L)
    ginv = mul(Linv, T(Linv))
    among = _yz(V) if brinkmann else V
    f = random_poly(rng, V, among, degree, 2)
    u = [random_poly(rng, V, _yz(V), degree, 1, min_degree=1) for _ in range(n)]
    return WalkerMetric(n, f, tuple(u), tuple(map(tuple, g)), tuple(map(tuple, ginv)))


def standard_corpus(seed: int = 0, size: int = 24) -> list[NamedMetric]:
    """Mixed corpus: catalogue examples plus random metrics of every kind."""
    from .construct import builtin_example

    rng = random.Random(seed)
    out = [NamedMetric(name, builtin_example(name))
           for name in ("ike96", "thesis", "galaev05", "pp_quadratic", "pr_basic")]
    makers = [
        ("general", lambda: random_general(rng, rng.randint(1, 3), 3)),
        ("brinkmann", lambda: random_brinkmann(rng, rng.randint(1, 3), 3)),
        ("pr", lambda: random_pr(rng, rng.randint(1, 3), 3)),
        ("fibre", lambda: random_fibre(rng, 2, 2, rng.random() < 0.7)),
        ("closed-phi", lambda: random_closed_phi(rng, rng.randint(1, 3), 3)[0]),
    ]
    k = 0
    while len(out) < size:
        label, make = makers[k % len(makers)]
        out.append(NamedMetric(f"{label}-{k}", make()))
        k += 1
    return out
