from fractions import Fraction

import pytest
from hypothesis import given

from walker.errors import PreconditionError
from walker.metric import (
    WalkerMetric,
    adapted_frame,
    christoffel,
    inverse_metric,
    metric_matrix,
    pair,
    recurrence_form,
)
from walker.polynomial import Polynomial, walker_variables

from conftest import V2, polys


def _matmul(a, b):
    D = len(a)
    zero = Polynomial.zero(a[0][0].variables)
    return [[sum((a[i][k] * b[k][j] for k in range(D)), zero) for j in range(D)]
            for i in range(D)]


def _is_identity(m):
    return all((m[i][j] - (1 if i == j else 0)).is_zero
               for i in range(len(m)) for j in range(len(m)))


def test_flat_matrix():
    h = metric_matrix(WalkerMetric.from_strings(2))
    assert str(h[0][3]) == "1" and str(h[1][1]) == "1" and h[3][3].is_zero


def test_example_component():
    W = WalkerMetric.from_strings(5, "0", ["-y3^2-4*y4^2-y5^2", "0", "0", "0", "0"])
    assert str(metric_matrix(W)[1][6]) == "-y3^2 - 4*y4^2 - y5^2"


def test_pp_component_and_inverse():
    W = WalkerMetric.from_strings(1, "y1^2")
    assert str(metric_matrix(W)[2][2]) == "y1^2"
    assert str(inverse_metric(W)[0][0]) == "-y1^2"


@given(polys(), polys(allow=("y1", "y2", "z")), polys(allow=("y1", "y2", "z")))
def test_inverse_is_exact(f, u1, u2):
    W = WalkerMetric(2, f, (u1, u2))
    assert _is_identity(_matmul(metric_matrix(W), inverse_metric(W)))


def test_general_fibre_needs_inverse():
    V = walker_variables(2)
    g = ((Polynomial.constant(1, V), Polynomial.var("y2", V)),
         (Polynomial.var("y2", V), Polynomial.parse("1 + y2^2", V)))
    W = WalkerMetric(2, Polynomial.zero(V), (Polynomial.zero(V),) * 2, g)
    with pytest.raises(PreconditionError, match="symbolic inversion unsupported"):
        inverse_metric(W)
    gi = ((Polynomial.parse("1 + y2^2", V), -Polynomial.var("y2", V)),
          (-Polynomial.var("y2", V), Polynomial.constant(1, V)))
    W2 = WalkerMetric(2, Polynomial.zero(V), (Polynomial.zero(V),) * 2, g, gi)
    assert _is_identity(_matmul(metric_matrix(W2), inverse_metric(W2)))
    with pytest.raises(PreconditionError, match="not the inverse"):
        WalkerMetric(2, Polynomial.zero(V), (Polynomial.zero(V),) * 2, g, g)


def test_validation():
    with pytest.raises(PreconditionError, match="u1 depends on x"):
        WalkerMetric.from_strings(1, "0", ["x"])
    with pytest.raises(PreconditionError):
        WalkerMetric.from_strings(2, "0", ["0"])
    with pytest.raises(PreconditionError):
        WalkerMetric(0, 0, ())


@given(polys(), polys(allow=("y1", "y2", "z")), polys(allow=("y1", "y2", "z")))
def test_adapted_frame_relations(f, u1, u2):
    W = WalkerMetric(2, f, (u1, u2))
    F = adapted_frame(W)
    X, Z, E = F.X, F.Z, F.E
    assert pair(W, X, X).is_zero and pair(W, Z, Z).is_zero
    assert pair(W, X, Z) == Polynomial.constant(1, V2)
    for i, Ei in enumerate(E):
        assert pair(W, X, Ei).is_zero and pair(W, Z, Ei).is_zero
        for j, Ej in enumerate(E):
            assert pair(W, Ei, Ej) == Polynomial.constant(int(i == j), V2)


@given(polys(), polys(allow=("y1", "y2", "z")), polys(allow=("y1", "y2", "z")))
def test_recurrence_form_only_dz(f, u1, u2):
    W = WalkerMetric(2, f, (u1, u2))
    theta = recurrence_form(W).components
    assert all(c.is_zero for c in theta[:-1])
    assert theta[-1] == f.diff("x").scale(Fraction(1, 2))


@given(polys(), polys(allow=("y1", "y2", "z")))
def test_christoffel_symmetric(f, u1):
    W = WalkerMetric(2, f, (u1, Polynomial.zero(V2)))
    G = christoffel(W)
    for k in range(4):
        for i in range(4):
            for j in range(4):
                assert G[k, i, j] == G[k, j, i]


def test_translated_moves_point_to_origin():
    W = WalkerMetric.from_strings(1, "x*y1 + z^2", ["y1*z"])
    p = (Fraction(1), Fraction(2), Fraction(-1, 2))
    T = W.translated(p)
    assert T.f.evaluate((0, 0, 0)) == W.f.evaluate(p)
    assert T.u[0].evaluate((1, 1, 1)) == W.u[0].evaluate(tuple(a + 1 for a in p))
