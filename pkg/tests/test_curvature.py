from fractions import Fraction

import pytest
from hypothesis import given, settings

from walker.construct import builtin_example
from walker.curvature import (
    PhiFamily,
    Tensor,
    antisymmetrize,
    codifferential_check,
    contract,
    cov_deriv,
    cov_deriv_along,
    cov_deriv_at,
    first_bianchi_defect,
    norm_squared,
    ricci,
    riemann,
    second_bianchi_defect,
    trace_35_46,
)
from walker.errors import PreconditionError
from walker.metric import WalkerMetric

from conftest import polys

YZ = ("y1", "y2", "z")


def metrics():
    from hypothesis import strategies as st

    return st.builds(lambda f, a, b: WalkerMetric(2, f, (a, b)),
                     polys(max_terms=3), polys(max_terms=2, allow=YZ), polys(max_terms=2, allow=YZ))


def test_flat_is_flat():
    assert riemann(WalkerMetric.from_strings(3)).is_zero()


def test_pp_value_and_ricci():
    W = WalkerMetric.from_strings(1, "y1^2")
    R = riemann(W)
    assert R[(1, 2, 1, 2)] == 1 and R[(2, 1, 1, 2)] == -1
    assert ricci(W)[2][2] == -1


@given(metrics())
def test_riemann_symmetries(W):
    R = riemann(W)
    for (a, b, c, d), v in R.items():
        assert R[(b, a, c, d)] == -v
        assert R[(a, b, d, c)] == -v
        assert R[(c, d, a, b)] == v
    assert first_bianchi_defect(R).is_zero()


@settings(max_examples=12)
@given(metrics())
def test_second_bianchi(W):
    assert second_bianchi_defect(cov_deriv(riemann(W), W)).is_zero()


@given(metrics())
def test_ricci_symmetric(W):
    Ric = ricci(W)
    for i in range(W.dim):
        for j in range(W.dim):
            assert Ric[i][j] == Ric[j][i]


@settings(max_examples=12)
@given(metrics())
def test_antisymmetric_shortcut_matches_full(W):
    R = riemann(W)
    assert cov_deriv(R, W, antisymmetric=((0, 1), (2, 3))) == cov_deriv(R, W)


@settings(max_examples=12)
@given(metrics())
def test_truncated_derivative_is_jet(W):
    R = riemann(W)
    full = cov_deriv(R, W)
    cut = cov_deriv(Tensor(4, W.dim, R.variables, {k: v.truncate(2) for k, v in R.items()}),
                    W, max_degree=1)
    for k in set(full.comps) | set(cut.comps):
        assert full[k].truncate(1) == cut[k]


@settings(max_examples=12)
@given(metrics())
def test_derivative_along_is_slice(W):
    R = riemann(W)
    dR = cov_deriv(R, W)
    along = cov_deriv_along(R, W, W.z_index)
    z = W.z_index
    for k, v in along.items():
        assert dR[k + (z,)] == v
    assert all(along[k[:4]] == v for k, v in dR.items() if k[4] == z)


def test_cov_deriv_at_matches_evaluation():
    W = builtin_example("thesis", f="x*y1^2 + z*y3")
    R = riemann(W)
    p = (Fraction(1, 2), 1, -1, 0, 2, Fraction(1, 3), 1)
    assert cov_deriv_at(R, W, p) == cov_deriv(R, W).evaluate(p)


def test_metric_compatibility_through_contraction():
    W = WalkerMetric.from_strings(2, "y1^2*z + x*y2", ["y2*z", "y1^2"])
    R = riemann(W)
    # full contraction agrees with explicit index raising by h^-1 and a plain sum
    assert norm_squared(W, R) == contract(W, R, R, [(1, 5), (2, 6), (3, 7), (4, 8)])


@pytest.mark.parametrize("f", ["y1^2", "z*y1^2", "y1^3 + y2^4"])
def test_pp_traces_vanish(f):
    W = WalkerMetric.from_strings(2, f)
    assert trace_35_46(W).is_zero()
    assert norm_squared(W).is_zero


@given(metrics())
def test_codifferential_matches_ricci_for_brinkmann(W):
    W = W.with_f(W.f.substitute("x", W.f.zero(W.variables)))
    Ric = ricci(W)
    cod = codifferential_check(PhiFamily.from_metric(W))
    for i in range(W.n):
        assert Ric[W.z_index][i + 1] == cod[i]


def test_phi_closedness():
    W = WalkerMetric.from_strings(2, "0", ["y2*z", "y1*z"])
    assert PhiFamily.from_metric(W).is_closed() is None
    W = WalkerMetric.from_strings(2, "0", ["y2^2", "0"])
    assert PhiFamily.from_metric(W).is_closed() == (1, 2)
    with pytest.raises(PreconditionError):
        PhiFamily(2, W.u[:1])


def test_antisymmetrize_two_slots():
    W = WalkerMetric.from_strings(1)
    V = W.variables
    one = W.f.constant(1, V)
    T = Tensor(2, 3, V, {(0, 1): one})
    A = antisymmetrize(T, [0, 1])
    assert A[(0, 1)] == -A[(1, 0)] and not A[(0, 1)].is_zero
