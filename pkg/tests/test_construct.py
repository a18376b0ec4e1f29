import pytest

from walker.construct import EXAMPLES, builtin_example, galaev_metric, symmetric_metric
from walker.errors import PreconditionError, SpecError
from walker.holonomy import infinitesimal_holonomy, z_derivative_projections
from walker.liealg import bspace, builtin_algebra, builtin_pair
from walker.linalg import RationalMatrix


def test_empty_family_is_flat_screen():
    W = galaev_metric([], n=3)
    assert all(u.is_zero for u in W.u)
    assert infinitesimal_holonomy(W).screen.dim == 0
    with pytest.raises(PreconditionError):
        galaev_metric([])


def test_bianchi_violation_named():
    E = RationalMatrix.elementary_so
    Z = RationalMatrix.zeros(3)
    with pytest.raises(PreconditionError, match=r"\(e_1, e_2, e_3\)"):
        galaev_metric([[E(3, 1, 2), Z, Z]])


def test_shape_and_antisymmetry_checks():
    with pytest.raises(SpecError):
        galaev_metric([[RationalMatrix.zeros(2)] * 3])
    with pytest.raises(PreconditionError, match="antisymmetric"):
        galaev_metric([[RationalMatrix.identity(2), RationalMatrix.zeros(2)]])


@pytest.mark.parametrize("count", [1, 2])
def test_derivatives_reproduce_endomorphisms(count):
    g = builtin_algebra("so3")
    Q = [list(q) for q in bspace(g).basis[:count]]
    W = galaev_metric(Q)
    proj = z_derivative_projections(W, count)
    for A in range(count):
        assert list(proj[A]) == Q[A]


def test_printed_normalization_differs():
    g = builtin_algebra("so3")
    Q = [list(q) for q in bspace(g).basis[:2]]
    assert galaev_metric(Q, normalization="printed") != galaev_metric(Q)
    with pytest.raises(SpecError):
        galaev_metric(Q, normalization="other")


def test_symmetric_matches_galaev_of_q_maps():
    P = builtin_pair("sl3-so3")
    Q = [P.q_map(j) for j in range(P.dim_m)]
    assert symmetric_metric(P) == galaev_metric(Q)


def test_catalogue():
    assert {"ike96", "thesis", "galaev05", "galaev05-printed"} <= set(EXAMPLES)
    W = builtin_example("ike96")
    assert str(W.u[0]) == "-y3^2 - 4*y4^2 - y5^2"
    assert str(builtin_example("ike96", f="x*y1^2").f) == "x*y1^2"
    with pytest.raises(SpecError):
        builtin_example("missing")


def test_printed_galaev05_is_not_closed():
    with pytest.warns(RuntimeWarning):
        res = infinitesimal_holonomy(builtin_example("galaev05-printed"), max_order=2)
    assert not res.screen.is_bracket_closed()
