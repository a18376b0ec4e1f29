import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from walker.construct import builtin_example
from walker.errors import PreconditionError
from walker.holonomy import (
    ParabolicElement,
    ScreenAlgebra,
    algebra_props,
    commutant_dim,
    default_max_order,
    infinitesimal_holonomy,
    screen_killing_form,
)
from walker.liealg import is_negative_definite
from walker.linalg import RationalMatrix
from walker.metric import WalkerMetric

from conftest import rationals

N = 3


@st.composite
def elements(draw):
    a = draw(rationals)
    so = draw(st.lists(rationals, min_size=3, max_size=3))
    v = tuple(draw(st.lists(rationals, min_size=N, max_size=N)))
    return ParabolicElement(a, RationalMatrix.from_so_coordinates(N, so), v)


@given(elements(), elements())
def test_bracket_is_matrix_commutator(x, y):
    assert x.bracket(y).to_matrix() == x.to_matrix().bracket(y.to_matrix())


@given(elements(), elements(), elements())
def test_jacobi(x, y, z):
    s = [x.bracket(y.bracket(z)), y.bracket(z.bracket(x)), z.bracket(x.bracket(y))]
    total = ParabolicElement.from_vector(
        N, tuple(sum(col) for col in zip(*(e.as_vector() for e in s))))
    assert total.is_zero()


@given(elements())
def test_vector_round_trip(x):
    assert ParabolicElement.from_vector(N, x.as_vector()) == x


def test_flat_is_empty():
    res = infinitesimal_holonomy(WalkerMetric.from_strings(2))
    assert res.full == [] and res.screen.dim == 0 and res.stabilized


def test_pp_screen_trivial_full_abelian():
    res = infinitesimal_holonomy(WalkerMetric.from_strings(2, "y1^4 + y1*y2^2"))
    assert res.screen.dim == 0 and res.stabilized
    assert algebra_props(res.full).abelian
    assert all(e.a == 0 for e in res.full)


def test_pr_full_two_step_solvable():
    res = infinitesimal_holonomy(builtin_example("pr_basic"))
    props = algebra_props(res.full)
    assert res.dims_by_order[-1] == 2 and res.screen.dim == 0
    assert props.two_step_solvable and not props.abelian
    assert props.derived_dims == (2, 1, 0)


def test_ike96_screen_so3():
    res = infinitesimal_holonomy(builtin_example("ike96"))
    assert res.screen.dim == 3 and res.stabilized
    assert res.screen.is_bracket_closed()
    props = algebra_props(res.screen)
    assert props.irreducible and props.commutant_dim == 1 and not props.solvable
    assert is_negative_definite(screen_killing_form(res.screen))


def test_result_independent_of_point():
    W = builtin_example("ike96", f="x*y1^2")
    from fractions import Fraction

    p = (0, Fraction(1, 3), 0, Fraction(-1, 2), 0, 1, Fraction(1, 4))
    assert infinitesimal_holonomy(W, p).dims_by_order[-1] == \
        infinitesimal_holonomy(W).dims_by_order[-1] == 9


def test_non_stabilization_warns():
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        res = infinitesimal_holonomy(builtin_example("ike96"), max_order=1)
    assert not res.stabilized and res.warnings
    assert any(issubclass(w.category, RuntimeWarning) for w in rec)


def test_default_order():
    assert default_max_order(builtin_example("ike96")) == 4


def test_requires_identity_fibre():
    import random

    from walker.corpus import random_fibre

    with pytest.raises(PreconditionError):
        infinitesimal_holonomy(random_fibre(random.Random(0)))


def test_commutant():
    so2 = [RationalMatrix.elementary_so(2, 0, 1)]
    assert commutant_dim(2, so2) == 2
    so3 = [RationalMatrix.elementary_so(3, i, j) for i, j in ((0, 1), (0, 2), (1, 2))]
    assert commutant_dim(3, so3) == 1
    assert commutant_dim(3, []) == 9
    alg = ScreenAlgebra(3, so3)
    assert alg.is_bracket_closed() and alg.same_span(list(reversed(so3)))
    assert not ScreenAlgebra(3, so3[:2]).is_bracket_closed()
