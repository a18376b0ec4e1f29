import random

import pytest

from walker.classify import (
    FLAGS,
    check_pp_equivalences,
    classify,
    closed_phi_potential,
    flatten_closed_phi,
    restricted_screen_flatness,
    spatial_block_vanishes,
)
from walker.construct import builtin_example
from walker.corpus import random_closed_phi, random_fibre, random_general, random_pr
from walker.curvature import riemann
from walker.errors import PreconditionError
from walker.metric import WalkerMetric


def flags(n, f, u=None):
    return classify(WalkerMetric.from_strings(n, f, u)).flags()


def test_flag_names():
    assert set(FLAGS) == set(flags(1, "0"))


def test_cahen_wallach():
    fl = flags(2, "y1^2 - 3*y2^2 + y1*y2")
    assert all(fl.values())


def test_plane_wave_not_cahen_wallach():
    fl = flags(2, "z*y1^2")
    assert fl["plane_wave"] and not fl["cahen_wallach"] and fl["pp_wave"]


def test_pp_not_plane():
    fl = flags(2, "y1^3 + y2^4")
    assert fl["pp_wave"] and not fl["plane_wave"]


def test_pr_not_pp():
    r = classify(builtin_example("pr_basic"))
    assert r.pr_wave and not r.pp_wave and not r.ricci_isotropic and not r.brinkmann
    assert "brinkmann" in r.witness


def test_rescalable_recurrent_field_counts_as_brinkmann():
    r = classify(WalkerMetric.from_strings(1, "x*z + y1^2"))
    assert r.brinkmann and not r.parallel_in_chart and r.pp_wave and r.ricci_isotropic
    assert r.implication_violations() == []


def test_example_is_llhc_not_pr():
    r = classify(builtin_example("ike96"))
    assert r.llhc and not r.pr_wave and r.brinkmann
    assert "pr_wave" in r.witness


def test_pp_equivalences_suite():
    for f, phi in [("y1^2", "1"), ("z*y1^2", "z^2"), ("y1^3 + y2^4", "36*y2^4 + 9*y1^2")]:
        eq = check_pp_equivalences(WalkerMetric.from_strings(2, f))
        assert eq.all_true
        assert eq.phi == eq.phi.parse(phi, eq.phi.variables)


def test_pp_equivalences_fail_for_non_pp():
    eq = check_pp_equivalences(builtin_example("ike96"))
    assert not eq.antisymmetrization and not eq.rho_reconstruction and not eq.trace_condition


def test_pp_equivalences_need_parallel_field():
    with pytest.raises(PreconditionError):
        check_pp_equivalences(builtin_example("pr_basic"))


def test_flatten_closed_phi():
    W = WalkerMetric.from_strings(2, "y1^2", ["y2*z", "y1*z"])
    beta = closed_phi_potential(W)
    assert str(beta) == "y1*y2*z"
    F = flatten_closed_phi(W)
    assert all(u.is_zero for u in F.u)
    assert str(F.f) == "y1^2 - 2*y1*y2"
    assert classify(F).pr_wave


def test_flatten_rejects_non_closed():
    with pytest.raises(PreconditionError, match=r"\(1,2\)"):
        flatten_closed_phi(WalkerMetric.from_strings(2, "0", ["y2^2", "0"]))


def test_flatten_substitutes_x():
    W = WalkerMetric.from_strings(1, "x*y1", ["y1*z"])
    F = flatten_closed_phi(W)
    assert F.f == F.f.parse("x*y1 - 1/2*y1^3*z - y1^2", F.variables)


@pytest.mark.parametrize("seed", range(6))
def test_implications_random(seed):
    rng = random.Random(seed)
    for W in (random_general(rng, 2), random_pr(rng, 2), random_closed_phi(rng, 2)[0]):
        assert classify(W).implication_violations() == []


@pytest.mark.parametrize("seed", range(4))
def test_llhc_equivalence_general_fibre(seed):
    W = random_fibre(random.Random(seed), 2)
    R = riemann(W)
    assert (spatial_block_vanishes(W, R) is None) == restricted_screen_flatness(W, R)


def test_restricted_screen_flatness_detects_curvature():
    W = builtin_example("ike96")
    R = riemann(W)
    assert restricted_screen_flatness(W, R)
    bumped = dict(R.comps)
    one = W.f.constant(1, W.variables)
    bumped[(1, 2, 3, 4)] = one
    from walker.curvature import Tensor

    assert not restricted_screen_flatness(W, Tensor(4, W.dim, W.variables, bumped))
