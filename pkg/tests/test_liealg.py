from fractions import Fraction

import pytest

from walker.errors import PreconditionError, SpecError
from walker.liealg import (
    LieAlgebraRep,
    SymmetricPair,
    bspace,
    builtin_algebra,
    builtin_pair,
    is_berger,
    is_negative_definite,
    is_weak_berger,
    kspace,
    rspace,
    weak_bianchi_defect,
    weak_space_contains,
)
from walker.linalg import RationalMatrix

E = RationalMatrix.elementary_so


def test_so2():
    g = builtin_algebra("so2-2dim")
    assert bspace(g).dim == 2 and kspace(g).dim == 1
    assert is_weak_berger(g) and is_berger(g)


def test_so3_standard():
    g = builtin_algebra("so3")
    assert bspace(g).dim == 8 and kspace(g).dim == 6
    assert is_negative_definite(g.killing_form())


def test_so3_irreducible_5dim():
    g = builtin_algebra("so3-5dim")
    assert g.dim == 3 and g.n == 5
    B, K = bspace(g), kspace(g)
    assert B.dim == 5 and K.dim == 1
    assert rspace(K).dim <= B.dim
    assert is_weak_berger(g) and is_berger(g)
    assert is_negative_definite(g.killing_form())


def test_u1_so4_not_weak_berger():
    g = builtin_algebra("u1-so4")
    assert bspace(g).dim == 0 and not is_weak_berger(g) and not is_berger(g)


def test_bspace_elements_satisfy_bianchi():
    g = builtin_algebra("so3-5dim")
    for Q in bspace(g).basis:
        assert weak_bianchi_defect(Q) is None
        assert all(g.coords(M) is not None for M in Q)
        assert weak_space_contains(bspace(g), Q)


def test_kspace_elements_satisfy_first_bianchi():
    g = builtin_algebra("so3")
    n = g.n
    for R in kspace(g).basis:
        val = lambda a, b: R.get((a, b)) if a < b else (  # noqa: E731
            -R[(b, a)] if a > b else RationalMatrix.zeros(n))
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        s = val(a, b)[d, c] + val(b, c)[d, a] + val(c, a)[d, b]
                        assert s == 0


def test_weak_bianchi_defect_names_triple():
    Q = [E(3, 1, 2), RationalMatrix.zeros(3), RationalMatrix.zeros(3)]
    assert weak_bianchi_defect(Q) == (0, 1, 2)


def test_validation():
    with pytest.raises(PreconditionError, match="bracket-closed"):
        LieAlgebraRep(3, (E(3, 0, 1), E(3, 0, 2)))
    with pytest.raises(PreconditionError, match="antisymmetric"):
        LieAlgebraRep(2, (RationalMatrix.identity(2),))
    with pytest.raises(PreconditionError, match="dependent"):
        LieAlgebraRep(3, (E(3, 0, 1), E(3, 0, 1) * 2))
    with pytest.raises(SpecError):
        builtin_algebra("e8")
    with pytest.raises(SpecError):
        builtin_pair("nope")


def test_symmetric_pairs():
    P = builtin_pair("sl3-so3")
    assert (P.dim_k, P.dim_m) == (3, 5) and P.inner_scale == 12
    assert P.isotropy().dim == 3
    Q = builtin_pair("su2-u1")
    assert (Q.dim_k, Q.dim_m) == (1, 2) and Q.inner_scale == -2


def test_symmetric_pair_rejects_bad_m_basis():
    L = [E(3, 0, 1), E(3, 0, 2), E(3, 1, 2)]
    with pytest.raises(PreconditionError, match="norms differ"):
        SymmetricPair.from_matrices([L[0]], [L[1], L[2] * 2])
    with pytest.raises(PreconditionError, match="not orthogonal"):
        SymmetricPair.from_matrices([L[0]], [L[1], L[2] + L[1]])
    with pytest.raises(PreconditionError, match="symmetric pair"):
        SymmetricPair.from_matrices([L[0], L[1]], [L[2]])


def test_killing_form_values():
    g = builtin_algebra("so3")
    B = g.killing_form()
    assert B[0, 0] == -2 and B[0, 1] == 0
    assert not is_negative_definite(RationalMatrix([[Fraction(-1), 0], [0, 0]]))
