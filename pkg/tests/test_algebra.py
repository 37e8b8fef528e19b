import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nilforms import zoo
from nilforms.algebra import (AlgebraError, Grade, GradingError, InvolutionError, SplitError, Submodule,
                              algebra_from_json, as_grade, commutator_algebra, direct_sum, make_algebra,
                              module_split, morphism_check, pushforward_product, shift_grading,
                              with_grading)


def so3_numpy():
    mats = []
    for a, b in itertools.combinations(range(3), 2):
        m = np.zeros((3, 3), dtype=int)
        m[a, b], m[b, a] = 1, -1
        mats.append(m)
    return mats


def test_so3_structure_constants_match_matrix_commutators():
    A = zoo.classical("so", n=3)
    mats = so3_numpy()
    for i, j in itertools.product(range(3), repeat=2):
        expect = mats[i] @ mats[j] - mats[j] @ mats[i]
        got = sum(int(c) * mats[k] for k, c in enumerate(A.mul(A.basis_vector(i), A.basis_vector(j))))
        assert np.array_equal(got, expect)


def test_malformed_index_names_the_entry():
    with pytest.raises(AlgebraError, match=r"\(0, 5\)"):
        make_algebra(["a", "b"], {(0, 5): [(0, 1)]})
    with pytest.raises(AlgebraError):
        make_algebra([], {})


def test_grading_compatibility_is_checked():
    with pytest.raises(GradingError) as info:
        make_algebra(["x", "y"], {(0, 0): [(1, 1)]}, grades=[1, 1], grading_rank=1)
    assert info.value.offending == [(0, 0, 1)]
    A = make_algebra(["x", "y"], {(0, 0): [(1, 1)]}, grades=[1, 2], grading_rank=1)
    assert A.graded and A.grades[1] == Grade((2,))


def test_grade_group_laws():
    a, b = Grade((1, -2), (1,)), Grade((3, 0), (1,))
    assert a + b == Grade((4, -2), (0,))
    assert (a - a).is_zero()
    assert a + Grade.zero(2, 1) == a
    assert as_grade(2, 1, 0) == Grade((2,))
    with pytest.raises(Exception):
        Grade((1,)) + Grade((1, 2))


def test_involution_checked_at_construction():
    with pytest.raises(InvolutionError):
        # complex conjugation with the wrong sign on 1 does not square correctly
        make_algebra(["1", "i"], {(0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)],
                                  (1, 1): [(0, -1)]}, involution=[[1, 1], [0, -1]])
    C = zoo.complexes()
    assert C.involution is not None


def test_flags_on_known_algebras():
    so3 = zoo.classical("so", n=3)
    f = so3.flags
    assert f.jacobi and f.anticommutative and not f.associative and not f.commutative
    M2 = zoo.matrix_algebra(2)
    assert M2.flags.associative and not M2.flags.commutative and M2.flags.alternative
    O = zoo.octonions()
    assert O.flags.alternative and not O.flags.associative
    assert O.flags.associative.witness is not None


def test_commutator_of_matrix_algebra_is_lie():
    L = commutator_algebra(zoo.matrix_algebra(2))
    assert L.flags.jacobi and L.flags.anticommutative


def test_direct_sum_blocks():
    A = zoo.classical("so", n=3)
    S = direct_sum(A, A)
    assert S.dim == 6 and S.labels[0] == "L01.1" and S.labels[3] == "L01.2"
    x, y = S.basis_vector(0), S.basis_vector(3)
    assert not any(S.mul(x, y))
    assert S.flags.jacobi


def test_semidirect_iso3():
    B = zoo.classical("iso", n=3)
    assert B.labels[:3] == ("t0", "t1", "t2")
    assert B.flags.jacobi
    T = Submodule.of_labels(B, ["t0", "t1", "t2"])
    assert T.is_ideal()
    assert not any(B.mul(B.basis_vector(0), B.basis_vector(1)))


def test_pushforward_product_extension():
    A = zoo.classical("so", n=3)
    # E = R^3 ⊕ so(3); pi projects onto so(3), section includes it
    pi = [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
    section = [[0, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    E = pushforward_product(6, A, pi, section)
    for i, j in itertools.product(range(3), repeat=2):
        assert E.mul(E.basis_vector(3 + i), E.basis_vector(3 + j))[3:] == A.mul(A.basis_vector(i),
                                                                                 A.basis_vector(j))
    # the kernel multiplies to zero with everything
    for i in range(6):
        assert not any(E.mul(E.basis_vector(0), E.basis_vector(i)))
    with pytest.raises(AlgebraError):
        pushforward_product(6, A, pi, [[1, 0, 0]] * 6)


def test_shift_grading_moves_grades_and_keeps_products():
    H = zoo.classical("heisenberg", n=1)
    S = shift_grading(H, 1)
    assert [g.free[0] for g in S.grades] == [0, 0, 1]
    assert S.table == H.table
    assert S.offset == Grade((1,))
    again = algebra_from_json(S.to_json())
    assert again == S
    with pytest.raises(AlgebraError):
        shift_grading(zoo.classical("so", n=3), 1)


def test_json_round_trip_builtins():
    for A in (zoo.classical("so", n=3), zoo.classical("heisenberg", n=1), zoo.quaternions(),
              zoo.classical("super_translation", k=1, l=2)):
        B = algebra_from_json(A.to_json())
        assert B == A and B.to_json() == A.to_json()


def test_submodule_basics():
    A = zoo.classical("so", n=3)
    V = Submodule(A, [(1, 1, 0), (0, 1, 1)])
    assert V.dim == 2 and V.contains((1, 2, 1)) and not V.contains((1, 0, 0))
    with pytest.raises(AlgebraError):
        Submodule(A, [(1, 0, 0), (2, 0, 0)])
    assert Submodule.full(A).is_subalgebra()
    assert not Submodule.of_labels(A, ["L01"]).is_ideal()


def test_graded_components_of_inhomogeneous_basis():
    H = zoo.classical("heisenberg", n=1)
    V = Submodule(H, [(1, 0, 1), (0, 0, 1)])
    comps = V.graded_components()
    assert sorted(g.free[0] for g in comps) == [1, 2]
    W = Submodule(H, [(1, 0, 1)])
    with pytest.raises(AlgebraError):
        W.graded_components()


def test_module_split():
    B = zoo.classical("iso", n=3)
    e = [B.basis_vector(i) for i in range(6)]
    sp = module_split(B, e[3:], e[:3])
    assert sp.part0_subalgebra and not sp.part0_ideal and sp.part1_subalgebra
    with pytest.raises(SplitError):
        module_split(B, e[3:], e[:2])


def test_morphism_check_and_refutation():
    A = zoo.classical("so", n=3)
    ident = [[int(i == j) for j in range(3)] for i in range(3)]
    f = morphism_check(ident, A, A)
    assert f.verified and f.is_injective()
    bad = morphism_check([[2, 0, 0], [0, 1, 0], [0, 0, 1]], A, A)
    assert bad.status == "refuted" and bad.witness[0] == "product"


rot = st.sampled_from([
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 0, 1], [1, 0, 0], [0, 1, 0]],   # cyclic relabelling is an automorphism of so(3)
    [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
])


@settings(max_examples=20, deadline=None)
@given(rot, rot)
def test_morphism_composition(m1, m2):
    # L01, L02, L12 = e3, -e2, e1 in cross-product coordinates; cyclic maps
    # on (L12, -L02, L01) are automorphisms
    A = zoo.classical("so", n=3)
    to_cross = [[0, 0, 1], [0, -1, 0], [1, 0, 0]]
    from nilforms.linalg import mat_mul
    P = to_cross  # its own inverse
    f = morphism_check(mat_mul(P, mat_mul(m1, P)), A, A)
    g = morphism_check(mat_mul(P, mat_mul(m2, P)), A, A)
    assert f.verified and g.verified
    h = g.compose(f)
    assert h.verified
    x = (Fraction(1), Fraction(2), Fraction(-3))
    assert h(x) == g(f(x))


small = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3), small)
def test_product_is_bilinear(x, y, z, c):
    A = zoo.classical("su", n=2)
    lhs = A.mul(A.add(x, [c * v for v in y]), z)
    rhs = A.add(A.mul(x, z), [c * v for v in A.mul(y, z)])
    assert lhs == rhs


def test_with_grading_validates():
    B = zoo.classical("iso", n=3)
    G = with_grading(B, [1, 1, 1, 0, 0, 0], grading_rank=1)
    assert G.graded
    with pytest.raises(GradingError):
        with_grading(B, [0, 0, 0, 1, 1, 1], grading_rank=1)
