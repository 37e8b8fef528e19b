import itertools

import numpy as np
import pytest

from nilforms import zoo
from nilforms.algebra import Submodule, direct_sum, pushforward_product
from nilforms.forms import generic_form, wedge_power
from nilforms.nil import EXACT, modular, nil_bound, nil_degree, solv_verify, weak_nil


def full(A):
    return Submodule.full(A)


so3 = zoo.classical("so", n=3)


def test_abelian_examples():
    ab = zoo.classical("abelian", k=2)
    assert nil_bound(full(ab), 1, 1).certified
    d = nil_degree(full(ab), 1, 3)
    assert d.degree == 1 and not d.degenerate
    # the witness is the generic form itself (power 1)
    assert d.witness.refuted and d.witness.s == 0


def test_so3_bracket_examples():
    c1 = nil_bound(full(so3), 1, 1)
    assert c1.refuted
    w = c1.witness
    assert w["monomial"] and w["basis"] in so3.labels and w["leading_term"]["coeff"] != "0"
    assert nil_bound(full(so3), 1, 2).certified
    assert nil_degree(full(so3), 1, 4).degree == 2


def test_refuted_witness_reevaluates_nonzero():
    V = full(so3)
    cert = nil_bound(V, 1, 1)
    f = generic_form(V, 1, 2, "x")
    sq = wedge_power(f, 2)
    key = (tuple(cert.witness["monomial"]), so3.labels.index(cert.witness["basis"]))
    assert not sq.terms[key].is_zero()


def test_certificates_are_reproducible():
    a = nil_bound(full(so3), 1, 2).to_json()
    b = nil_bound(full(so3), 1, 2).to_json()
    assert a == b
    assert list(a) == list(b)


def test_weak_nil_super_translation():
    A = zoo.classical("super_translation", k=2, l=2)
    cert = weak_nil(full(A), 2, 1)
    assert cert.certified
    assert cert.matrix and all(r["verdict"] == "zero" for r in cert.matrix)
    # ordered pairs of the two graded components
    assert len(cert.matrix) == 4


def test_weak_nil_heisenberg_mixed_products():
    H = zoo.classical("heisenberg", n=1)
    assert weak_nil(full(H), 1, 2).certified
    assert weak_nil(full(H), 1, 1).refuted


def test_even_degree_lie_claim():
    for A in (so3, zoo.classical("u", n=2)):
        assert nil_bound(full(A), 2, 1).certified


def test_solv_examples():
    S = direct_sum(so3, so3)
    left = Submodule(S, [S.basis_vector(i) for i in range(3)])
    right = Submodule(S, [S.basis_vector(i) for i in range(3, 6)])
    cert = solv_verify(full(S), [left, right], 1, 2)
    assert cert.certified and len(cert.parts) == 2
    bad = solv_verify(full(S), [left], 1, 2)
    assert bad.refuted and "missing_direction" in bad.witness
    single = solv_verify(full(so3), [full(so3)], 1, 2)
    assert single.certified


def test_solv_refutes_a_non_nil_part():
    M2 = zoo.matrix_algebra(2)
    cert = solv_verify(full(M2), [full(M2)], 1, 1)
    assert cert.refuted and "part_witness" in cert.witness


SUBJECTS = [
    ("so3", lambda: full(so3)),
    ("su2", lambda: full(zoo.classical("su", n=2))),
    ("heisenberg", lambda: full(zoo.classical("heisenberg", n=1))),
    ("quaternions", lambda: full(zoo.quaternions())),
    ("complexes", lambda: full(zoo.complexes())),
]


@pytest.mark.parametrize("name,make", SUBJECTS)
def test_monotonicity(name, make):
    V = make()
    verdicts = [nil_bound(V, 1, s).certified for s in range(4)]
    first = verdicts.index(True) if True in verdicts else len(verdicts)
    assert all(verdicts[first:])


@pytest.mark.parametrize("name,make", SUBJECTS)
def test_generator_count_stability(name, make):
    V = make()
    for s in range(3):
        N = s + 1
        assert nil_bound(V, 1, s, n_gens=N).verdict == nil_bound(V, 1, s, n_gens=N + 1).verdict


@pytest.mark.parametrize("name,make", SUBJECTS)
def test_exact_modular_agreement(name, make):
    V = make()
    for s in range(3):
        exact = nil_bound(V, 1, s, EXACT)
        mod = nil_bound(V, 1, s, modular(trials=20, seed=3))
        assert exact.verdict == mod.verdict
        if mod.certified:
            assert mod.probabilistic and mod.failure_bound["trials"] == 20


def test_pushforward_extension_has_same_degree():
    pi = [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
    section = [[0, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    E = pushforward_product(6, so3, pi, section)
    assert nil_degree(full(E), 1, 4).degree == nil_degree(full(so3), 1, 4).degree == 2


def standard_polynomial(mats):
    out = np.zeros_like(mats[0])
    for perm in itertools.permutations(range(len(mats))):
        sign = np.linalg.det(np.eye(len(mats))[list(perm)])
        prod = np.eye(mats[0].shape[0], dtype=int)
        for i in perm:
            prod = prod @ mats[i]
        out = out + int(round(sign)) * prod
    return out


def antisym_numpy():
    mats = []
    for a, b in itertools.combinations(range(3), 2):
        m = np.zeros((3, 3), dtype=int)
        m[a, b], m[b, a] = 1, -1
        mats.append(m)
    return mats


def test_matrix_product_degree_matches_standard_polynomial_oracle():
    # ∧^t of a generic matrix-valued 1-form has coefficients s_t(X_1..X_t)
    # on the value basis; s_3 on so(3) matrices is nonzero, s_4 vanishes
    mats = antisym_numpy()
    assert np.any(standard_polynomial(mats) != 0)
    M3 = zoo.matrix_algebra(3)
    V = Submodule(M3, zoo.antisymmetric_generators(3))
    d = nil_degree(V, 1, 4)
    assert d.degree == 3
    assert nil_bound(V, 1, 2).refuted
    assert nil_bound(V, 1, 3).certified


def test_bracket_square_matches_commutator_oracle():
    # ∧² of f = sum theta_i X_i is sum_{i<j} theta_ij ([X_i, X_j] - [X_j, X_i])
    V = full(so3)
    f = generic_form(V, 1, 2, "x")
    sq = wedge_power(f, 2)
    mats = antisym_numpy()
    # specialize x[mu=(0,), j] = delta_{j,0}, x[(1,), j] = delta_{j,1}
    point = {v: int(v.index[1] == v.index[0]) for v in f.variables()}
    spec = sq.specialize(point, 10007)
    got = np.zeros((3, 3), dtype=int)
    for ((mu, k), c) in spec.terms.items():
        c = c if c < 5000 else c - 10007
        got = got + c * mats[k]
    expect = 2 * (mats[0] @ mats[1] - mats[1] @ mats[0])
    assert np.array_equal(got, expect)
