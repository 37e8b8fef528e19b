import itertools

import numpy as np
import pytest

from nilforms import zoo
from nilforms.algebra import AlgebraError, Submodule


def flag_set(A):
    f = A.flags
    return {name for name in ("associative", "commutative", "alternative") if getattr(f, name)}


def test_cd_tower_flag_sequence():
    expect = [
        {"associative", "commutative", "alternative"},
        {"associative", "commutative", "alternative"},
        {"associative", "alternative"},
        {"alternative"},
        set(),
    ]
    for l, want in enumerate(expect):
        A = zoo.cd_tower(l)
        assert A.dim == 2 ** l
        assert flag_set(A) == want, l


def quaternion_numpy(v):
    # left-multiplication matrix of a + bi + cj + dk in the basis 1, i, j, k
    a, b, c, d = v
    return np.array([[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]])


def test_quaternions_match_hamilton_product():
    H = zoo.quaternions()
    rng = np.random.default_rng(0)
    for _ in range(20):
        x, y = rng.integers(-4, 5, 4), rng.integers(-4, 5, 4)
        got = [int(c) for c in H.mul(tuple(int(a) for a in x), tuple(int(b) for b in y))]
        assert got == list(quaternion_numpy(x) @ y)


def test_cd_involution_is_conjugation():
    O = zoo.octonions()
    for i in range(8):
        x = O.basis_vector(i)
        bar = O.apply_involution(x)
        assert bar == (x if i == 0 else tuple(-c for c in x))
        # x * x̄ is real and positive
        n = O.mul(x, bar)
        assert n[0] == 1 and not any(n[1:])


def test_cd_level_cap():
    with pytest.raises(AlgebraError, match="cap"):
        zoo.cd_tower(6)


def test_sedenion_zero_divisor_exact():
    S = zoo.sedenions()
    x, y = zoo.find_zero_divisor(S)
    assert any(x) and any(y)
    assert not any(S.mul(x, y))
    assert zoo.find_zero_divisor(zoo.quaternions()) is None
    assert zoo.find_zero_divisor(zoo.octonions()) is None


@pytest.mark.parametrize("name,params,dim", [
    ("so", {"n": 3}, 3), ("so", {"n": 4}, 6), ("so", {"p": 2, "q": 1}, 3), ("u", {"n": 2}, 4),
    ("su", {"n": 2}, 3), ("su", {"n": 3}, 8), ("sp", {"n": 1}, 3), ("u", {"p": 1, "q": 1}, 4),
    ("gl", {"n": 2}, 4), ("glc", {"n": 1}, 2), ("heisenberg", {"n": 1}, 3), ("iso", {"n": 3}, 6),
])
def test_classical_lie_algebras(name, params, dim):
    A = zoo.classical(name, **params)
    assert A.dim == dim
    assert A.flags.jacobi and A.flags.anticommutative


def test_su2_and_sp1_and_so3_are_isomorphic_dimensions():
    # all three are 3-dimensional simple: derived algebra is everything
    for A in (zoo.classical("su", n=2), zoo.classical("sp", n=1), zoo.classical("so", n=3)):
        prods = [A.mul(A.basis_vector(i), A.basis_vector(j)) for i, j in itertools.product(range(3), repeat=2)]
        from nilforms.linalg import rank
        assert rank(prods, 3) == 3


def test_unitary_cd_is_anti_hermitian_u1():
    # u(1; C) is the imaginary line
    A = zoo.unitary_cd(zoo.UnitarySpec(1, (1, 0), zoo.complexes()))
    assert A.dim == 1 and A.is_abelian()
    B = zoo.unitary_cd(zoo.UnitarySpec(1, (1, 0), zoo.quaternions()))
    assert B.dim == 3 and B.flags.jacobi


def test_unitary_matrix_mode_is_not_closed():
    with pytest.raises(AlgebraError) as info:
        zoo.unitary_cd(zoo.UnitarySpec(1, (1, 0), zoo.quaternions(), mode="matrix"))
    assert getattr(info.value, "witness", None) is not None


def test_block_inclusion_levels():
    for l in (1, 2):
        f = zoo.cd_block_inclusion(1, (1, 0), l)
        assert f.verified and f.is_injective()
    f3 = zoo.cd_block_inclusion(1, (1, 0), 3)
    assert f3.status == "refuted"
    r = zoo.cd_realification(1, (1, 0), 2)
    assert r.verified and r.is_injective()
    assert r.target.dim == 6  # u(4; R) = so(4)
