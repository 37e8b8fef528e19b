from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nilforms.ring import (DEFAULT_PRIME, MultiPoly, UnassignedVariableError, VarId, make_var, mod_eval,
                           poly_arith, rational_str)

X, Y, Z = VarId("x", (0,)), VarId("x", (1,)), VarId("y", ())
x, y, z = make_var(X), make_var(Y), make_var(Z)
ONE = MultiPoly.constant(1)


def test_make_var_examples():
    v = make_var(("x", 0, 0))
    assert v.terms == {((VarId("x", (0, 0)), 1),): Fraction(1)}
    assert v + v == v.scale(2)
    d = v - v
    assert d.is_zero() and d.terms == {}


def test_poly_arith_examples():
    assert poly_arith("mul", x + y, x - y) == x * x - y * y
    assert poly_arith("scale", x + y, 0).is_zero()
    assert (x + 1) ** 3 == x ** 3 + (x ** 2).scale(3) + x.scale(3) + ONE
    with pytest.raises(ValueError):
        poly_arith("div", x, y)


def test_mod_eval_examples():
    assert mod_eval(x * x + 1, {X: 0}) == 1
    assert mod_eval(MultiPoly.zero(), {}) == 0
    a, b = 123456789, 987654321
    assert mod_eval(x * y, {X: a, Y: b}) == a * b % DEFAULT_PRIME
    assert mod_eval(x.scale(Fraction(1, 2)), {X: 2}, 7) == 1


def test_mod_eval_errors():
    with pytest.raises(UnassignedVariableError) as info:
        mod_eval(x * y, {X: 1})
    assert info.value.var == Y
    assert "x[1]" in str(info.value)
    with pytest.raises(ValueError):
        mod_eval(x ** 3, {X: 1}, 3)


def test_varid_order_is_tag_then_index():
    assert VarId("a", (5,)) < VarId("b", (0,)) < VarId("b", (0, 1)) < VarId("b", (1,))


def test_canonical_form_drops_zero_terms():
    p = MultiPoly({((X, 1),): 0, ((Y, 1),): Fraction(3, 6)})
    assert p.terms == {((Y, 1),): Fraction(1, 2)}
    assert p == y.scale(Fraction(1, 2))
    with pytest.raises(ValueError):
        MultiPoly({((X, 0),): 1})


def test_grlex_serialization():
    p = x * y + z + x ** 2 + 5
    data = p.to_json()
    assert [t["coeff"] for t in data] == ["5/1", "1/1", "1/1", "1/1"]
    # degree first, then variable order
    assert data[1]["vars"] == [[["y"], 1]]
    assert data[2]["vars"] == [[["x", 0], 1], [["x", 1], 1]]
    assert data[3]["vars"] == [[["x", 0], 2]]
    assert MultiPoly.from_json(data) == p
    assert rational_str(Fraction(-3, 6)) == "-1/2"


# random polynomials in three variables with small rational coefficients
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monos = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(monos, coeffs, max_size=5)


def build(d):
    terms = {}
    for (a, b, c), coeff in d.items():
        m = tuple((v, e) for v, e in ((X, a), (Y, b), (Z, c)) if e)
        terms[m] = terms.get(m, 0) + coeff
    return MultiPoly(terms)


sx, sy, sz = sympy.symbols("x0 x1 y")


def to_sympy(d):
    return sum((sympy.Rational(c.numerator, c.denominator) * sx ** a * sy ** b * sz ** e
                for (a, b, e), c in d.items()), sympy.Integer(0))


def from_sympy(expr):
    poly = sympy.Poly(sympy.expand(expr), sx, sy, sz)
    return build({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms() if c != 0})


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    p, q, r = build(a), build(b), build(c)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.zero()


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_product_matches_sympy_oracle(a, b):
    assert build(a) * build(b) == from_sympy(to_sympy(a) * to_sympy(b))
    assert build(a) - build(b) == from_sympy(to_sympy(a) - to_sympy(b))


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.integers(0, DEFAULT_PRIME - 1), st.integers(0, DEFAULT_PRIME - 1),
       st.integers(0, DEFAULT_PRIME - 1))
def test_mod_eval_is_a_ring_homomorphism(a, b, u, v, w):
    p, q = build(a), build(b)
    pt = {X: u, Y: v, Z: w}
    P = DEFAULT_PRIME
    assert mod_eval(p * q, pt) == mod_eval(p, pt) * mod_eval(q, pt) % P
    assert mod_eval(p + q, pt) == (mod_eval(p, pt) + mod_eval(q, pt)) % P


@settings(max_examples=40, deadline=None)
@given(polys)
def test_json_round_trip(a):
    p = build(a)
    assert MultiPoly.from_json(p.to_json()) == p
    assert hash(MultiPoly.from_json(p.to_json())) == hash(p)
