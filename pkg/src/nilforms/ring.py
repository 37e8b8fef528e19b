"""Exact coefficient arithmetic: rationals, sparse multivariate polynomials
and evaluation over a prime field.

Rationals are :class:`fractions.Fraction`.  Polynomials are immutable maps
from monomials to nonzero rationals; a monomial is a tuple of
``(VarId, exponent)`` pairs sorted by variable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple

# Mersenne prime 2**61 - 1.
DEFAULT_PRIME = (1 << 61) - 1


class VarId(NamedTuple):
    """Polynomial indeterminate, ordered by tag then index tuple."""

    tag: str
    index: tuple = ()

    def __str__(self):
        if not self.index:
            return self.tag
        return "%s[%s]" % (self.tag, ",".join(str(i) for i in self.index))


Monomial = tuple  # tuple[tuple[VarId, int], ...]


class UnassignedVariableError(KeyError):
    def __init__(self, var):
        super().__init__(var)
        self.var = var

    def __str__(self):
        return "no value assigned to variable %s" % (self.var,)


def as_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError("not an exact rational: %r" % (c,))


def rational_str(c: Fraction) -> str:
    return "%d/%d" % (c.numerator, c.denominator)


def _compact(c):
    if type(c) is int:
        return c
    if c.denominator == 1:
        return int(c.numerator)
    return c


@lru_cache(maxsize=1 << 18)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial):
    """Total degree first, then the sorted (variable, exponent) sequence,
    so x0*x1 precedes x0**2."""
    return (mono_degree(m), m)


def add_into(acc: dict, terms: Mapping, scale=1) -> None:
    """acc += scale * terms, in place, dropping cancelled entries."""
    for m, c in terms.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def mul_into(acc: dict, p: Mapping, q: Mapping, scale=1) -> None:
    """acc += scale * p * q, in place."""
    for m1, c1 in p.items():
        s1 = scale * c1
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            v = acc.get(m, 0) + s1 * c2
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients.

    Instances are immutable and hashable.  Two polynomials are equal iff
    their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                m = tuple(sorted(m))
                if any(e <= 0 for _, e in m):
                    raise ValueError("exponents must be positive: %r" % (m,))
                clean[m] = clean.get(m, 0) + c
        self._terms = {m: _compact(c) for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        # terms already canonical: sorted monomials, nonzero coefficients.
        # Integral values are held as int (cheaper arithmetic, equal hash).
        p = cls.__new__(cls)
        p._terms = {m: _compact(c) for m, c in terms.items()}
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        c = as_rational(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw({})

    # -- inspection --

    @property
    def terms(self) -> dict:
        return {m: Fraction(c) for m, c in self._terms.items()}

    def items(self):
        return ((m, Fraction(c)) for m, c in self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    def variables(self) -> list:
        vs = set()
        for m in self._terms:
            vs.update(v for v, _ in m)
        return sorted(vs)

    def coefficient(self, monomial) -> Fraction:
        return Fraction(self._terms.get(tuple(sorted(monomial)), 0))

    def sorted_terms(self) -> list:
        return sorted(self.items(), key=lambda t: grlex_key(t[0]))

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Rational, str)):
            return MultiPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        add_into(acc, other._terms)
        return MultiPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        add_into(acc, other._terms, -1)
        return MultiPoly._raw(acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = {}
        mul_into(acc, self._terms, other._terms)
        return MultiPoly._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "MultiPoly":
        c = as_rational(c)
        if not c:
            return MultiPoly.zero()
        return MultiPoly._raw({m: c * v for m, v in self._terms.items()})

    # -- comparison --

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == MultiPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation --

    def mod_eval(self, assignment: Mapping, prime: int = DEFAULT_PRIME) -> int:
        return mod_eval(self, assignment, prime)

    # -- display / serialization --

    def __repr__(self):
        if not self._terms:
            return "MultiPoly(0)"
        return "MultiPoly(%s)" % self

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(str(v) if e == 1 else "%s^%d" % (v, e) for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        out = []
        for m, c in self.sorted_terms():
            out.append({
                "coeff": rational_str(c),
                "vars": [[[v.tag, *v.index], e] for v, e in m],
            })
        return out

    @classmethod
    def from_json(cls, data: Iterable) -> "MultiPoly":
        terms = {}
        for t in data:
            m = tuple(sorted((VarId(v[0], tuple(v[1:])), int(e)) for v, e in t["vars"]))
            terms[m] = terms.get(m, 0) + Fraction(t["coeff"])
        return cls(terms)


def make_var(var: VarId | tuple) -> MultiPoly:
    if not isinstance(var, VarId):
        var = VarId(var[0], tuple(var[1:]))
    return MultiPoly._raw({((var, 1),): Fraction(1)})


def poly_arith(op: str, p: MultiPoly, q) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError("unknown operation %r" % (op,))


def rational_mod(c: Fraction, prime: int) -> int:
    c = as_rational(c)
    den = c.denominator % prime
    if den == 0:
        raise ZeroDivisionError("denominator %d vanishes mod %d" % (c.denominator, prime))
    return c.numerator * pow(den, -1, prime) % prime


def mod_eval(p: MultiPoly, assignment: Mapping, prime: int = DEFAULT_PRIME) -> int:
    """Value of ``p`` at ``assignment`` in the field of integers mod ``prime``."""
    if p.is_zero():
        return 0
    if prime <= p.degree():
        raise ValueError("prime %d does not exceed total degree %d" % (prime, p.degree()))
    total = 0
    for m, c in p.items():
        v = rational_mod(c, prime)
        for var, e in m:
            try:
                x = assignment[var]
            except KeyError:
                raise UnassignedVariableError(var) from None
            v = v * pow(x % prime, e, prime) % prime
        total += v
    return total % prime
