"""Exact linear algebra over the rationals (thin layer over sympy's
DomainMatrix on QQ)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = tuple  # tuple[Fraction, ...]


def _q(c):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def _f(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def as_vector(v) -> Vector:
    return tuple(Fraction(c) for c in v)


def _dm(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    return DomainMatrix([[_q(c) for c in r] for r in rows], (len(rows), ncols), QQ)


def rank(vectors: Sequence[Sequence], dim: int | None = None) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    dim = len(vectors[0]) if dim is None else dim
    if dim == 0:
        return 0
    return _dm(vectors, dim).rank()


def in_span(v, vectors: Sequence[Sequence]) -> bool:
    if not any(v):
        return True
    vectors = list(vectors)
    return rank(vectors + [v], len(v)) == rank(vectors, len(v))


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace()
    return [tuple(_f(c) for c in row) for row in ns.to_list()]


def intersect(u: Sequence[Sequence], w: Sequence[Sequence], dim: int) -> list:
    """Basis of span(u) ∩ span(w); u and w are independent families."""
    u, w = list(u), list(w)
    if not u or not w:
        return []
    # solve sum a_i u_i - sum b_j w_j = 0
    rows = [[u[i][r] for i in range(len(u))] + [-w[j][r] for j in range(len(w))] for r in range(dim)]
    out = []
    for sol in nullspace(rows, len(u) + len(w)):
        vec = [Fraction(0)] * dim
        for i, a in enumerate(sol[: len(u)]):
            if a:
                for r in range(dim):
                    vec[r] += a * u[i][r]
        out.append(tuple(vec))
    return out


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in cols) for row in a)


def identity(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


class Coordinatizer:
    """Expresses vectors in a fixed linearly independent family.

    >>> c = Coordinatizer([(1, 1, 0), (0, 1, 1)])
    >>> c.coords((1, 2, 1))
    (Fraction(1, 1), Fraction(1, 1))
    """

    def __init__(self, vectors: Sequence[Sequence]):
        self.vectors = [as_vector(v) for v in vectors]
        self.size = len(self.vectors)
        self.dim = len(self.vectors[0]) if self.vectors else 0
        if self.size == 0:
            self._rows = []
            self._inv = None
            return
        # columns are the family; pick independent rows
        mt = _dm(self.vectors, self.dim)  # size x dim (rows = vectors)
        _, pivots = mt.rref()
        if len(pivots) != self.size:
            raise ValueError("family is linearly dependent")
        self._rows = list(pivots)
        sub = DomainMatrix(
            [[_q(self.vectors[j][r]) for j in range(self.size)] for r in self._rows],
            (self.size, self.size), QQ)
        self._inv = sub.inv()

    def coords(self, v, strict: bool = True):
        """Coordinates of ``v``, or None if ``v`` is outside the span."""
        v = as_vector(v)
        if self.size == 0:
            if any(v):
                if strict:
                    return None
            return ()
        rhs = DomainMatrix([[_q(v[r])] for r in self._rows], (self.size, 1), QQ)
        sol = tuple(_f(x) for x in (self._inv * rhs).to_list_flat())
        if strict:
            back = [Fraction(0)] * self.dim
            for a, vec in zip(sol, self.vectors):
                if a:
                    for r in range(self.dim):
                        back[r] += a * vec[r]
            if tuple(back) != v:
                return None
        return sol
