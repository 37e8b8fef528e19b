"""Algebra-valued elements of the free Grassmann algebra on N generators.

A term is ``poly * (theta_mu ⊗ e_k)`` where ``mu`` is a strictly increasing
tuple of generator indices and ``e_k`` a basis vector of the algebra.  The
wedge product multiplies Grassmann monomials with the Koszul sign of the
merge and basis vectors with the algebra's structure constants.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import Algebra, Grade, ModuleSplit, Submodule
from .ring import (DEFAULT_PRIME, MultiPoly, VarId, add_into, mod_eval, mul_into,
                   rational_mod)


class FormError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    """Raised when an expansion would exceed a configured size cap."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass
class Caps:
    max_generators: int = 16
    max_terms: int = 5_000_000


DEFAULT_CAPS = Caps()


# ---------------------------------------------------------------------------
# Grassmann monomials


@lru_cache(maxsize=1 << 16)
def merge_sign(mu: tuple, nu: tuple):
    """(sign, merged) for theta_mu theta_nu, or None when they share an index."""
    if not mu:
        return 1, nu
    if not nu:
        return 1, mu
    if set(mu) & set(nu):
        return None
    # count inversions: pairs (a in mu, b in nu) with a > b
    inv = 0
    j = 0
    for a in mu:
        while j < len(nu) and nu[j] < a:
            j += 1
        inv += j
    return (-1 if inv & 1 else 1), tuple(sorted(mu + nu))


# ---------------------------------------------------------------------------
# bracketings


@dataclass(frozen=True)
class ParenTree:
    """Binary bracketing shape; a leaf has no children."""

    left: "ParenTree | None" = None
    right: "ParenTree | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return self.left.leaves + self.right.leaves

    def __str__(self):
        if self.is_leaf:
            return "x"
        return "(%s%s)" % (self.left, self.right)

    @classmethod
    def leaf(cls) -> "ParenTree":
        return LEAF

    @classmethod
    def right_nested(cls, t: int) -> "ParenTree":
        if t < 1:
            raise FormError("a bracketing needs at least one leaf")
        tree = LEAF
        for _ in range(t - 1):
            tree = ParenTree(LEAF, tree)
        return tree

    @classmethod
    def left_nested(cls, t: int) -> "ParenTree":
        if t < 1:
            raise FormError("a bracketing needs at least one leaf")
        tree = LEAF
        for _ in range(t - 1):
            tree = ParenTree(tree, LEAF)
        return tree

    @classmethod
    def all_trees(cls, t: int) -> list:
        return list(_all_trees(t))

    @classmethod
    def parse(cls, s: str) -> "ParenTree":
        pos = 0

        def node():
            nonlocal pos
            if s[pos] == "x":
                pos += 1
                return LEAF
            if s[pos] != "(":
                raise FormError("bad bracketing %r" % s)
            pos += 1
            l = node()
            r = node()
            if s[pos] != ")":
                raise FormError("bad bracketing %r" % s)
            pos += 1
            return ParenTree(l, r)

        s = s.replace(" ", "")
        try:
            tree = node()
        except IndexError:
            raise FormError("bad bracketing %r" % s) from None
        if pos != len(s):
            raise FormError("bad bracketing %r" % s)
        return tree


LEAF = ParenTree()


@lru_cache(maxsize=None)
def _all_trees(t: int) -> tuple:
    if t == 1:
        return (LEAF,)
    out = []
    # right-nested first, then by size of the left subtree
    for left_size in range(1, t):
        for l in _all_trees(left_size):
            for r in _all_trees(t - left_size):
                out.append(ParenTree(l, r))
    return tuple(out)


def paren_trees(t: int, associative: bool, policy: str = "auto", max_all: int = 5):
    """(trees, annotation) for a t-fold product under ``policy``.

    ``auto``: right-nested for associative algebras, every bracketing for
    t <= max_all otherwise, else right-nested as the quotient representative.
    """
    if policy == "right":
        return [ParenTree.right_nested(t)], "right-nested"
    if policy == "all":
        if t > max_all:
            raise FormError("enumerating all bracketings of %d factors exceeds the cap of %d; "
                            "use the right-nested policy" % (t, max_all))
        return ParenTree.all_trees(t), "all"
    if policy != "auto":
        raise FormError("unknown bracketing policy %r" % policy)
    if associative or t <= 2:
        return [ParenTree.right_nested(t)], "right-nested (associative)" if associative else "all"
    if t <= max_all:
        return ParenTree.all_trees(t), "all"
    return [ParenTree.right_nested(t)], "quotient-representative only"


def evaluate_tree(tree: ParenTree, factors: Sequence, memo: dict | None = None,
                  caps: Caps = DEFAULT_CAPS):
    """Product of ``factors`` bracketed by ``tree``.  With ``memo`` the
    factors are assumed identical, so equal subtrees are computed once."""
    if tree.leaves != len(factors):
        raise FormError("bracketing has %d leaves but %d factors were given"
                        % (tree.leaves, len(factors)))

    def go(node, start):
        if node.is_leaf:
            return factors[start]
        if memo is not None and node in memo:
            return memo[node]
        left = go(node.left, start)
        if left.is_zero():
            out = left.zero_like()
        else:
            right = go(node.right, start + node.left.leaves)
            out = left.wedge(right, caps)
        if memo is not None:
            memo[node] = out
        return out

    return go(tree, 0)


# ---------------------------------------------------------------------------
# exact forms


def _label(A: Algebra, k: int) -> str:
    return A.labels[k]


class AForm:
    """Algebra-valued Grassmann element with polynomial coefficients.

    ``terms`` maps ``(mu, k)`` to a nonzero :class:`MultiPoly`.
    """

    __slots__ = ("algebra", "n_gens", "_terms", "parity_sign", "graded")

    def __init__(self, algebra: Algebra, n_gens: int, terms=None, *, parity_sign: bool = False,
                 graded: bool = False):
        self.algebra = algebra
        self.n_gens = n_gens
        self.parity_sign = parity_sign
        self.graded = graded
        clean = {}
        for (mu, k), p in (terms or {}).items():
            mu = tuple(mu)
            if list(mu) != sorted(set(mu)) or (mu and not 0 <= mu[0] <= mu[-1] < n_gens):
                raise FormError("invalid Grassmann monomial %r" % (mu,))
            if not 0 <= k < algebra.dim:
                raise FormError("basis index %d out of range" % k)
            if not isinstance(p, MultiPoly):
                p = MultiPoly.constant(p)
            if p:
                clean[(mu, k)] = p
        self._terms = clean

    @classmethod
    def _raw(cls, algebra, n_gens, terms, parity_sign=False, graded=False) -> "AForm":
        f = cls.__new__(cls)
        f.algebra = algebra
        f.n_gens = n_gens
        f._terms = terms
        f.parity_sign = parity_sign
        f.graded = graded
        return f

    @classmethod
    def zero(cls, algebra: Algebra, n_gens: int) -> "AForm":
        return cls._raw(algebra, n_gens, {})

    def zero_like(self) -> "AForm":
        return AForm._raw(self.algebra, self.n_gens, {}, self.parity_sign, self.graded)

    # -- inspection --

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set:
        return {len(mu) for mu, _ in self._terms}

    def max_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def min_degree(self) -> int:
        return min(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def variables(self) -> list:
        vs = set()
        for p in self._terms.values():
            vs.update(p.variables())
        return sorted(vs)

    def poly_degree(self) -> int:
        return max((p.degree() for p in self._terms.values()), default=-1)

    def n_poly_terms(self) -> int:
        return sum(len(p) for p in self._terms.values())

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: t[0])

    def first_term(self):
        if not self._terms:
            return None
        return self.sorted_terms()[0]

    def component(self, grade: Grade) -> "AForm":
        A = self.algebra
        if not A.graded:
            raise FormError("%s is not graded" % A.name)
        return AForm._raw(A, self.n_gens, {key: p for key, p in self._terms.items()
                                           if A.grades[key[1]] == grade}, self.parity_sign, True)

    def components(self) -> dict:
        A = self.algebra
        if not A.graded:
            raise FormError("%s is not graded" % A.name)
        grades = sorted({A.grades[k] for _, k in self._terms})
        return {g: self.component(g) for g in grades}

    def values_in(self, V: Submodule) -> bool:
        """True iff every coefficient slice of the form lies in V."""
        if V.parent.dim != self.algebra.dim:
            return False
        slices: dict = {}
        for (mu, k), p in self._terms.items():
            for m, c in p.items():
                vec = slices.setdefault((mu, m), [Fraction(0)] * self.algebra.dim)
                vec[k] += c
        return all(V.contains(v) for v in slices.values())

    # -- arithmetic --

    def _check(self, other: "AForm"):
        if not isinstance(other, AForm):
            raise FormError("expected an AForm, got %r" % type(other).__name__)
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise FormError("forms live over different algebras (%s, %s)"
                            % (self.algebra.name, other.algebra.name))
        if other.n_gens != self.n_gens:
            raise FormError("forms use different generator counts (%d, %d)"
                            % (self.n_gens, other.n_gens))

    def _combine(self, other, sign):
        self._check(other)
        acc = {key: dict(p._terms) for key, p in self._terms.items()}
        for key, p in other._terms.items():
            add_into(acc.setdefault(key, {}), p._terms, sign)
        return self._wrap(acc)

    def _wrap(self, acc: dict) -> "AForm":
        return AForm._raw(self.algebra, self.n_gens,
                          {key: MultiPoly._raw(t) for key, t in acc.items() if t},
                          self.parity_sign, self.graded)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "AForm":
        c = Fraction(c)
        if not c:
            return self.zero_like()
        return AForm._raw(self.algebra, self.n_gens, {key: p.scale(c) for key, p in self._terms.items()},
                          self.parity_sign, self.graded)

    def wedge(self, other: "AForm", caps: Caps = DEFAULT_CAPS) -> "AForm":
        """Bilinear extension of (mu⊗e_i) ∧ (nu⊗e_j) = ±(mu nu)⊗(e_i*e_j)."""
        self._check(other)
        A = self.algebra
        parity = self.parity_sign and A.graded and A.grade_rank[1] > 0
        acc: dict = {}
        for (mu, i), p in self._terms.items():
            pt = p._terms
            for (nu, j), q in other._terms.items():
                prod = A.table.get((i, j))
                if not prod:
                    continue
                ms = merge_sign(mu, nu)
                if ms is None:
                    continue
                sign, mono = ms
                if parity and A.grades[i].odd() and len(nu) & 1:
                    sign = -sign
                pq: dict = {}
                mul_into(pq, pt, q._terms, sign)
                for k, c in prod:
                    add_into(acc.setdefault((mono, k), {}), pq, c)
                if len(acc) > caps.max_terms:
                    raise ResourceCapError("wedge product exceeded %d terms" % caps.max_terms,
                                           len(acc))
        out = self._wrap(acc)
        if out.n_poly_terms() > caps.max_terms:
            raise ResourceCapError("wedge product has %d polynomial terms (cap %d)"
                                   % (out.n_poly_terms(), caps.max_terms), out.n_poly_terms())
        return out

    def __xor__(self, other):
        return self.wedge(other)

    def __eq__(self, other):
        if not isinstance(other, AForm):
            return NotImplemented
        return (self.algebra == other.algebra and self.n_gens == other.n_gens
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.n_gens, frozenset(self._terms.items())))

    def __repr__(self):
        return "AForm(%s, N=%d, %d terms)" % (self.algebra.name, self.n_gens, len(self._terms))

    # -- evaluation --

    def specialize(self, assignment, prime: int = DEFAULT_PRIME) -> "ModForm":
        terms = {}
        for key, p in self._terms.items():
            v = mod_eval(p, assignment, prime)
            if v:
                terms[key] = v
        return ModForm(self.algebra, self.n_gens, prime, terms, self.parity_sign)

    # -- serialization --

    def term_json(self, key, p) -> dict:
        mu, k = key
        return {"monomial": list(mu), "basis": self.algebra.labels[k], "coeff": p.to_json()}

    def to_json(self) -> list:
        return [self.term_json(key, p) for key, p in self.sorted_terms()]


def wedge(f: AForm, g: AForm) -> AForm:
    return f.wedge(g)


def wedge_power(f, t: int, paren: ParenTree | None = None):
    """t-fold product of f with itself, bracketed by ``paren`` (default
    right-nested)."""
    if t < 1:
        raise FormError("power must be positive")
    paren = paren or ParenTree.right_nested(t)
    if paren.leaves != t:
        raise FormError("bracketing has %d leaves, power is %d" % (paren.leaves, t))
    return evaluate_tree(paren, [f] * t, memo={})


def is_zero(f) -> bool:
    return f.is_zero()


# ---------------------------------------------------------------------------
# generic forms


def _check_budget(n_gens, k, caps: Caps):
    if n_gens < k:
        raise FormError("need at least %d generators for a %d-form, got %d" % (k, k, n_gens))
    if n_gens > caps.max_generators:
        raise ResourceCapError("%d generators exceeds the cap of %d" % (n_gens, caps.max_generators),
                               n_gens)


def _generic(A: Algebra, basis: Sequence, k: int, n_gens: int, tag: str) -> dict:
    acc: dict = {}
    for mu in itertools.combinations(range(n_gens), k):
        for j, v in enumerate(basis):
            var = ((VarId(tag, (*mu, j)), 1),)
            for idx, c in enumerate(v):
                if c:
                    acc.setdefault((mu, idx), {})[var] = c
    return acc


def generic_form(V: Submodule, k: int, n_gens: int, tag: str, caps: Caps = DEFAULT_CAPS) -> AForm:
    """Sum over degree-k monomials mu and basis vectors v_j of V of a fresh
    variable x[tag, mu, j] times mu ⊗ v_j."""
    _check_budget(n_gens, k, caps)
    A = V.parent
    acc = _generic(A, V.basis, k, n_gens, tag)
    return AForm._raw(A, n_gens, {key: MultiPoly._raw(t) for key, t in acc.items()})


def graded_generic_form(V, k: int, n_gens: int, tag: str, part: int = 0,
                        caps: Caps = DEFAULT_CAPS) -> AForm:
    """Generic k-form over a graded submodule, built from homogeneous basis
    vectors so that each graded component is an independent generic form."""
    if isinstance(V, ModuleSplit):
        V = V.part0 if part == 0 else V.part1
    A = V.parent
    if not A.graded:
        raise FormError("%s is not graded" % A.name)
    _check_budget(n_gens, k, caps)
    basis = [v for piece in V.graded_components().values() for v in piece.basis]
    acc = _generic(A, basis, k, n_gens, tag)
    return AForm._raw(A, n_gens, {key: MultiPoly._raw(t) for key, t in acc.items()}, graded=True)


# ---------------------------------------------------------------------------
# prime-field forms


@lru_cache(maxsize=64)
def _table_mod(A: Algebra, prime: int) -> dict:
    return {key: tuple((k, rational_mod(c, prime)) for k, c in terms) for key, terms in A.table.items()}


class ModForm:
    """Form with coefficients in the integers mod ``prime``; the image of an
    AForm under a point evaluation."""

    __slots__ = ("algebra", "n_gens", "prime", "_terms", "parity_sign")

    def __init__(self, algebra: Algebra, n_gens: int, prime: int, terms=None, parity_sign=False):
        self.algebra = algebra
        self.n_gens = n_gens
        self.prime = prime
        self.parity_sign = parity_sign
        self._terms = {key: v % prime for key, v in (terms or {}).items() if v % prime}

    def zero_like(self) -> "ModForm":
        return ModForm(self.algebra, self.n_gens, self.prime, {}, self.parity_sign)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other):
        if other.prime != self.prime or other.n_gens != self.n_gens:
            raise FormError("incompatible prime-field forms")

    def __add__(self, other):
        self._check(other)
        acc = dict(self._terms)
        for key, v in other._terms.items():
            acc[key] = (acc.get(key, 0) + v) % self.prime
        return ModForm(self.algebra, self.n_gens, self.prime, acc, self.parity_sign)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "ModForm":
        c = rational_mod(Fraction(c), self.prime)
        return ModForm(self.algebra, self.n_gens, self.prime,
                       {key: v * c for key, v in self._terms.items()}, self.parity_sign)

    def wedge(self, other: "ModForm", caps=None) -> "ModForm":
        # caps only bound exact expansion; prime-field forms stay small
        self._check(other)
        A = self.algebra
        P = self.prime
        table = _table_mod(A, P)
        parity = self.parity_sign and A.graded and A.grade_rank[1] > 0
        acc: dict = {}
        for (mu, i), a in self._terms.items():
            for (nu, j), b in other._terms.items():
                prod = table.get((i, j))
                if not prod:
                    continue
                ms = merge_sign(mu, nu)
                if ms is None:
                    continue
                sign, mono = ms
                if parity and A.grades[i].odd() and len(nu) & 1:
                    sign = -sign
                ab = sign * a * b
                for k, c in prod:
                    key = (mono, k)
                    acc[key] = (acc.get(key, 0) + ab * c) % P
        return ModForm(A, self.n_gens, P, acc, self.parity_sign)


# ---------------------------------------------------------------------------
# randomized identity testing


@dataclass
class ProbeResult:
    refuted: bool
    prime: int
    trials: int
    seed: int
    failure_bound: dict | None = None
    witness: dict | None = None
    assignment: dict | None = field(default=None, repr=False)

    @property
    def verdict(self) -> str:
        return "refuted" if self.refuted else "consistent_with_zero"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "prime": self.prime, "trials": self.trials, "seed": self.seed}
        if self.refuted:
            out["witness"] = self.witness
        else:
            out["failure_bound"] = self.failure_bound
        return out


def random_assignment(variables: Sequence, prime: int, rng: random.Random) -> dict:
    return {v: rng.randrange(prime) for v in variables}


def sz_bound(degree: int, prime: int, trials: int) -> dict:
    """Schwartz-Zippel bound (degree / prime) ** trials on a false 'zero'.

    The bound underflows a float for realistic trial counts, so it is
    reported as the per-trial ratio plus its base-10 logarithm.
    """
    if degree <= 0:
        return {"per_trial": "0", "trials": trials, "log10": None}
    return {"per_trial": "%d/%d" % (degree, prime), "trials": trials,
            "log10": round(trials * (math.log10(degree) - math.log10(prime)), 3)}


def probe(f: AForm, prime: int = DEFAULT_PRIME, trials: int = 20, seed: int = 0) -> ProbeResult:
    """Evaluate every coefficient at independent uniform points mod prime."""
    variables = f.variables()
    rng = random.Random(seed)
    for t in range(trials):
        assignment = random_assignment(variables, prime, rng)
        for key, p in f.sorted_terms():
            v = mod_eval(p, assignment, prime)
            if v:
                mu, k = key
                return ProbeResult(True, prime, trials, seed, None,
                                   {"trial": t, "monomial": list(mu), "basis": f.algebra.labels[k],
                                    "value": v}, assignment)
    return ProbeResult(False, prime, trials, seed, sz_bound(f.poly_degree(), prime, trials))
