"""Builtin algebras: classical matrix Lie algebras, translation and
semidirect algebras, superalgebras, and the Cayley-Dickson tower with its
unitary matrix algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import (Algebra, AlgebraError, AlgebraMorphism, Grade, commutator_algebra,
                      make_algebra, morphism_check, semidirect)
from .ring import as_rational

ZERO = Fraction(0)
ONE = Fraction(1)

MAX_CD_LEVEL = 5


# ---------------------------------------------------------------------------
# real matrices as flat tuples


def _matrix(n, entries) -> tuple:
    rows = [[ZERO] * n for _ in range(n)]
    for (r, c), v in entries.items():
        rows[r][c] += as_rational(v)
    return tuple(tuple(r) for r in rows)


def _complex_matrix(n, entries) -> tuple:
    """Realify a complex n x n matrix given as {(r, c): (re, im)}."""
    real = {}
    for (r, c), (re, im) in entries.items():
        # a + ib  ->  [[a, -b], [b, a]]
        for (dr, dc), v in {(0, 0): re, (0, 1): -im, (1, 0): im, (1, 1): re}.items():
            if v:
                real[(2 * r + dr, 2 * c + dc)] = real.get((2 * r + dr, 2 * c + dc), 0) + v
    return _matrix(2 * n, real)


def _flat(m) -> tuple:
    return tuple(x for row in m for x in row)


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matrix_algebra_from(mats: Sequence, labels: Sequence[str], name: str,
                        mode: str = "bracket") -> Algebra:
    """Structure constants of the span of real matrices ``mats`` under the
    commutator (``mode="bracket"``) or the matrix product."""
    coord = linalg.Coordinatizer([_flat(m) for m in mats])
    table = {}
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            p = linalg.mat_mul(a, b)
            if mode == "bracket":
                p = _mat_sub(p, linalg.mat_mul(b, a))
            elif mode != "matrix":
                raise ValueError("mode must be 'bracket' or 'matrix'")
            c = coord.coords(_flat(p))
            if c is None:
                raise AlgebraError("%s is not closed under the %s product: (%s, %s)"
                                   % (name, mode, labels[i], labels[j]))
            terms = tuple((k, v) for k, v in enumerate(c) if v)
            if terms:
                table[(i, j)] = terms
    return Algebra(labels, table, None, None, name)


def matrix_algebra(n: int) -> Algebra:
    """Associative algebra of real n x n matrices, basis E_ab."""
    labels = ["E%d%d" % (a, b) for a in range(n) for b in range(n)]
    table = {}
    for a, b, d in itertools.product(range(n), repeat=3):
        table[(a * n + b, b * n + d)] = ((a * n + d, ONE),)
    return Algebra(labels, table, None, None, "M%d(R)" % n)


def antisymmetric_generators(n: int) -> list:
    """Coordinates (in matrix_algebra(n)) of E_ab - E_ba, a < b."""
    out = []
    for a, b in itertools.combinations(range(n), 2):
        v = [ZERO] * (n * n)
        v[a * n + b] = ONE
        v[b * n + a] = -ONE
        out.append(tuple(v))
    return out


def _eta(p: int, q: int) -> list:
    return [1] * p + [-1] * q


def _so_basis(p: int, q: int):
    n = p + q
    eta = _eta(p, q)
    mats, labels = [], []
    for a, b in itertools.combinations(range(n), 2):
        # eta (E_ab - E_ba)
        mats.append(_matrix(n, {(a, b): eta[a], (b, a): -eta[b]}))
        labels.append("L%d%d" % (a, b))
    return mats, labels


def _u_basis(n: int, special: bool):
    mats, labels = [], []
    for a, b in itertools.combinations(range(n), 2):
        mats.append(_complex_matrix(n, {(a, b): (1, 0), (b, a): (-1, 0)}))
        labels.append("R%d%d" % (a, b))
        mats.append(_complex_matrix(n, {(a, b): (0, 1), (b, a): (0, 1)}))
        labels.append("I%d%d" % (a, b))
    if special:
        for a in range(n - 1):
            mats.append(_complex_matrix(n, {(a, a): (0, 1), (a + 1, a + 1): (0, -1)}))
            labels.append("H%d" % a)
    else:
        for a in range(n):
            mats.append(_complex_matrix(n, {(a, a): (0, 1)}))
            labels.append("D%d" % a)
    return mats, labels


def _require(cond, msg):
    if not cond:
        raise AlgebraError(msg)


def classical(name: str, **params) -> Algebra:
    """Named Lie algebra (bracket product) with rational structure constants.

    Names: so (n, or p and q), u, su, sp, gl, glc (realified gl(n, C)),
    heisenberg, abelian (k), iso (p, q), super_translation (k, l).
    """
    key = name.lower().replace("(", "").replace(")", "").replace(",", "").strip()
    n = params.get("n")
    if key == "so":
        if "p" in params:
            p, q = int(params["p"]), int(params.get("q", 0))
        else:
            _require(n is not None, "so needs n or (p, q)")
            p, q = int(n), 0
        _require(p >= 0 and q >= 0 and p + q >= 2, "so(p,q) needs p + q >= 2")
        mats, labels = _so_basis(p, q)
        title = "so(%d)" % p if q == 0 else "so(%d,%d)" % (p, q)
        return matrix_algebra_from(mats, labels, title)
    if key in ("u", "su"):
        if "p" in params:
            p, q = int(params["p"]), int(params.get("q", 0))
            _require(key == "u", "su(p,q) is not builtin; use unitary_cd")
            return unitary_cd(UnitarySpec(p + q, (p, q), complexes()), name="u(%d,%d)" % (p, q))
        _require(n is not None and int(n) >= 1, "%s needs n >= 1" % key)
        n = int(n)
        _require(key == "u" or n >= 2, "su needs n >= 2")
        mats, labels = _u_basis(n, key == "su")
        return matrix_algebra_from(mats, labels, "%s(%d)" % (key, n))
    if key == "sp":
        _require(n is not None and int(n) >= 1, "sp needs n >= 1")
        n = int(n)
        return unitary_cd(UnitarySpec(n, (n, 0), quaternions()), name="sp(%d)" % n)
    if key == "gl":
        _require(n is not None and int(n) >= 1, "gl needs n >= 1")
        return commutator_algebra(matrix_algebra(int(n)), name="gl(%d)" % int(n))
    if key == "glc":
        _require(n is not None and int(n) >= 1, "glc needs n >= 1")
        n = int(n)
        mats, labels = [], []
        for a, b in itertools.product(range(n), repeat=2):
            mats.append(_complex_matrix(n, {(a, b): (1, 0)}))
            labels.append("E%d%d" % (a, b))
            mats.append(_complex_matrix(n, {(a, b): (0, 1)}))
            labels.append("iE%d%d" % (a, b))
        return matrix_algebra_from(mats, labels, "gl(%d,C)" % n)
    if key == "heisenberg":
        _require(n is not None and int(n) >= 1, "heisenberg needs n >= 1")
        n = int(n)
        labels = ["x%d" % i for i in range(n)] + ["y%d" % i for i in range(n)] + ["z"]
        prod = {}
        for i in range(n):
            prod[(i, n + i)] = [(2 * n, 1)]
            prod[(n + i, i)] = [(2 * n, -1)]
        grades = [1] * (2 * n) + [2]
        return make_algebra(labels, prod, grades, grading_rank=1, name="heisenberg(%d)" % n)
    if key == "abelian":
        k = int(params.get("k", n or 0))
        _require(k >= 1, "abelian needs k >= 1")
        return make_algebra(["a%d" % i for i in range(k)], {}, name="R%d" % k)
    if key == "iso":
        p, q = int(params.get("p", n or 0)), int(params.get("q", 0))
        _require(p + q >= 2, "iso(p,q) needs p + q >= 2")
        mats, labels = _so_basis(p, q)
        h = matrix_algebra_from(mats, labels, "so(%d,%d)" % (p, q))
        title = "iso(%d)" % p if q == 0 else "iso(%d,%d)" % (p, q)
        return semidirect(h, mats, name=title)
    if key in ("super_translation", "supertranslation"):
        k, l = int(params.get("k", 0)), int(params.get("l", 0))
        _require(k >= 0 and l >= 0 and k + l >= 1, "super_translation needs k + l >= 1")
        labels = ["b%d" % i for i in range(k)] + ["f%d" % i for i in range(l)]
        grades = [[0]] * k + [[1]] * l
        return make_algebra(labels, {}, grades, grading_rank=0, parity_rank=1,
                            name="R(%d|%d)" % (k, l))
    raise AlgebraError("unknown classical algebra %r" % name)


# ---------------------------------------------------------------------------
# Cayley-Dickson


def reals() -> Algebra:
    return make_algebra(["1"], {(0, 0): [(0, 1)]}, involution=[[1]], name="R")


def complexes() -> Algebra:
    return make_algebra(["1", "i"], {(0, 0): [(0, 1)], (0, 1): [(1, 1)], (1, 0): [(1, 1)],
                                     (1, 1): [(0, -1)]},
                        involution=[[1, 0], [0, -1]], name="C")


def quaternions() -> Algebra:
    return cd_tower(2, name="H")


def octonions() -> Algebra:
    return cd_tower(3, name="O")


def sedenions() -> Algebra:
    return cd_tower(4, name="S")


def cayley_dickson(A: Algebra, gamma=-1, labels=None, name=None) -> Algebra:
    """Double A to A ⊕ A with (a,b)(c,d) = (ac + γ d̄b, da + bc̄) and
    conjugation (a,b) ↦ (ā, -b)."""
    if A.involution is None:
        raise AlgebraError("Cayley-Dickson doubling needs an involution on %s" % A.name)
    gamma = as_rational(gamma)
    n = A.dim
    e = [A.basis_vector(i) for i in range(n)]
    bar = [A.apply_involution(v) for v in e]
    table = {}

    def put(i, j, vec, shift):
        terms = tuple((k + shift, c) for k, c in enumerate(vec) if c)
        if terms:
            table[(i, j)] = terms

    for i in range(n):
        for j in range(n):
            # (e_i,0)(e_j,0) = (e_i e_j, 0)
            put(i, j, A.mul(e[i], e[j]), 0)
            # (e_i,0)(0,e_j) = (0, e_j e_i)
            put(i, n + j, A.mul(e[j], e[i]), n)
            # (0,e_i)(e_j,0) = (0, e_i ē_j)
            put(n + i, j, A.mul(e[i], bar[j]), n)
            # (0,e_i)(0,e_j) = (γ ē_j e_i, 0)
            put(n + i, n + j, tuple(gamma * c for c in A.mul(bar[j], e[i])), 0)
    inv = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for r in range(n):
        for c in range(n):
            inv[r][c] = A.involution[r][c]
        inv[n + r][n + r] = -ONE
    if labels is None:
        labels = list(A.labels) + ["%s'" % l for l in A.labels]
    return make_algebra(labels, table, involution=inv, name=name or "CD(%s)" % A.name)


def cd_tower(l: int, gamma=-1, name=None, max_level: int = MAX_CD_LEVEL) -> Algebra:
    """CD^l(R): dimension 2**l, basis e0 .. e(2**l - 1)."""
    if l < 0:
        raise AlgebraError("level must be non-negative")
    if l > max_level:
        raise AlgebraError("cd_tower(%d) exceeds the level cap %d: %d structure-constant pairs"
                           % (l, max_level, 4 ** l))
    A = reals()
    for level in range(1, l + 1):
        A = cayley_dickson(A, gamma, labels=["e%d" % i for i in range(2 ** level)],
                           name="CD%d" % level)
    if l == 0:
        A = make_algebra(["e0"], A.table, involution=A.involution, name="CD0")
    if name:
        A = make_algebra(A.labels, A.table, involution=A.involution, name=name,
                         check_involution=False)
    return A


# ---------------------------------------------------------------------------
# unitary matrices over an involutive algebra


@dataclass(frozen=True)
class UnitarySpec:
    """Anti-Hermitian k x k matrices over ``base`` for signature (p, q)."""

    k: int
    signature: tuple
    base: Algebra
    mode: str = "bracket"

    def __post_init__(self):
        p, q = self.signature
        if self.k < 1 or p < 0 or q < 0 or p + q != self.k:
            raise AlgebraError("invalid signature %r for k = %d" % (self.signature, self.k))
        if self.base.involution is None:
            raise AlgebraError("unitary matrices need an involution on %s" % self.base.name)
        if self.mode not in ("bracket", "matrix"):
            raise AlgebraError("mode must be 'bracket' or 'matrix'")


class _BaseMatrices:
    """k x k matrices over an involutive algebra, stored as nested tuples of
    base vectors."""

    def __init__(self, base: Algebra, k: int):
        self.base = base
        self.k = k

    def zero(self):
        z = self.base.zero_vector()
        return [[z] * self.k for _ in range(self.k)]

    def mul(self, X, Y):
        B = self.base
        out = self.zero()
        for a in range(self.k):
            for c in range(self.k):
                acc = B.zero_vector()
                for b in range(self.k):
                    if any(X[a][b]) and any(Y[b][c]):
                        acc = B.add(acc, B.mul(X[a][b], Y[b][c]))
                out[a][c] = acc
        return out

    def sub(self, X, Y):
        return [[self.base.sub(X[a][b], Y[a][b]) for b in range(self.k)] for a in range(self.k)]

    def flat(self, X) -> tuple:
        return tuple(x for row in X for v in row for x in v)


def _imaginary_basis(B: Algebra) -> list:
    """Basis of {x : x̄ = -x}."""
    n = B.dim
    rows = [[B.involution[r][c] + (ONE if r == c else ZERO) for c in range(n)] for r in range(n)]
    ns = linalg.nullspace(rows, n)
    # prefer basis vectors when the eigenspace is coordinate-aligned
    simple = [B.basis_vector(i) for i in range(n) if B.apply_involution(B.basis_vector(i)) ==
              tuple(-x for x in B.basis_vector(i))]
    return simple if len(simple) == len(ns) else ns


def _unitary_basis(spec: UnitarySpec):
    B, k = spec.base, spec.k
    eta = _eta(*spec.signature)
    mats, labels = [], []
    space = _BaseMatrices(B, k)
    for a, b in itertools.combinations(range(k), 2):
        for u in range(B.dim):
            X = space.zero()
            vec = B.basis_vector(u)
            X[a][b] = vec
            # X_ba = -η_a η_b σ(X_ab)
            s = -eta[a] * eta[b]
            X[b][a] = tuple(s * x for x in B.apply_involution(vec))
            mats.append(X)
            labels.append("X%d%d:%s" % (a, b, B.labels[u]))
    for a in range(k):
        for v in _imaginary_basis(B):
            X = space.zero()
            X[a][a] = v
            mats.append(X)
            lab = next((B.labels[i] for i, x in enumerate(v) if x), "?") \
                if sum(1 for x in v if x) == 1 else "v"
            labels.append("D%d:%s" % (a, lab))
    return space, mats, labels


def unitary_cd(spec: UnitarySpec, name: str | None = None) -> Algebra:
    """Real algebra of k x k matrices X over the base with X† = -η X η."""
    space, mats, labels = _unitary_basis(spec)
    coord = linalg.Coordinatizer([space.flat(X) for X in mats])
    table = {}
    for i, X in enumerate(mats):
        for j, Y in enumerate(mats):
            P = space.mul(X, Y)
            if spec.mode == "bracket":
                P = space.sub(P, space.mul(Y, X))
            c = coord.coords(space.flat(P))
            if c is None:
                err = AlgebraError("anti-Hermitian matrices over %s are not closed under the %s product:"
                                   " (%s, %s); use bracket mode" % (spec.base.name, spec.mode,
                                                                     labels[i], labels[j]))
                err.witness = (i, j)
                raise err
            terms = tuple((k, v) for k, v in enumerate(c) if v)
            if terms:
                table[(i, j)] = terms
    p, q = spec.signature
    sig = "%d" % spec.k if q == 0 else "%d,%d" % (p, q)
    return Algebra(labels, table, None, None, name or "u(%s;%s)" % (sig, spec.base.name))


def _block(B: Algebra, x: tuple) -> list:
    """x = (a, b) in CD(B) as the 2 x 2 matrix [[a, -b], [b̄, ā]] over B."""
    n = B.dim
    a, b = x[:n], x[n:]
    return [[a, tuple(-c for c in b)], [B.apply_involution(b), B.apply_involution(a)]]


def _blockify(B: Algebra, X: list) -> list:
    k = len(X)
    out = [[None] * (2 * k) for _ in range(2 * k)]
    for r in range(k):
        for c in range(k):
            blk = _block(B, X[r][c])
            for dr in range(2):
                for dc in range(2):
                    out[2 * r + dr][2 * c + dc] = blk[dr][dc]
    return out


def _cd_levels(l: int) -> list:
    return [cd_tower(i) for i in range(l + 1)]


def _inclusion(k: int, signature, levels: list, l: int, depth: int) -> AlgebraMorphism:
    p, q = signature
    src_spec = UnitarySpec(k, (p, q), levels[l])
    src_space, src_mats, _ = _unitary_basis(src_spec)
    source = unitary_cd(src_spec)
    scale = 2 ** depth
    tgt_spec = UnitarySpec(scale * k, (scale * p, scale * q), levels[l - depth])
    tgt_space, tgt_mats, _ = _unitary_basis(tgt_spec)
    target = unitary_cd(tgt_spec)
    coord = linalg.Coordinatizer([tgt_space.flat(X) for X in tgt_mats])
    cols = []
    for i, X in enumerate(src_mats):
        Y = X
        for level in range(l, l - depth, -1):
            Y = _blockify(levels[level - 1], Y)
        c = coord.coords(tgt_space.flat(Y))
        if c is None:
            zero = ((ZERO,) * target.dim,) * source.dim
            return AlgebraMorphism(source, target, tuple(zip(*zero)), None, "refuted",
                                   ("not anti-Hermitian", i), "block image leaves the target")
        cols.append(c)
    matrix = tuple(tuple(cols[j][r] for j in range(source.dim)) for r in range(target.dim))
    return morphism_check(matrix, source, target,
                          note="entry (a,b) -> [[a, -b], [conj b, conj a]]")


def cd_block_inclusion(k: int, signature, l: int) -> AlgebraMorphism:
    """u(k; CD^l) -> u(2k; CD^(l-1)), each entry split into a 2 x 2 block of
    its two halves.  Bracket-multiplicative while CD^(l-1) is commutative."""
    if l < 1:
        raise AlgebraError("block inclusion needs l >= 1")
    return _inclusion(k, tuple(signature), _cd_levels(l), l, 1)


def cd_realification(k: int, signature, l: int) -> AlgebraMorphism:
    """u(k; CD^l) -> u(2^l k; R): the block inclusions iterated down to R."""
    if l < 1:
        raise AlgebraError("realification needs l >= 1")
    return _inclusion(k, tuple(signature), _cd_levels(l), l, l)


# ---------------------------------------------------------------------------
# zero divisors


def find_zero_divisor(A: Algebra, bound: int = 2):
    """Search sums of up to ``bound`` basis vectors with coefficients ±1 for
    a pair x, y (both nonzero) with x*y = 0.  Returns (x, y) or None."""
    n = A.dim
    cands = []
    for size in range(1, bound + 1):
        for idx in itertools.combinations(range(n), size):
            for signs in itertools.product((1, -1), repeat=size - 1):
                v = [ZERO] * n
                v[idx[0]] = ONE
                for i, s in zip(idx[1:], signs):
                    v[i] = Fraction(s)
                cands.append(tuple(v))
    zero = A.zero_vector()
    for i, x in enumerate(cands):
        for y in cands[i + 1:]:
            if A.mul(x, y) == zero:
                return x, y
            if A.mul(y, x) == zero:
                return y, x
    return None
