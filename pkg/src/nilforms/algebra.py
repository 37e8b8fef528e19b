"""Finite-dimensional algebras over the rationals given by structure
constants, together with gradings, involutions, submodules, module splits
and morphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg
from .ring import as_rational, rational_str


class AlgebraError(ValueError):
    pass


class GradingError(AlgebraError):
    def __init__(self, offending):
        self.offending = list(offending)
        super().__init__("product violates grading at (i, j, k) = %s" % (self.offending[:5],))


class InvolutionError(AlgebraError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class SplitError(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# gradings


@dataclass(frozen=True, order=True)
class Grade:
    """Element of Z^d x (Z/2)^e."""

    free: tuple = ()
    parity: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        object.__setattr__(self, "parity", tuple(int(x) % 2 for x in self.parity))

    @classmethod
    def zero(cls, d: int = 0, e: int = 0) -> "Grade":
        return cls((0,) * d, (0,) * e)

    @property
    def rank(self):
        return (len(self.free), len(self.parity))

    def _check(self, other):
        if self.rank != other.rank:
            raise AlgebraError("grades of different shapes: %s vs %s" % (self, other))

    def __add__(self, other: "Grade") -> "Grade":
        self._check(other)
        return Grade(tuple(a + b for a, b in zip(self.free, other.free)),
                     tuple(a + b for a, b in zip(self.parity, other.parity)))

    def __neg__(self) -> "Grade":
        return Grade(tuple(-a for a in self.free), self.parity)

    def __sub__(self, other: "Grade") -> "Grade":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.parity)

    def odd(self) -> int:
        return sum(self.parity) % 2

    def to_json(self):
        return list(self.free) + list(self.parity)

    def __str__(self):
        s = ",".join(str(x) for x in self.free)
        if self.parity:
            s += "|" + ",".join(str(x) for x in self.parity)
        return "(%s)" % s


def as_grade(g, d: int, e: int) -> Grade:
    if isinstance(g, Grade):
        return g
    if isinstance(g, int):
        g = [g]
    g = list(g)
    if len(g) != d + e:
        raise AlgebraError("grade %r does not have %d components" % (g, d + e))
    return Grade(tuple(g[:d]), tuple(g[d:]))


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class FlagResult:
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {"holds": self.holds, "witness": list(self.witness) if self.witness else None}


@dataclass(frozen=True)
class Flags:
    associative: FlagResult
    commutative: FlagResult
    anticommutative: FlagResult
    jacobi: FlagResult
    alternative: FlagResult

    def to_json(self):
        return {name: getattr(self, name).to_json()
                for name in ("associative", "commutative", "anticommutative", "jacobi", "alternative")}


class Algebra:
    """Algebra over Q presented by structure constants.

    ``table[(i, j)]`` is a tuple of ``(k, c)`` pairs meaning
    ``e_i * e_j = sum c e_k``; absent pairs multiply to zero.  ``grades``
    optionally assigns a :class:`Grade` to every basis vector; ``offset``
    is the grade carried by the product itself (zero except after
    :func:`shift_grading`).
    """

    def __init__(self, labels, table, grades=None, involution=None, name=None,
                 offset: Grade | None = None):
        self.labels = tuple(labels)
        self.table = table
        self.grades = tuple(grades) if grades is not None else None
        self.involution = involution
        self.name = name or "algebra"
        self.offset = None
        if self.grades is not None:
            self.offset = offset if offset is not None else Grade.zero(*self.grades[0].rank)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def graded(self) -> bool:
        return self.grades is not None

    @property
    def grade_rank(self):
        if not self.grades:
            return (0, 0)
        return self.grades[0].rank

    def product(self, i: int, j: int) -> tuple:
        return self.table.get((i, j), ())

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def zero_vector(self) -> tuple:
        return (Fraction(0),) * self.dim

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in self.table.get((i, j), ()):
                    out[k] += ab * c
        return tuple(out)

    def add(self, x, y) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y) -> tuple:
        return tuple(a - b for a, b in zip(x, y))

    def grade_of(self, i: int) -> Grade | None:
        return self.grades[i] if self.grades is not None else None

    def distinct_grades(self) -> list:
        if self.grades is None:
            return []
        return sorted(set(self.grades))

    def apply_involution(self, x) -> tuple:
        if self.involution is None:
            raise AlgebraError("%s has no involution" % self.name)
        return linalg.mat_vec(self.involution, x)

    @cached_property
    def flags(self) -> Flags:
        return check_flags(self)

    def is_abelian(self) -> bool:
        return not any(self.table.values())

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.labels == other.labels and self.table == other.table
                and self.grades == other.grades and self.involution == other.involution
                and self.offset == other.offset)

    def __hash__(self):
        return hash((self.labels, tuple(sorted(self.table.items()))))

    def __repr__(self):
        return "Algebra(%s, dim=%d)" % (self.name, self.dim)

    def to_json(self) -> dict:
        d, e = self.grade_rank
        out = {"name": self.name, "basis": list(self.labels), "grading_rank": d, "parity_rank": e}
        if self.grades is not None:
            out["grades"] = [g.to_json() for g in self.grades]
            if self.offset is not None and not self.offset.is_zero():
                out["offset"] = self.offset.to_json()
        out["product"] = [
            [i, j, [[k, rational_str(c)] for k, c in terms]]
            for (i, j), terms in sorted(self.table.items()) if terms
        ]
        if self.involution is not None:
            out["involution"] = [[rational_str(c) for c in row] for row in self.involution]
        return out


def _clean_terms(terms) -> tuple:
    acc: dict = {}
    if isinstance(terms, Mapping):
        terms = terms.items()
    for k, c in terms:
        acc[int(k)] = acc.get(int(k), 0) + as_rational(c)
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def make_algebra(labels: Sequence[str], product, grades=None, involution=None, *,
                 grading_rank: int | None = None, parity_rank: int = 0,
                 name: str | None = None, check_involution: bool = True,
                 offset=None) -> Algebra:
    """Build and validate an algebra.

    ``product`` is either a mapping ``(i, j) -> [(k, c), ...]`` or an
    iterable of ``(i, j, [(k, c), ...])`` triples.
    """
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if n == 0:
        raise AlgebraError("algebra must have positive dimension")
    if isinstance(product, Mapping):
        items = product.items()
    else:
        items = (((t[0], t[1]), t[2]) for t in product)
    table = {}
    for (i, j), terms in items:
        i, j = int(i), int(j)
        terms = _clean_terms(terms)
        for idx in (i, j, *(k for k, _ in terms)):
            if not 0 <= idx < n:
                raise AlgebraError("product entry (%d, %d) references basis index %d outside 0..%d"
                                   % (i, j, idx, n - 1))
        if terms:
            if (i, j) in table:
                terms = _clean_terms(list(table[(i, j)]) + list(terms))
            table[(i, j)] = terms

    gr = None
    off = None
    if grades is not None:
        grades = list(grades)
        if len(grades) != n:
            raise AlgebraError("need %d grades, got %d" % (n, len(grades)))
        if grading_rank is None:
            first = grades[0]
            if isinstance(first, Grade):
                grading_rank, parity_rank = first.rank
            else:
                grading_rank = (1 if isinstance(first, int) else len(first)) - parity_rank
        gr = tuple(as_grade(g, grading_rank, parity_rank) for g in grades)
        off = as_grade(offset, grading_rank, parity_rank) if offset is not None \
            else Grade.zero(grading_rank, parity_rank)
        bad = [(i, j, k) for (i, j), terms in table.items() for k, _ in terms
               if gr[k] != gr[i] + gr[j] + off]
        if bad:
            raise GradingError(sorted(bad))

    inv = None
    if involution is not None:
        inv = tuple(tuple(as_rational(c) for c in row) for row in involution)
        if len(inv) != n or any(len(r) != n for r in inv):
            raise InvolutionError("involution must be a %dx%d matrix" % (n, n))

    alg = Algebra(labels, table, gr, inv, name, off)
    if inv is not None and check_involution:
        verify_involution(alg)
    return alg


def verify_involution(A: Algebra) -> None:
    """Raise InvolutionError unless the involution is an anti-automorphism
    squaring to the identity."""
    sq = linalg.mat_mul(A.involution, A.involution)
    if sq != linalg.identity(A.dim):
        bad = next(i for i in range(A.dim) if linalg.mat_vec(sq, A.basis_vector(i)) != A.basis_vector(i))
        raise InvolutionError("involution does not square to the identity", (bad,))
    images = [A.apply_involution(A.basis_vector(i)) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.apply_involution(A.mul(A.basis_vector(i), A.basis_vector(j)))
            rhs = A.mul(images[j], images[i])
            if lhs != rhs:
                raise InvolutionError("involution does not reverse the product of %s and %s"
                                      % (A.labels[i], A.labels[j]), (i, j))


def with_grading(A: Algebra, grades, *, grading_rank=None, parity_rank=0, name=None) -> Algebra:
    """Same structure constants with a new (validated) grading."""
    return make_algebra(A.labels, A.table, grades, A.involution, grading_rank=grading_rank,
                        parity_rank=parity_rank, name=name or A.name, check_involution=False)


def relabel(A: Algebra, name: str) -> Algebra:
    return Algebra(A.labels, A.table, A.grades, A.involution, name, A.offset)


def algebra_from_json(data: Mapping) -> Algebra:
    d = int(data.get("grading_rank", 0))
    e = int(data.get("parity_rank", 0))
    grades = data.get("grades")
    if grades is not None:
        grades = [as_grade(g, d, e) for g in grades]
    product = []
    for entry in data.get("product", []):
        if len(entry) != 3:
            raise AlgebraError("malformed product entry %r" % (entry,))
        i, j, terms = entry
        product.append((i, j, [(k, Fraction(c)) for k, c in terms]))
    return make_algebra(data["basis"], product, grades, data.get("involution"),
                        grading_rank=d, parity_rank=e, name=data.get("name"),
                        offset=data.get("offset"))


# ---------------------------------------------------------------------------
# identities


def check_flags(A: Algebra) -> Flags:
    n = A.dim
    e = [A.basis_vector(i) for i in range(n)]
    prods = [[A.mul(e[i], e[j]) for j in range(n)] for i in range(n)]
    zero = A.zero_vector()

    comm = anti = None
    for i in range(n):
        for j in range(i, n):
            if comm is None and prods[i][j] != prods[j][i]:
                comm = (i, j)
            if anti is None and A.add(prods[i][j], prods[j][i]) != zero:
                anti = (i, j)

    assoc = jac = alt = None
    left = {}

    def assoc_vec(i, j, k):
        key = (i, j, k)
        if key not in left:
            left[key] = A.sub(A.mul(prods[i][j], e[k]), A.mul(e[i], prods[j][k]))
        return left[key]

    for i, j, k in itertools.product(range(n), repeat=3):
        a = assoc_vec(i, j, k)
        if assoc is None and a != zero:
            assoc = (i, j, k)
        if jac is None and i <= j <= k:
            J = A.add(A.add(A.mul(e[i], prods[j][k]), A.mul(e[j], prods[k][i])), A.mul(e[k], prods[i][j]))
            if J != zero:
                jac = (i, j, k)
        if alt is None:
            # the associator is alternating iff it is skew in both adjacent pairs
            if A.add(a, assoc_vec(j, i, k)) != zero or A.add(a, assoc_vec(i, k, j)) != zero:
                alt = (i, j, k)

    def res(w):
        return FlagResult(w is None, w)

    return Flags(res(assoc), res(comm), res(anti), res(jac), res(alt))


# ---------------------------------------------------------------------------
# constructions


def commutator_algebra(A: Algebra, name: str | None = None) -> Algebra:
    table = {}
    for i in range(A.dim):
        for j in range(A.dim):
            acc = dict(A.product(i, j))
            for k, c in A.product(j, i):
                acc[k] = acc.get(k, 0) - c
            terms = _clean_terms(acc)
            if terms:
                table[(i, j)] = terms
    return Algebra(A.labels, table, A.grades, None, name or "[%s]" % A.name, A.offset)


def direct_sum(A: Algebra, B: Algebra, name: str | None = None) -> Algebra:
    n = A.dim
    table = dict(A.table)
    for (i, j), terms in B.table.items():
        table[(i + n, j + n)] = tuple((k + n, c) for k, c in terms)
    labels = [("%s.1" % l) for l in A.labels] + [("%s.2" % l) for l in B.labels]
    grades = None
    if A.graded and B.graded:
        if A.grade_rank != B.grade_rank:
            raise AlgebraError("cannot concatenate gradings of different shapes")
        if A.offset != B.offset:
            raise AlgebraError("cannot combine algebras with different grade offsets")
        grades = A.grades + B.grades
    inv = None
    if A.involution is not None and B.involution is not None:
        dim = n + B.dim
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for r in range(n):
            for c in range(n):
                rows[r][c] = A.involution[r][c]
        for r in range(B.dim):
            for c in range(B.dim):
                rows[n + r][n + c] = B.involution[r][c]
        inv = tuple(tuple(r) for r in rows)
    return Algebra(labels, table, grades, inv, name or "%s+%s" % (A.name, B.name),
                   A.offset if grades is not None else None)


def semidirect(h: Algebra, rho: Sequence, name: str | None = None, labels=None) -> Algebra:
    """R^k ⋊ h for a Lie algebra h acting through matrices ``rho[a]``.

    Basis order: translations t0..t(k-1), then the basis of h.
    """
    if not h.flags.jacobi:
        raise AlgebraError("%s does not satisfy the Jacobi identity" % h.name)
    if len(rho) != h.dim:
        raise AlgebraError("need one representation matrix per basis element of %s" % h.name)
    rho = [tuple(tuple(as_rational(c) for c in row) for row in m) for m in rho]
    k = len(rho[0]) if rho else 0
    # rho([X_a, X_b]) = [rho(X_a), rho(X_b)]
    for a in range(h.dim):
        for b in range(h.dim):
            lhs = [[Fraction(0)] * k for _ in range(k)]
            for c, coef in h.product(a, b):
                for r in range(k):
                    for s in range(k):
                        lhs[r][s] += coef * rho[c][r][s]
            ab = linalg.mat_mul(rho[a], rho[b])
            ba = linalg.mat_mul(rho[b], rho[a])
            rhs = [[ab[r][s] - ba[r][s] for s in range(k)] for r in range(k)]
            if lhs != rhs:
                raise AlgebraError("rho is not a representation: fails on (%s, %s)"
                                   % (h.labels[a], h.labels[b]))
    table = {}
    for a in range(h.dim):
        for i in range(k):
            col = [(j, rho[a][j][i]) for j in range(k) if rho[a][j][i]]
            if col:
                table[(k + a, i)] = tuple(col)
                table[(i, k + a)] = tuple((j, -c) for j, c in col)
    for (a, b), terms in h.table.items():
        table[(k + a, k + b)] = tuple((k + c, v) for c, v in terms)
    labels = list(labels) if labels else ["t%d" % i for i in range(k)] + list(h.labels)
    return Algebra(labels, table, None, None, name or "R%d x| %s" % (k, h.name))


def pushforward_product(E_dim: int, A: Algebra, pi: Sequence, section: Sequence,
                        labels=None, name=None) -> Algebra:
    """Product x *' y = s(pi(x) * pi(y)) on an extension E of A.

    ``pi`` is a dim(A) x E_dim matrix and ``section`` an E_dim x dim(A)
    matrix with pi∘section = id.
    """
    pi = tuple(tuple(as_rational(c) for c in row) for row in pi)
    section = tuple(tuple(as_rational(c) for c in row) for row in section)
    if len(pi) != A.dim or any(len(r) != E_dim for r in pi):
        raise AlgebraError("pi must be a %dx%d matrix" % (A.dim, E_dim))
    if len(section) != E_dim or any(len(r) != A.dim for r in section):
        raise AlgebraError("section must be a %dx%d matrix" % (E_dim, A.dim))
    comp = linalg.mat_mul(pi, section)
    for i in range(A.dim):
        col = tuple(comp[r][i] for r in range(A.dim))
        if col != A.basis_vector(i):
            raise AlgebraError("pi∘section is not the identity on basis vector %s" % A.labels[i])
    if linalg.rank(pi, E_dim) != A.dim:
        raise AlgebraError("pi is not surjective")
    proj = [tuple(pi[r][c] for r in range(A.dim)) for c in range(E_dim)]
    table = {}
    for i in range(E_dim):
        for j in range(E_dim):
            v = linalg.mat_vec(section, A.mul(proj[i], proj[j]))
            terms = tuple((k, c) for k, c in enumerate(v) if c)
            if terms:
                table[(i, j)] = terms
    labels = list(labels) if labels else ["E%d" % i for i in range(E_dim)]
    return Algebra(labels, table, None, None, name or "ext(%s)" % A.name)


def shift_grading(A: Algebra, l) -> Algebra:
    """A[-l]: every basis grade moves by -l; the product acquires grade l."""
    if not A.graded:
        raise AlgebraError("cannot shift the grading of ungraded %s" % A.name)
    l = as_grade(l, *A.grade_rank)
    grades = tuple(g - l for g in A.grades)
    name = A.name
    return Algebra(A.labels, A.table, grades, A.involution, name, A.offset + l)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class AlgebraMorphism:
    source: Algebra
    target: Algebra
    matrix: tuple  # target.dim rows x source.dim columns
    shift: Grade | None = None
    status: str = "unchecked"  # verified | refuted | unchecked
    witness: tuple | None = None
    note: str = ""

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def __call__(self, x) -> tuple:
        return linalg.mat_vec(self.matrix, x)

    def is_injective(self) -> bool:
        cols = [tuple(row[c] for row in self.matrix) for c in range(self.source.dim)]
        return linalg.rank(cols, self.target.dim) == self.source.dim

    def compose(self, first: "AlgebraMorphism") -> "AlgebraMorphism":
        """self ∘ first, re-checked."""
        m = linalg.mat_mul(self.matrix, first.matrix)
        shift = None
        if self.shift is not None and first.shift is not None:
            shift = self.shift + first.shift
        return morphism_check(m, first.source, self.target, shift)

    def to_json(self):
        return {
            "source": self.source.name,
            "target": self.target.name,
            "matrix": [[rational_str(c) for c in row] for row in self.matrix],
            "shift": self.shift.to_json() if self.shift is not None else None,
            "status": self.status,
            "witness": list(self.witness) if self.witness else None,
            "note": self.note,
        }


def morphism_check(matrix, source: Algebra, target: Algebra, shift=None,
                   product=None, note: str = "") -> AlgebraMorphism:
    """Check multiplicativity on all basis pairs, and the grade shift when
    both sides are graded.  Refutations are recorded, never raised."""
    m = tuple(tuple(as_rational(c) for c in row) for row in matrix)
    if len(m) != target.dim or any(len(r) != source.dim for r in m):
        raise AlgebraError("matrix must be %dx%d" % (target.dim, source.dim))
    if shift is not None and source.graded:
        shift = as_grade(shift, *source.grade_rank)
    images = [tuple(m[r][c] for r in range(target.dim)) for c in range(source.dim)]
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = linalg.mat_vec(m, source.mul(source.basis_vector(i), source.basis_vector(j)))
            rhs = target.mul(images[i], images[j])
            if lhs != rhs:
                return AlgebraMorphism(source, target, m, shift, "refuted", ("product", i, j), note)
    if source.graded and target.graded:
        l = shift if shift is not None else Grade.zero(*source.grade_rank)
        for i in range(source.dim):
            want = source.grades[i] + l
            for k, c in enumerate(images[i]):
                if c and target.grades[k] != want:
                    return AlgebraMorphism(source, target, m, shift, "refuted", ("grade", i, k), note)
    return AlgebraMorphism(source, target, m, shift, "verified", None, note)


# ---------------------------------------------------------------------------
# submodules


class Submodule:
    """Span of linearly independent coordinate vectors in ``parent``."""

    def __init__(self, parent: Algebra, basis: Sequence[Sequence] = (), name: str = ""):
        self.parent = parent
        vecs = []
        for v in basis:
            v = linalg.as_vector(v)
            if len(v) != parent.dim:
                raise AlgebraError("generator %r has wrong length for %s" % (v, parent.name))
            vecs.append(v)
        if vecs and linalg.rank(vecs, parent.dim) != len(vecs):
            raise AlgebraError("generators of submodule %r are linearly dependent" % name)
        self.basis = tuple(vecs)
        self.name = name

    @classmethod
    def full(cls, A: Algebra, name: str = "") -> "Submodule":
        return cls(A, [A.basis_vector(i) for i in range(A.dim)], name or A.name)

    @classmethod
    def of_labels(cls, A: Algebra, labels: Sequence[str], name: str = "") -> "Submodule":
        idx = {l: i for i, l in enumerate(A.labels)}
        try:
            return cls(A, [A.basis_vector(idx[l]) for l in labels], name)
        except KeyError as exc:
            raise AlgebraError("unknown basis label %s" % exc) from None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def rebase(self, parent: Algebra) -> "Submodule":
        if parent.dim != self.parent.dim:
            raise AlgebraError("cannot move submodule to an algebra of different dimension")
        return Submodule(parent, self.basis, self.name)

    def contains(self, v) -> bool:
        return linalg.in_span(linalg.as_vector(v), self.basis)

    def contains_submodule(self, other: "Submodule") -> bool:
        return all(self.contains(v) for v in other.basis)

    def is_homogeneous(self) -> bool:
        if not self.parent.graded:
            return True
        g = self.parent.grades
        return all(len({g[k] for k, c in enumerate(v) if c}) <= 1 for v in self.basis)

    def graded_components(self) -> dict:
        """Map grade -> Submodule V ∩ A^m (nonzero pieces only).

        Uses the given basis when it is homogeneous (keeping its order);
        otherwise intersects.  Raises if V is not the sum of its pieces.
        """
        A = self.parent
        if not A.graded:
            return {None: self} if self.dim else {}
        g = A.grades
        if self.is_homogeneous():
            pieces: dict = {}
            for v in self.basis:
                m = next(g[k] for k, c in enumerate(v) if c)
                pieces.setdefault(m, []).append(v)
            return {m: Submodule(A, vs, "%s^%s" % (self.name, m)) for m, vs in sorted(pieces.items())}
        out = {}
        total = 0
        for m in A.distinct_grades():
            coord = [A.basis_vector(i) for i in range(A.dim) if g[i] == m]
            vs = linalg.intersect(self.basis, coord, A.dim)
            if vs:
                out[m] = Submodule(A, vs, "%s^%s" % (self.name, m))
                total += len(vs)
        if total != self.dim:
            raise AlgebraError("submodule %r is not graded (not the sum of its homogeneous pieces)"
                               % self.name)
        return out

    def is_subalgebra(self) -> FlagResult:
        A = self.parent
        for a, u in enumerate(self.basis):
            for b, v in enumerate(self.basis):
                if not self.contains(A.mul(u, v)):
                    return FlagResult(False, (a, b))
        return FlagResult(True)

    def is_ideal(self) -> FlagResult:
        A = self.parent
        for i in range(A.dim):
            x = A.basis_vector(i)
            for b, v in enumerate(self.basis):
                if not self.contains(A.mul(x, v)) or not self.contains(A.mul(v, x)):
                    return FlagResult(False, (i, b))
        return FlagResult(True)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.parent == other.parent and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return "Submodule(%s, dim=%d in %s)" % (self.name or "?", self.dim, self.parent.name)

    def to_json(self):
        return {"name": self.name, "basis": [[rational_str(c) for c in v] for v in self.basis]}


def submodule(A: Algebra, generators: Sequence[Sequence], name: str = "") -> Submodule:
    return Submodule(A, generators, name)


@dataclass(frozen=True)
class ModuleSplit:
    parent: Algebra
    part0: Submodule
    part1: Submodule
    part0_subalgebra: FlagResult = field(default=FlagResult(False))
    part0_ideal: FlagResult = field(default=FlagResult(False))
    part1_subalgebra: FlagResult = field(default=FlagResult(False))

    def rebase(self, parent: Algebra) -> "ModuleSplit":
        return module_split(parent, self.part0.basis, self.part1.basis)

    def to_json(self):
        return {
            "part0": self.part0.to_json(),
            "part1": self.part1.to_json(),
            "part0_subalgebra": self.part0_subalgebra.to_json(),
            "part0_ideal": self.part0_ideal.to_json(),
            "part1_subalgebra": self.part1_subalgebra.to_json(),
        }


def module_split(A: Algebra, gens0: Sequence[Sequence], gens1: Sequence[Sequence]) -> ModuleSplit:
    """A = A0 ⊕ A1; also reports whether A0 is a subalgebra / an ideal."""
    p0 = Submodule(A, gens0, "A0")
    p1 = Submodule(A, gens1, "A1")
    r = linalg.rank(list(p0.basis) + list(p1.basis), A.dim)
    if p0.dim + p1.dim != A.dim or r != A.dim:
        raise SplitError("parts are not complementary: dim A0 = %d, dim A1 = %d, rank of union = %d, "
                         "dim A = %d" % (p0.dim, p1.dim, r, A.dim))
    return ModuleSplit(A, p0, p1, p0.is_subalgebra(), p0.is_ideal(), p1.is_subalgebra())
