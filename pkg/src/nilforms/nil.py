"""Certificates for nilpotency of algebra-valued forms.

A submodule V is certified (k, s)-nil when the (s+1)-fold wedge power of the
generic V-valued k-form on k(s+1) generators vanishes.  Exact mode expands
with polynomial coefficients; modular mode evaluates the same products at
random points of a prime field and reports a Schwartz-Zippel bound.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import __version__, linalg
from .algebra import Submodule
from .forms import DEFAULT_CAPS, Caps, evaluate_tree, generic_form, paren_trees, random_assignment, sz_bound
from .ring import DEFAULT_PRIME, rational_str


@dataclass(frozen=True)
class Mode:
    kind: str = "exact"  # exact | modular
    prime: int = DEFAULT_PRIME
    trials: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("exact", "modular"):
            raise ValueError("mode must be 'exact' or 'modular'")
        if self.trials < 1:
            raise ValueError("need at least one trial")

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    def to_json(self) -> dict:
        if self.exact:
            return {"kind": "exact"}
        return {"kind": "modular", "prime": self.prime, "trials": self.trials, "seed": self.seed}


EXACT = Mode()


def modular(trials: int = 20, seed: int = 0, prime: int = DEFAULT_PRIME) -> Mode:
    return Mode("modular", prime, trials, seed)


@dataclass
class NilCertificate:
    subject: Submodule
    kind: str  # nil_bound | nil_degree | weak_nil | solv
    k: int
    s: int
    n_gens: int
    mode: Mode
    verdict: str  # certified | refuted | degenerate | exceeded
    witness: dict | None = None
    trees: list = field(default_factory=list)
    tree_policy: str = ""
    failure_bound: dict | None = None
    parts: list = field(default_factory=list)
    matrix: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)
    seconds: float | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    @property
    def refuted(self) -> bool:
        return self.verdict == "refuted"

    @property
    def probabilistic(self) -> bool:
        return not self.mode.exact

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "engine": "nilforms %s" % __version__,
            "kind": self.kind,
            "subject": {
                "algebra": self.subject.parent.name,
                "name": self.subject.name,
                "dim": self.subject.dim,
                "basis": [[rational_str(c) for c in v] for v in self.subject.basis],
            },
            "k": self.k,
            "s": self.s,
            "generators": self.n_gens,
            "mode": self.mode.to_json(),
            "probabilistic": self.probabilistic,
            "verdict": self.verdict,
            "witness": self.witness,
            "trees": list(self.trees),
            "tree_policy": self.tree_policy,
        }
        if self.failure_bound is not None:
            out["failure_bound"] = self.failure_bound
        if self.parts:
            out["parts"] = [p.to_json(timing) for p in self.parts]
        if self.matrix:
            out["matrix"] = self.matrix
        if self.detail:
            out["detail"] = self.detail
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


def _witness_json(form, tree) -> dict:
    (mu, k), p = form.first_term()
    terms = p.sorted_terms()
    m, c = terms[0]
    return {
        "tree": str(tree),
        "monomial": list(mu),
        "basis": form.algebra.labels[k],
        "coeff_terms": len(terms),
        "leading_term": {"coeff": rational_str(c), "vars": [[[v.tag, *v.index], e] for v, e in m]},
    }


def _products(factor_sets, trees, mode: Mode, caps: Caps):
    """Evaluate every (factor sequence, tree) product.

    ``factor_sets`` is a list of (label, [AForm, ...]).  Yields
    (label, tree, verdict, witness-or-None) in order.  In modular mode all
    forms are specialized at the same random point per trial, so a
    refutation in any trial is final.
    """
    if mode.exact:
        memo_cache: dict = {}
        for label, factors in factor_sets:
            same = all(f is factors[0] for f in factors)
            memo = memo_cache.setdefault(id(factors[0]), {}) if same else None
            for tree in trees:
                out = evaluate_tree(tree, factors, memo, caps)
                yield label, tree, ("zero" if out.is_zero() else "nonzero"), \
                    (None if out.is_zero() else _witness_json(out, tree))
        return
    rng = random.Random(mode.seed)
    # every distinct generic form, in a stable order
    forms = []
    seen = set()
    for _, factors in factor_sets:
        for f in factors:
            if id(f) not in seen:
                seen.add(id(f))
                forms.append(f)
    variables = sorted({v for f in forms for v in f.variables()})
    results = {}
    for t in range(mode.trials):
        point = random_assignment(variables, mode.prime, rng)
        special = {id(f): f.specialize(point, mode.prime) for f in forms}
        for label, factors in factor_sets:
            mf = [special[id(f)] for f in factors]
            same = all(f is factors[0] for f in factors)
            memo = {} if same else None
            for tree in trees:
                key = (label, tree)
                if key in results:
                    continue
                out = evaluate_tree(tree, mf, memo, caps)
                if not out.is_zero():
                    (mu, k), v = min(out.terms.items())
                    results[key] = {"tree": str(tree), "trial": t, "monomial": list(mu),
                                    "basis": out.algebra.labels[k], "value": v}
    for label, _ in factor_sets:
        for tree in trees:
            w = results.get((label, tree))
            yield label, tree, ("zero" if w is None else "nonzero"), w


def _bound(mode: Mode, degree: int):
    if mode.exact:
        return None
    return sz_bound(degree, mode.prime, mode.trials)


def nil_bound(V: Submodule, k: int, s: int, mode: Mode = EXACT, paren_policy: str = "auto",
              n_gens: int | None = None, caps: Caps = DEFAULT_CAPS) -> NilCertificate:
    """Certify that the (s+1)-st wedge power of every V-valued k-form vanishes."""
    if k < 1 or s < 0:
        raise ValueError("need k >= 1 and s >= 0")
    t0 = time.perf_counter()
    t = s + 1
    N = k * t if n_gens is None else n_gens
    A = V.parent
    trees, policy = paren_trees(t, bool(A.flags.associative), paren_policy)
    cert = NilCertificate(V, "nil_bound", k, s, N, mode, "certified", trees=[str(x) for x in trees],
                          tree_policy=policy)
    if V.dim == 0:
        cert.detail = {"note": "zero submodule"}
        cert.seconds = time.perf_counter() - t0
        return cert
    f = generic_form(V, k, N, "x", caps)
    for _, tree, verdict, witness in _products([("power", [f] * t)], trees, mode, caps):
        if verdict == "nonzero":
            cert.verdict = "refuted"
            cert.witness = witness
            break
    if cert.certified:
        cert.failure_bound = _bound(mode, t)
    cert.seconds = time.perf_counter() - t0
    return cert


@dataclass
class NilDegree:
    degree: int | None
    certificate: NilCertificate | None
    witness: NilCertificate | None
    exceeded: bool = False

    @property
    def degenerate(self) -> bool:
        return self.certificate is not None and self.certificate.verdict == "degenerate"

    def to_json(self, timing: bool = False) -> dict:
        return {
            "degree": self.degree,
            "exceeded": self.exceeded,
            "certificate": self.certificate.to_json(timing) if self.certificate else None,
            "witness": self.witness.to_json(timing) if self.witness else None,
        }


def nil_degree(V: Submodule, k: int, s_max: int, mode: Mode = EXACT, paren_policy: str = "auto",
               caps: Caps = DEFAULT_CAPS) -> NilDegree:
    """Smallest s <= s_max with the (s+1)-st power vanishing; the refuted
    bound at s-1 is the witness that the s-th power does not."""
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    previous = None
    for s in range(0, s_max + 1):
        cert = nil_bound(V, k, s, mode, paren_policy, caps=caps)
        if cert.certified:
            if s == 0:
                cert.verdict = "degenerate"
                cert.kind = "nil_degree"
                return NilDegree(0, cert, None)
            cert.kind = "nil_degree"
            return NilDegree(s, cert, previous)
        previous = cert
    return NilDegree(None, None, previous, exceeded=True)


def weak_nil(V: Submodule, k: int, s: int, mode: Mode = EXACT, paren_policy: str = "auto",
             caps: Caps = DEFAULT_CAPS) -> NilCertificate:
    """Every product of s+1 graded components of the generic k-form (every
    ordering, every bracketing in the policy) vanishes."""
    if k < 1 or s < 0:
        raise ValueError("need k >= 1 and s >= 0")
    t0 = time.perf_counter()
    A = V.parent
    t = s + 1
    N = k * t
    trees, policy = paren_trees(t, bool(A.flags.associative), paren_policy)
    cert = NilCertificate(V, "weak_nil", k, s, N, mode, "certified", trees=[str(x) for x in trees],
                          tree_policy=policy)
    if V.dim == 0:
        cert.detail = {"note": "zero submodule"}
        cert.seconds = time.perf_counter() - t0
        return cert
    pieces = V.graded_components() if A.graded else {None: V}
    grades = list(pieces)
    comps = {g: generic_form(piece, k, N, "x%d" % n, caps) for n, (g, piece) in enumerate(pieces.items())}

    def glabel(g):
        return None if g is None else g.to_json()

    factor_sets = [(seq, [comps[g] for g in seq]) for seq in itertools.product(grades, repeat=t)]
    matrix = []
    for seq, tree, verdict, witness in _products(factor_sets, trees, mode, caps):
        row = {"grades": [glabel(g) for g in seq], "tree": str(tree), "verdict": verdict}
        if witness:
            row["witness"] = witness
        matrix.append(row)
        if verdict == "nonzero" and cert.certified:
            cert.verdict = "refuted"
            cert.witness = dict(witness, grades=[glabel(g) for g in seq])
    cert.matrix = matrix
    cert.detail = {"components": [glabel(g) for g in grades]}
    if cert.certified:
        cert.failure_bound = _bound(mode, t)
    cert.seconds = time.perf_counter() - t0
    return cert


def solv_verify(V: Submodule, parts, k: int, s: int, weak: bool = False, mode: Mode = EXACT,
                paren_policy: str = "auto", caps: Caps = DEFAULT_CAPS) -> NilCertificate:
    """V is contained in the span of ``parts`` and every part is (weakly)
    (k, s)-nil."""
    t0 = time.perf_counter()
    parts = list(parts)
    for p in parts:
        if p.parent is not V.parent and p.parent != V.parent:
            raise ValueError("part %r lives in a different algebra" % p.name)
    cert = NilCertificate(V, "solv", k, s, k * (s + 1), mode, "certified")
    span = [v for p in parts for v in p.basis]
    for v in V.basis:
        if not linalg.in_span(v, span):
            cert.verdict = "refuted"
            cert.witness = {"missing_direction": [rational_str(c) for c in v]}
            cert.seconds = time.perf_counter() - t0
            return cert
    check = weak_nil if weak else nil_bound
    for p in parts:
        sub = check(p, k, s, mode, paren_policy, caps=caps)
        cert.parts.append(sub)
        if not sub.certified and cert.certified:
            cert.verdict = "refuted"
            cert.witness = {"part": p.name, "part_witness": sub.witness}
    cert.detail = {"weak": weak, "decomposition": [p.name for p in parts]}
    cert.trees = cert.parts[0].trees if cert.parts else []
    cert.tree_policy = cert.parts[0].tree_policy if cert.parts else ""
    if cert.certified:
        cert.failure_bound = _bound(mode, s + 1)
    cert.seconds = time.perf_counter() - t0
    return cert
