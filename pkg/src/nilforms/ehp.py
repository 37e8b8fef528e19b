"""Hilbert-Palatini forms over generic connection data and the two
vanishing thresholds for EHP functionals.

A connection is a pair (e, omega) of 1-forms valued in A0 and A1 of a split
A = A0 ⊕ A1.  Exterior derivatives are modeled as independent generic
2-forms; nothing here ever differentiates.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .algebra import Algebra, Grade, ModuleSplit, Submodule, as_grade, shift_grading
from .forms import (DEFAULT_CAPS, AForm, Caps, FormError, ParenTree, evaluate_tree, generic_form,
                    graded_generic_form, random_assignment)
from .nil import EXACT, Mode, solv_verify
from .ring import as_rational, rational_str


class SoundnessError(AssertionError):
    """A certified premise disagrees with a computed conclusion.

    The engine treats this as a fault, never as a finding; ``report`` holds
    everything computed up to the mismatch.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class HPParams:
    n: int
    Lambda: Fraction = Fraction(1)
    paren: str = "right"  # right | left

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError("the Hilbert-Palatini form needs n >= 2, got %r" % (self.n,))
        if self.paren not in ("right", "left"):
            raise ValueError("paren must be 'right' or 'left'")
        object.__setattr__(self, "Lambda", as_rational(self.Lambda))

    @property
    def n_gens(self) -> int:
        return self.n + 2


def _power(f, t: int, paren: str, caps: Caps = DEFAULT_CAPS):
    if t == 0:
        return None
    tree = ParenTree.right_nested(t) if paren == "right" else ParenTree.left_nested(t)
    return evaluate_tree(tree, [f] * t, {}, caps)


def _require_degree(f, degree: int, what: str, V: Submodule | None = None):
    if not f.is_zero() and f.degrees() != {degree}:
        raise FormError("%s must be a %d-form, got degrees %s" % (what, degree, sorted(f.degrees())))
    if V is not None and isinstance(f, AForm) and not f.values_in(V):
        raise FormError("%s is not valued in %s" % (what, V.name or "the given submodule"))


def curvature(omega, d_omega, A1: Submodule | None = None):
    """Omega = d omega + omega ∧ omega."""
    _require_degree(omega, 1, "omega", A1)
    _require_degree(d_omega, 2, "d_omega", A1)
    return d_omega + omega.wedge(omega)


def torsion(e, d_e, omega, A0: Submodule | None = None, A1: Submodule | None = None):
    """Theta = d e + omega ∧ e."""
    _require_degree(e, 1, "e", A0)
    _require_degree(d_e, 2, "d_e", A0)
    _require_degree(omega, 1, "omega", A1)
    return d_e + omega.wedge(e)


@dataclass
class Connection:
    e: object
    omega: object
    d_omega: object
    d_e: object

    def specialize(self, point, prime):
        return Connection(*(f.specialize(point, prime) for f in (self.e, self.omega, self.d_omega, self.d_e)))

    def variables(self):
        return sorted({v for f in (self.e, self.omega, self.d_omega, self.d_e) for v in f.variables()})


def generic_connection(split: ModuleSplit, n_gens: int, grading_use: str = "ungraded",
                       caps: Caps = DEFAULT_CAPS) -> Connection:
    """Generic e (A0-valued), omega (A1-valued) and fresh generic d_omega, d_e."""
    if grading_use == "graded":
        e = graded_generic_form(split.part0, 1, n_gens, "e", caps=caps)
    elif grading_use == "ungraded":
        e = generic_form(split.part0, 1, n_gens, "e", caps)
    else:
        raise ValueError("grading_use must be 'graded' or 'ungraded'")
    omega = generic_form(split.part1, 1, n_gens, "w", caps)
    d_omega = generic_form(split.part1, 2, n_gens, "dw", caps)
    d_e = generic_form(split.part0, 2, n_gens, "de", caps)
    return Connection(e, omega, d_omega, d_e)


@dataclass
class HPParts:
    curvature: object
    homogeneous: object  # ∧^{n-2} e ∧ Omega
    inhomogeneous: object  # ∧^n e
    coefficient: Fraction  # Lambda / (n-1)!

    @property
    def alpha(self):
        if not self.coefficient:
            return self.homogeneous
        return self.homogeneous + self.inhomogeneous.scale(self.coefficient)


def _hp_parts(conn: Connection, params: HPParams, caps: Caps = DEFAULT_CAPS) -> HPParts:
    omega_2 = conn.d_omega + conn.omega.wedge(conn.omega, caps)
    n = params.n
    e_pow = _power(conn.e, n - 2, params.paren, caps)
    hom = omega_2 if e_pow is None else e_pow.wedge(omega_2, caps)
    inhom = _power(conn.e, n, params.paren, caps)
    return HPParts(omega_2, hom, inhom, params.Lambda / math.factorial(n - 1))


def hp_parts(A: Algebra, split: ModuleSplit, params: HPParams, grading_use: str = "ungraded",
             caps: Caps = DEFAULT_CAPS) -> HPParts:
    _check_split(A, split)
    conn = generic_connection(split, params.n_gens, grading_use, caps)
    return _hp_parts(conn, params, caps)


def hp_form(A: Algebra, split: ModuleSplit, params: HPParams, grading_use: str = "ungraded",
            caps: Caps = DEFAULT_CAPS) -> AForm:
    """alpha = ∧^{n-2} e ∧ Omega + Lambda/(n-1)! ∧^n e on n+2 generators."""
    return hp_parts(A, split, params, grading_use, caps).alpha


def ep_equation_forms(A: Algebra, split: ModuleSplit, params: HPParams,
                      caps: Caps = DEFAULT_CAPS) -> tuple:
    """(e ∧ Omega + Lambda/(n-1)! ∧^3 e, e ∧ Theta) as inspectable forms."""
    _check_split(A, split)
    conn = generic_connection(split, params.n_gens, "ungraded", caps)
    omega_2 = curvature(conn.omega, conn.d_omega)
    theta = torsion(conn.e, conn.d_e, conn.omega)
    first = conn.e.wedge(omega_2)
    c = params.Lambda / math.factorial(params.n - 1)
    if c:
        first = first + _power(conn.e, 3, params.paren, caps).scale(c)
    return first, conn.e.wedge(theta)


def _check_split(A: Algebra, split: ModuleSplit):
    if split.parent != A:
        raise ValueError("split belongs to %s, not %s" % (split.parent.name, A.name))


# ---------------------------------------------------------------------------
# premises


@dataclass(frozen=True)
class GradePremise:
    """Claim that one graded component is weak (k, s)-solvable via ``parts``
    (generator lists in parent coordinates; None means the component itself).
    A single premise with grade "*" applies to every component."""
    grade: object
    k: int
    s: int
    parts: tuple | None = None
    weak: bool = True

    def to_json(self):
        g = self.grade
        return {"grade": g.to_json() if isinstance(g, Grade) else g, "k": self.k, "s": self.s,
                "weak": self.weak,
                "parts": None if self.parts is None else
                [[[rational_str(as_rational(c)) for c in v] for v in p] for p in self.parts]}


@dataclass(frozen=True)
class Premise:
    condition: str  # G1 | G2
    grades: tuple

    def __post_init__(self):
        if self.condition not in ("G1", "G2"):
            raise ValueError("condition must be G1 or G2")
        object.__setattr__(self, "grades", tuple(self.grades))
        if not self.grades:
            raise ValueError("premise lists no graded components")

    @property
    def k(self) -> int:
        return min(g.k for g in self.grades)

    @property
    def s(self) -> int:
        return min(g.s for g in self.grades)


def uniform_premise(A: Algebra, split: ModuleSplit, condition: str, k: int, s: int,
                    weak: bool = True) -> Premise:
    """Same (k, s) on every graded component, each its own single part."""
    target = split.part0 if condition == "G1" else Submodule.full(A)
    return Premise(condition, tuple(GradePremise(g, k, s, None, weak) for g in target.graded_components()))


@dataclass
class NRow:
    n: int
    inhomogeneous_vanishes: bool
    homogeneous_vanishes: bool
    alpha_vanishes: bool
    at_homogenization: bool
    at_triviality: bool
    witness: dict | None = None

    def to_json(self):
        out = {
            "n": self.n,
            "inhomogeneous_vanishes": self.inhomogeneous_vanishes,
            "homogeneous_vanishes": self.homogeneous_vanishes,
            "alpha_vanishes": self.alpha_vanishes,
            "n_ge_k_s_1": self.at_homogenization,
            "n_ge_k_s_3": self.at_triviality,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class EHPReport:
    algebra: Algebra
    split: ModuleSplit
    premise: Premise
    params: HPParams
    mode: Mode
    verdict: str  # consistent | premise_refuted
    certificates: list = field(default_factory=list)
    premise_failure: dict | None = None
    core: dict | None = None
    rows: list = field(default_factory=list)
    seconds: float | None = None

    @property
    def k(self):
        return self.premise.k

    @property
    def s(self):
        return self.premise.s

    @property
    def thresholds(self) -> tuple:
        return self.k + self.s + 1, self.k + self.s + 3

    def row(self, n: int) -> NRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)

    def to_json(self, timing: bool = False) -> dict:
        A = self.algebra
        out = {
            "engine": "nilforms %s" % __version__,
            "algebra": A.name,
            "grades": [g.to_json() for g in A.grades] if A.graded else None,
            "split": self.split.to_json(),
            "premise": {
                "condition": self.premise.condition,
                "components": [g.to_json() for g in self.premise.grades],
                "certificates": [c.to_json(timing) for c in self.certificates],
                "k": self.k,
                "s": self.s,
                "failure": self.premise_failure,
            },
            "thresholds": {"homogenization": self.thresholds[0], "triviality": self.thresholds[1]},
            "Lambda": rational_str(self.params.Lambda),
            "paren": self.params.paren,
            "mode": self.mode.to_json(),
            "verdict": self.verdict,
            "core": self.core,
            "rows": [r.to_json() for r in self.rows],
        }
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


def _premise_components(A: Algebra, split: ModuleSplit, premise: Premise) -> dict:
    target = split.part0 if premise.condition == "G1" else Submodule.full(A)
    comps = target.graded_components()
    d, e = A.grade_rank if A.graded else (0, 0)
    if len(premise.grades) == 1 and premise.grades[0].grade == "*":
        return {g: (comp, premise.grades[0]) for g, comp in comps.items()}
    claimed = {}
    for gp in premise.grades:
        g = None if gp.grade is None or not A.graded else as_grade(gp.grade, d, e)
        if g in claimed:
            raise ValueError("grade %s listed twice in the premise" % g)
        claimed[g] = gp
    missing = [g for g in comps if g not in claimed]
    extra = [g for g in claimed if g not in comps]
    if missing or extra:
        raise ValueError("premise grades do not match the components of %s: missing %s, extra %s"
                         % ("A0" if premise.condition == "G1" else A.name,
                            [str(g) for g in missing], [str(g) for g in extra]))
    return {g: (comps[g], claimed[g]) for g in comps}


def _verify_premise(A, split, premise, mode, caps):
    certs = []
    failure = None
    if premise.condition == "G1" and not split.part0_subalgebra:
        failure = {"reason": "A0 is not a subalgebra", "witness": list(split.part0_subalgebra.witness)}
    for g, (comp, gp) in _premise_components(A, split, premise).items():
        if gp.parts is None:
            parts = [comp]
        else:
            parts = [Submodule(A, p, "%s.part%d" % (comp.name, i)) for i, p in enumerate(gp.parts)]
        cert = solv_verify(comp, parts, gp.k, gp.s, gp.weak, mode, caps=caps)
        certs.append(cert)
        if not cert.certified and failure is None:
            failure = {"reason": "component %s is not %s(%d,%d)-solvable"
                       % (comp.name, "weak " if gp.weak else "", gp.k, gp.s), "witness": cert.witness}
    return certs, failure


def _form_witness(f, label):
    (mu, k), c = min(f.terms.items()) if not isinstance(f, AForm) else f.first_term()
    out = {"part": label, "monomial": list(mu), "basis": f.algebra.labels[k]}
    if isinstance(f, AForm):
        out["coeff_terms"] = len(c)
    else:
        out["value"] = c
    return out


def _evaluate(conn: Connection, mode: Mode, seed_key: int, compute):
    """Run ``compute`` on the generic connection (exact) or on specialized
    connections (modular); returns the list of (name, form-or-None) of the
    first nonzero instance per name."""
    if mode.exact:
        return compute(conn)
    rng = random.Random(mode.seed * 1_000_003 + seed_key)
    variables = conn.variables()
    merged = None
    for _ in range(mode.trials):
        point = random_assignment(variables, mode.prime, rng)
        got = compute(conn.specialize(point, mode.prime))
        if merged is None:
            merged = dict(got)
        else:
            for name, f in got.items():
                if merged[name].is_zero() and not f.is_zero():
                    merged[name] = f
    return merged


def _row(A, split, grading_use, n, params, mode, caps, thresholds) -> NRow:
    p = HPParams(n, params.Lambda, params.paren)
    conn = generic_connection(split, p.n_gens, grading_use, caps)

    def compute(c):
        parts = _hp_parts(c, p, caps)
        return {"inhomogeneous": parts.inhomogeneous, "homogeneous": parts.homogeneous, "alpha": parts.alpha}

    got = _evaluate(conn, mode, n, compute)
    witness = None
    for name in ("alpha", "inhomogeneous", "homogeneous"):
        if not got[name].is_zero():
            witness = _form_witness(got[name], name)
            break
    h, t = thresholds
    return NRow(n, got["inhomogeneous"].is_zero(), got["homogeneous"].is_zero(), got["alpha"].is_zero(),
                n >= h, n >= t, witness)


def theorem_a_report(A: Algebra, split: ModuleSplit, premise: Premise, n_range, shift=None,
                     mode: Mode = EXACT, params: HPParams | None = None, caps: Caps = DEFAULT_CAPS,
                     workers: int = 1) -> EHPReport:
    """Verify the premise, the core identity ∧^{k+s+1} e = 0, and the per-n
    vanishing pattern of the Hilbert-Palatini form.

    With a shift l the whole computation runs on A[-l] (premise grades refer
    to A[-l]).  Raises SoundnessError when a certified premise is followed
    by a nonvanishing conclusion.
    """
    t0 = time.perf_counter()
    _check_split(A, split)
    if shift is not None:
        l = as_grade(shift, *A.grade_rank) if A.graded else None
        if l is None:
            raise ValueError("a shift needs a graded algebra")
        if not l.is_zero():
            A = shift_grading(A, l)
            split = split.rebase(A)
    params = params or HPParams(2)
    n_range = sorted(set(n_range))
    if not n_range or n_range[0] < 2:
        raise ValueError("n_range must contain integers >= 2")
    grading_use = "graded" if A.graded else "ungraded"
    certs, failure = _verify_premise(A, split, premise, mode, caps)
    report = EHPReport(A, split, premise, params, mode, "consistent", certs, failure)
    if failure is not None:
        report.verdict = "premise_refuted"
        report.seconds = time.perf_counter() - t0
        return report

    h, t = report.thresholds
    core_conn = generic_connection(split, h, grading_use, caps)
    core = _evaluate(core_conn, mode, 0, lambda c: {"core": _power(c.e, h, params.paren, caps)})["core"]
    report.core = {"power": h, "generators": h, "vanishes": core.is_zero()}
    if not core.is_zero():
        report.core["witness"] = _form_witness(core, "core")
        report.seconds = time.perf_counter() - t0
        raise SoundnessError("premise certified at (k,s) = (%d,%d) but ∧^%d e != 0 on %s"
                             % (report.k, report.s, h, A.name), report)

    def one(n):
        return _row(A, split, grading_use, n, params, mode, caps, (h, t))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            report.rows = list(pool.map(one, n_range))
    else:
        report.rows = [one(n) for n in n_range]
    report.seconds = time.perf_counter() - t0
    for r in report.rows:
        if r.at_homogenization and not r.inhomogeneous_vanishes:
            raise SoundnessError("n = %d >= %d but ∧^n e != 0" % (r.n, h), report)
        if r.at_triviality and not r.alpha_vanishes:
            raise SoundnessError("n = %d >= %d but alpha != 0" % (r.n, t), report)
    return report
