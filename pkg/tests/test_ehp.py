from fractions import Fraction

import pytest

from nilforms import zoo
from nilforms.algebra import Submodule, direct_sum, module_split, pushforward_product, with_grading
from nilforms.ehp import (GradePremise, HPParams, Premise, SoundnessError, curvature, ep_equation_forms,
                          generic_connection, hp_form, hp_parts, theorem_a_report, torsion)
from nilforms.forms import AForm, FormError, generic_form
from nilforms.manifest import build_split
from nilforms.nil import modular

so3 = zoo.classical("so", n=3)
iso3 = zoo.classical("iso", n=3)


def uniform(k, s, condition="G1"):
    return Premise(condition, (GradePremise("*", k, s),))


def test_curvature_examples():
    V = Submodule.full(so3)
    d_omega = generic_form(V, 2, 3, "dw")
    zero = AForm.zero(so3, 3)
    assert curvature(zero, d_omega) == d_omega
    C = zoo.complexes()
    w = generic_form(Submodule.full(C), 1, 3, "w")
    dw = generic_form(Submodule.full(C), 2, 3, "dw")
    assert curvature(w, dw) == dw
    omega = generic_form(V, 1, 3, "w")
    Om = curvature(omega, d_omega)
    # generic 2-form terms plus quadratic terms from the bracket
    assert Om.degrees() == {2}
    assert Om.n_poly_terms() > d_omega.n_poly_terms()
    with pytest.raises(FormError):
        curvature(d_omega, d_omega)


def test_torsion_examples():
    B = iso3
    T = Submodule.of_labels(B, ["t0", "t1", "t2"])
    R = Submodule.of_labels(B, ["L01", "L02", "L12"])
    e = generic_form(T, 1, 3, "e")
    de = generic_form(T, 2, 3, "de")
    omega = generic_form(R, 1, 3, "w")
    assert torsion(e, de, AForm.zero(B, 3)) == de
    assert not torsion(e, de, omega, T, R).is_zero()
    with pytest.raises(FormError):
        torsion(e, de, omega, R, T)
    # pushforward product that kills translations: omega ∧ e = 0
    pi = [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
    section = [[0, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
    E = pushforward_product(6, so3, pi, section)
    TE, RE = Submodule(E, [E.basis_vector(i) for i in range(3)]), Submodule(E, [E.basis_vector(i) for i in range(3, 6)])
    e, de, omega = generic_form(TE, 1, 3, "e"), generic_form(TE, 2, 3, "de"), generic_form(RE, 1, 3, "w")
    assert omega.wedge(e).is_zero()
    assert torsion(e, de, omega) == de


def test_hp_form_small_cases():
    sp = build_split(iso3, "rotations/translations")
    parts = hp_parts(iso3, sp, HPParams(2, Lambda=3))
    # n = 2: alpha = Omega + Lambda e∧e
    assert parts.coefficient == 3
    assert parts.alpha == parts.curvature + parts.inhomogeneous.scale(3)
    flat = hp_form(iso3, sp, HPParams(3, Lambda=0))
    assert flat == hp_parts(iso3, sp, HPParams(3, Lambda=0)).homogeneous
    with pytest.raises(ValueError):
        HPParams(1)


def test_abelian_a0_kills_inhomogeneous_term():
    sp = build_split(iso3, "translations/rotations")
    parts = hp_parts(iso3, sp, HPParams(4, Lambda=5))
    assert parts.inhomogeneous.is_zero()


def test_ep_equation_forms():
    sp = build_split(iso3, "translations/rotations")
    first, second = ep_equation_forms(iso3, sp, HPParams(4, Lambda=0))
    conn = generic_connection(sp, 6)
    assert first == conn.e.wedge(curvature(conn.omega, conn.d_omega))
    # abelian translations: the cubic term is zero even for Lambda != 0
    first7, _ = ep_equation_forms(iso3, sp, HPParams(4, Lambda=7))
    assert first7 == first
    # e ∧ Θ lands in the abelian ideal of translations
    assert second.is_zero()
    _, second = ep_equation_forms(iso3, build_split(iso3, "rotations/translations"), HPParams(4))
    assert not second.is_zero()


def _cases():
    graded_iso = with_grading(iso3, [1, 1, 1, 0, 0, 0], grading_rank=1)
    S = direct_sum(so3, so3)
    return [
        ("so3", so3, "all", uniform(1, 2)),
        ("u2", zoo.classical("u", n=2), "all", uniform(1, 2)),
        ("abelian", zoo.classical("abelian", k=2), "all", uniform(1, 1)),
        ("iso3 rot", iso3, "rotations/translations", uniform(1, 2)),
        ("iso3 trans", iso3, "translations/rotations", uniform(1, 1)),
        ("graded iso3", graded_iso, "translations/rotations", uniform(1, 1)),
        ("super translation", zoo.classical("super_translation", k=1, l=2), "all", uniform(1, 1)),
        ("so3+so3", S, "all", uniform(1, 2)),
    ]


@pytest.mark.parametrize("name,A,split,premise", _cases(), ids=[c[0] for c in _cases()])
def test_threshold_soundness(name, A, split, premise):
    sp = build_split(A, split)
    rep = theorem_a_report(A, sp, premise, range(2, 8))
    h, t = rep.thresholds
    assert rep.verdict == "consistent" and rep.core["vanishes"]
    for r in rep.rows:
        if r.n >= h:
            assert r.inhomogeneous_vanishes
        if r.n >= t:
            assert r.alpha_vanishes


def test_below_threshold_witnesses():
    # (1, 2) class: rotations carry the connection, translations the frame
    sp = build_split(iso3, "rotations/translations")
    rep = theorem_a_report(iso3, sp, uniform(1, 2), [2, 3, 4, 5])
    assert [r.alpha_vanishes for r in rep.rows] == [False, False, False, True]
    assert rep.row(3).witness is not None
    # (1, 1) class: the translations frame
    sp = build_split(iso3, "translations/rotations")
    rep = theorem_a_report(iso3, sp, uniform(1, 1), [2, 3, 4])
    assert [r.alpha_vanishes for r in rep.rows] == [False, False, True]
    assert rep.row(2).witness is not None


def test_modular_report_agrees_with_exact():
    sp = build_split(iso3, "rotations/translations")
    ex = theorem_a_report(iso3, sp, uniform(1, 2), [2, 3, 4, 5])
    mo = theorem_a_report(iso3, sp, uniform(1, 2), [2, 3, 4, 5], mode=modular(trials=20, seed=1))
    assert [(r.inhomogeneous_vanishes, r.alpha_vanishes) for r in ex.rows] == \
        [(r.inhomogeneous_vanishes, r.alpha_vanishes) for r in mo.rows]


def test_shift_invariance():
    from nilforms.algebra import shift_grading
    H = zoo.classical("heisenberg", n=1)
    shifted = shift_grading(H, 1)
    a = theorem_a_report(H, build_split(H, "all"), uniform(1, 2), range(2, 7), shift=1)
    b = theorem_a_report(shifted, build_split(shifted, "all"), uniform(1, 2), range(2, 7))
    assert a.to_json() == b.to_json()
    with pytest.raises(ValueError):
        theorem_a_report(so3, build_split(so3, "all"), uniform(1, 2), [2], shift=1)


def test_lambda_independence_above_threshold():
    sp = build_split(iso3, "rotations/translations")
    h = 4
    for n in (h, h + 1):
        a = hp_form(iso3, sp, HPParams(n, Lambda=0))
        b = hp_form(iso3, sp, HPParams(n, Lambda=7))
        assert a.to_json() == b.to_json()


def test_premise_refuted_skips_conclusions():
    sp = build_split(so3, "all")
    rep = theorem_a_report(so3, sp, uniform(1, 1), [2, 3])
    assert rep.verdict == "premise_refuted" and rep.rows == [] and rep.premise_failure


def test_split_into_lines_is_flagged_as_soundness_error():
    # each line of M2 is (1,1)-nil and the lines span M2, yet ∧^3 e != 0:
    # the engine refuses to report consistency
    M = zoo.matrix_algebra(2)
    lines = tuple((M.basis_vector(i),) for i in range(4))
    premise = Premise("G1", (GradePremise("*", 1, 1, lines),))
    with pytest.raises(SoundnessError) as info:
        theorem_a_report(M, build_split(M, "all"), premise, [2, 3, 4])
    assert info.value.report.core["vanishes"] is False


def test_workers_give_identical_reports():
    sp = build_split(iso3, "rotations/translations")
    a = theorem_a_report(iso3, sp, uniform(1, 2), range(2, 7))
    b = theorem_a_report(iso3, sp, uniform(1, 2), range(2, 7), workers=3)
    assert a.to_json() == b.to_json()
