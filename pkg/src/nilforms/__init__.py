"""Exact certification of nilpotency for algebra-valued forms, and the
vanishing thresholds of Hilbert-Palatini forms built from them."""

__version__ = "0.1.0"

from .ring import DEFAULT_PRIME, MultiPoly, VarId, make_var, mod_eval, poly_arith  # noqa: E402
from .algebra import (Algebra, AlgebraMorphism, Grade, ModuleSplit, Submodule, commutator_algebra,  # noqa: E402
                      direct_sum, make_algebra, module_split, morphism_check, pushforward_product,
                      semidirect, shift_grading)
from .forms import AForm, Caps, ModForm, ParenTree, generic_form, paren_trees, probe, wedge, wedge_power  # noqa: E402
from .nil import EXACT, Mode, NilCertificate, modular, nil_bound, nil_degree, solv_verify, weak_nil  # noqa: E402
from .ehp import (EHPReport, GradePremise, HPParams, Premise, SoundnessError, curvature,  # noqa: E402
                  ep_equation_forms, hp_form, theorem_a_report, torsion)
from . import zoo  # noqa: E402

__all__ = [
    "DEFAULT_PRIME", "MultiPoly", "VarId", "make_var", "mod_eval", "poly_arith",
    "Algebra", "AlgebraMorphism", "Grade", "ModuleSplit", "Submodule", "commutator_algebra",
    "direct_sum", "make_algebra", "module_split", "morphism_check", "pushforward_product",
    "semidirect", "shift_grading",
    "AForm", "Caps", "ModForm", "ParenTree", "generic_form", "paren_trees", "probe", "wedge",
    "wedge_power",
    "EXACT", "Mode", "NilCertificate", "modular", "nil_bound", "nil_degree", "solv_verify", "weak_nil",
    "EHPReport", "GradePremise", "HPParams", "Premise", "SoundnessError", "curvature",
    "ep_equation_forms", "hp_form", "theorem_a_report", "torsion",
    "zoo", "__version__",
]
