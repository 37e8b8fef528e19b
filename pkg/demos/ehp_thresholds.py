"""Per-n vanishing pattern of the Hilbert-Palatini form for iso(3), with
rotations as the frame part and translations as the connection part."""

from nilforms import zoo
from nilforms.ehp import GradePremise, Premise, theorem_a_report
from nilforms.manifest import build_split

A = zoo.classical("iso", n=3)
split = build_split(A, "rotations/translations")
premise = Premise("G1", (GradePremise("*", 1, 2),))
rep = theorem_a_report(A, split, premise, range(2, 8))

h, t = rep.thresholds
print("premise (k, s) = (%d, %d); homogeneous from n = %d, trivial from n = %d" % (rep.k, rep.s, h, t))
print(" n  e^n = 0  alpha = 0")
for r in rep.rows:
    print("%2d  %-7s  %s" % (r.n, r.inhomogeneous_vanishes, r.alpha_vanishes))
