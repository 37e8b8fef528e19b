"""Nilpotency degrees of 1-forms for a few builtin algebras, bracket and
matrix product side by side."""

from nilforms import zoo
from nilforms.algebra import Submodule
from nilforms.nil import nil_degree

cases = [
    ("so(3), bracket", Submodule.full(zoo.classical("so", n=3))),
    ("u(2), bracket", Submodule.full(zoo.classical("u", n=2))),
    ("heisenberg(1)", Submodule.full(zoo.classical("heisenberg", n=1))),
    ("quaternions", Submodule.full(zoo.quaternions())),
    ("antisymmetric 3x3, matrix product",
     Submodule(zoo.matrix_algebra(3), zoo.antisymmetric_generators(3))),
]

for name, V in cases:
    d = nil_degree(V, 1, 5)
    print("%-36s degree %s" % (name, "> 5" if d.exceeded else d.degree))
