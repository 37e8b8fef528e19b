"""Flags along the Cayley-Dickson tower and a sedenion zero divisor."""

from nilforms import zoo

for l in range(5):
    A = zoo.cd_tower(l)
    flags = [n for n in ("associative", "commutative", "alternative") if getattr(A.flags, n)]
    print("CD%d  dim %2d  %s" % (l, A.dim, ", ".join(flags) or "-"))

S = zoo.sedenions()
x, y = zoo.find_zero_divisor(S)


def show(v):
    return " + ".join("%s %s" % (c, S.labels[i]) for i, c in enumerate(v) if c)


print("(%s) * (%s) = 0" % (show(x), show(y)))
