"""Genus functions of level 2, 3 and 4 and the invariants that tie them together.

For each level n the genus function f is elliptic up to a character chi on
the group generated by tau/n, the product f(u) f(r - u) is a constant c(r),
and the derivative at a zero r equals -c(r).
"""

from fractions import Fraction

from ellgenus.elliptic import (
    DivisionPoint,
    ExactContext,
    build_genus_function,
    build_level2,
    build_special,
    character_of,
    level2_data,
    modulus,
)

for n in (2, 3, 4):
    f = build_genus_function(n, ExactContext(5, n))
    g = DivisionPoint(0, Fraction(1, n))
    chi = character_of(f, g)
    r = f.zero_reps[0]
    c = modulus(f, r)
    print(f"level {n}: chi(tau/{n}) = {chi}")
    print(f"  c(r)     = {c}")
    print(f"  f'(r) + c(r) vanishes: {(f.expand(r, 2)[1] + c).is_zero()}")
    s = build_special(n, ExactContext(5, n))
    print(f"  special function modulus at tau/{n}: {modulus(s, g)}")

f = build_level2(ExactContext(6, 2))
data = level2_data(f)
print("\nlevel 2 differential equation (f')^2 = f^4 - 2 delta f^2 + eps")
print("  delta =", data.delta)
print("  eps   =", data.epsilon)
print("  c(1/2)^2 == eps:", (data.c_half * data.c_half - data.epsilon).is_zero())
print("  expansion at 0:", f.expand(DivisionPoint(0, 0), 6))
