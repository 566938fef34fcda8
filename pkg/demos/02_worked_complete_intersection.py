"""A threefold in CP^3 x CP^2 x CP^1 cut out by three equations.

The degree matrix diagonalizes to diag(1, 1, 12), so the relevant torsion
subgroup is cyclic of order 12 and generated by v = (1/3, -1/6, 1/12).  The
division-point sum runs over 144 cosets; terms where a point lands on a
pole of the genus function have zero local residue and are skipped.
"""

from fractions import Fraction

from ellgenus.elliptic import DivisionPoint
from ellgenus.genus import CIModel, GenusSpec, ci_example_level2, division_sum_genus, residue_genus
from ellgenus.intlat import coset_reps, cy_condition, snf, solve_division

M = [[3, 0, 0], [1, 2, 0], [0, 1, 2]]
dims = (4, 3, 2)

res = snf(M)
print("Smith form diagonal:", res.diagonal)
print("A =", res.A)
print("B =", res.B)
half = DivisionPoint(Fraction(1, 2), 0)
print("solution of [M] s = (1/2, 1/2, 1/2):", [str(p.x) for p in solve_division(M, [half] * 3)])
print("column sums match dimensions mod 2:", cy_condition(M, dims, 2))
print("coset representatives:", len(coset_reps(M, 2)))

X = CIModel(dims, M)
spec = GenusSpec(order=2)
info = {}
print("\nresidue route     ", residue_genus(X, spec))
print("division-point sum", division_sum_genus(X, spec, info))
print("explicit 144-term ", ci_example_level2(spec))
print(f"skipped {len(info['skipped'])} terms sitting on poles")

num = GenusSpec(backend="numeric", tau=0.2 + 1.1j)
print("\nat tau = 0.2+1.1i:", residue_genus(X, num), ci_example_level2(num))
print("odd complex dimension: the level-2 genus vanishes identically.")
