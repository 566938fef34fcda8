"""Landau-Ginzburg orbifold genera: the quintic and a nine-variable example.

Ell(q, y) is a sum over pairs of group elements of products of theta
quotients.  The exact backend builds it over a cyclotomic field; each
sector is stored as monomial x binomials x unit series so the y -> 1 limit
can be taken before the sectors are combined.
"""

import time

from ellgenus.lg import assembled, c9_example, ell_at_y_one, ell_genus, ell_genus_numeric, fermat_quintic

Q = fermat_quintic()
t = time.perf_counter()
E = assembled(Q, 1)
print(f"quintic, |G| = {Q.order}, c/3 = {Q.central_charge()}  [{time.perf_counter() - t:.1f}s]")
print("  Ell =", E)
print("  Ell(q, 1) =", ell_at_y_one(Q, 2))
print("  the prefactor placement printed in the general formula gives", ell_at_y_one(Q, 0, convention="display"))
print("  (that form changes when a rotation number is shifted by 1)")

C = c9_example()
t = time.perf_counter()
E = ell_genus(C, 2)
print(f"\nnine variables, |G| = {C.order}, {E.block_count()} denominator blocks  [{time.perf_counter() - t:.1f}s]")
print("  Ell(q, 1) =", E.at_y_one())
z = 0.3 + 0.1j
print(f"  at tau=i, z={z}: series {E.evaluate(1j, z):.10f}")
print(f"                        direct {ell_genus_numeric(C, 1j, z):.10f}")
