"""Evaluating the nine-variable LG genus at the half periods.

Specializing z to a half period is one candidate for matching the orbifold
genus with the level-2 genus of the complete intersection from demo 02,
which is zero because that threefold has odd dimension.

At every half period a few sectors have a theta denominator on the lattice,
so the sum is not evaluated pointwise.  Instead the Laurent coefficients of
the whole sum are measured on a small circle.  The principal part turns out
to vanish (the singularities are removable), and the value there is zero as
well, for both models and for generic tau.
"""

from ellgenus.lg import c9_example, fermat_quintic, half_period_report

for name, model in (("nine variables", c9_example()), ("quintic", fermat_quintic())):
    for tau in (1j, 0.1 + 1.3j):
        print(f"{name}, tau = {tau}")
        for label, entry in half_period_report(model, tau).items():
            note = f"  ({entry['singular_sectors']} singular sectors)" if "singular_sectors" in entry else ""
            if "value" in entry:
                print(f"  z = {label:10s} {abs(entry['value']):.1e}{note}")
            else:
                print(f"  z = {label:10s} pole, principal part {entry['principal_part']}")
