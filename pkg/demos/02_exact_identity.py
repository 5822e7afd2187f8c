#!/usr/bin/env python3
"""The exact determinant identity, checked in rational arithmetic.

The combination z2*dP/dzbar1 - z1*dP/dzbar2 collapses to a closed quartic in
the moduli |z1|^2, |z2|^2 that vanishes only at the origin; this is the whole
reason the graph of P is totally real on the unit sphere.  Coefficients are
Gaussian rationals, so the check is equality of canonical forms, not a
tolerance comparison.
"""

from fractions import Fraction

from crsphere import WPolynomial, make_ar_polynomial, verify_ar_identity

P = make_ar_polynomial()
print("P                 =", P)
print("dP/dzbar1         =", P.d_zbar(0))
print("dP/dzbar2         =", P.d_zbar(1))

result = verify_ar_identity()
print("\nlhs  = z2*dP/dzbar1 - z1*dP/dzbar2")
print("     =", result.lhs)
print("rhs  = |z2|^2(|z2|^2 - 2|z1|^2) - i|z1|^2(|z1|^2 - 2|z2|^2), expanded")
print("     =", result.rhs)
print("residual =", result.residual)
print("identity holds exactly:", result.holds)

print("\nvalues on the axes (the closed form makes these immediate):")
print("lhs(1, 0) =", result.lhs.eval([1, 0]), "  lhs(0, 1) =", result.lhs.eval([0, 1]))

print("\n=== fault injection: the check is not vacuous ===")
bump = WPolynomial.monomial(2, (0, 2), (0, 2), Fraction(1, 10**6))
broken = verify_ar_identity(rhs_perturbation=bump)
print(f"after nudging one coefficient by 1e-6: holds={broken.holds}, "
      f"residual = {broken.residual}")
