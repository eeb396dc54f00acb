"""Spin models and their refinements, from the ground up.

A spin model is a symmetric complex matrix W+ without zeros together with a
loop value d = +-sqrt(n), such that every quotient vector
Y_ab(x) = W+(x,a) / W+(x,b) is an eigenvector of W+ with eigenvalue
d W-(a,b), where W- is the entrywise reciprocal of W+.  The matrices having
all the Y_ab as eigenvectors form a commutative algebra, and reading the
eigenvalues off gives the duality map psi with psi(psi(A)) = n A^T.

A refinement adds a second symmetric matrix V+ from that algebra (with
nonzero diagonal moduli); its partner is V- = psi(V+) / d.  Axis crossings
of a symmetric union diagram will be weighted by V+- instead of W+-.
"""

import numpy as np

from refspin import algebra, models

# ----------------------------------------------------------------------
# The three-state family: W+ = (-xi^-3) I + xi (J - I), d = -xi^2 - xi^-2.
# ----------------------------------------------------------------------
potts = models.make_potts(3, d_sign=-1, xi_choice=0)
print("three-state model")
print("  d       =", potts.d)
print("  alpha_w =", potts.alpha_w)
print("  W+ =\n", np.round(potts.w_plus, 4))

# The axioms are re-checkable by hand: constant row sums...
print("  row sums / d:", np.round(potts.w_plus.sum(axis=1) / potts.d, 6))

# ...and the duality map exchanges I <-> J and W+ <-> d W-.
eye, ones = np.eye(3), np.ones((3, 3))
print("  psi(I) == J:   ", np.allclose(algebra.psi_image(eye, potts), ones))
print("  psi(J) == n I: ", np.allclose(algebra.psi_image(ones, potts), 3 * eye))
print("  psi(W+) == dW-:",
      np.allclose(algebra.psi_image(potts.w_plus, potts), potts.d * potts.w_minus))

# ----------------------------------------------------------------------
# The five-state (pentagonal) model: I + w A1 + w^4 A2 with w = e^{2 pi i/5}.
# A1 and A2 are the circulant adjacency matrices at offsets 1 and 2.
# ----------------------------------------------------------------------
pent = models.make_pentagonal()
print("\nfive-state model: d =", pent.d, " alpha_w =", pent.alpha_w)
print("  A1, A2 in the eigenvector algebra:",
      algebra.is_in_nomura(models.PENT_A1, pent),
      algebra.is_in_nomura(models.PENT_A2, pent))

# ----------------------------------------------------------------------
# Refinements.  a I + b (J - I) refines the three-state model whenever
# a (a + 2b) != 0; a I + b A1 + c A2 refines the five-state model whenever
# a (a + 2b + 2c) != 0.  Type II means V+ o V- = J entrywise.
# ----------------------------------------------------------------------
fam = models.make_potts_family(2.0, 0.3)
print("\nrefinement a I + b (J - I), (a, b) = (2, 0.3)")
print("  alpha_v+ =", fam.alpha_vp, " alpha_v- =", fam.alpha_vm)
print("  type II: ", fam.type_ii)

# Every model admits type II refinements with V+ of the same shape as a
# three-state weight matrix; there are four, one per root xi.
for k in range(4):
    ref = models.make_potts_refinement(pent, k)
    print(f"  type-II refinement #{k}: alpha_v+ * alpha_v- =",
          np.round(ref.alpha_vp * ref.alpha_vm, 12))

# Translation invariance (all four matrices circulant) is what the gluing
# formula in demo 04 needs; the bundled families all have it.
print("\ntranslation invariant:",
      models.is_translation_invariant(fam),
      models.is_translation_invariant(models.make_pentagonal_family(1, 2, -2)))
