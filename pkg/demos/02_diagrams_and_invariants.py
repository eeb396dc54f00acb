"""From a diagram code to a number that tells two diagrams apart.

A .sud file lists the crossings of a symmetric union diagram: four arc
labels counterclockwise from the incoming under-strand, plus a pos/neg flag
for crossings on the reflection axis.  A checkerboard coloring of the faces
turns the diagram into a signed graph (one vertex per black face, one edge
per crossing); the partition function sums edge-weight products over all
colorings of the vertices, weighting axis edges by V+- and the rest by W+-,
and the normalized invariant rescales by the axis moduli:

    I = alpha_v+^(-p_b) * alpha_v-^(-n_b) * Z.

The two bundled ten-crossing diagrams represent the same knot, but their
invariants differ for most refinements, so no sequence of symmetric moves
connects them.
"""

import numpy as np

from refspin import fixtures, models
from refspin.diagram import checkerboard, tait_graph
from refspin.engine import invariant_of_diagram, normalized_invariant

# ----------------------------------------------------------------------
# Parse a bundled code and inspect its structure.
# ----------------------------------------------------------------------
d = fixtures.load_diagram("d1042")
print("diagram", d.name)
print("  crossings:", d.n_crossings, " arcs:", d.n_arcs,
      " axis crossings (pos, neg):", d.axis_counts())

c0, c1 = checkerboard(d)
print("  faces:", c0.n_faces, " black in coloring 0:", len(c0.black))
g0 = tait_graph(d, c0)
print("  graph: N =", g0.n_vertices, " edges =", len(g0.edges),
      " p_b =", g0.p_b, " n_b =", g0.n_b)

# Both colorings give the same invariant; invariant_of_diagram checks that.
r = models.make_potts_family(1.0, 0.0)
print("  I(coloring 0) =", np.round(normalized_invariant(g0, r).i, 10))
print("  I(coloring 1) =",
      np.round(normalized_invariant(tait_graph(d, c1), r).i, 10))

# ----------------------------------------------------------------------
# The pair: same knot, different symmetric-equivalence classes.
# At (a, b) = (1, 0) the values are -sqrt(3) and -3 sqrt(3).
# ----------------------------------------------------------------------
d2 = fixtures.load_diagram("d1042p")
i1 = invariant_of_diagram(d, r).i
i2 = invariant_of_diagram(d2, r).i
print("\nten-crossing pair under a I + b (J - I), (a, b) = (1, 0):")
print("  I(d1042)  =", np.round(i1, 10))
print("  I(d1042p) =", np.round(i2, 10))
print("  distinguished:", abs(i1 - i2) > 1e-8)

# The whole one-parameter family in closed form; the invariants are rational
# functions of (a, b), reproduced here at a few sample points.
print("\n  (a, b)        I(d1042)        I(d1042p)")
for a, b in ((1, 0), (1, 1), (3, -1), (2, 5)):
    ra = models.make_potts_family(complex(a), complex(b))
    va = invariant_of_diagram(d, ra).i
    vb = invariant_of_diagram(d2, ra).i
    print(f"  ({a:2d},{b:2d})   {va:14.6f}  {vb:14.6f}")

# ----------------------------------------------------------------------
# The eight-crossing pair needs the five-state model.  On the line a = 1,
# c = -b the values are d (4 b^2 + 1) versus 40 b^2 + d: switching the
# axis crossings is detectable even though both diagrams are the same knot.
# ----------------------------------------------------------------------
d89 = fixtures.load_diagram("d89")
d89p = fixtures.load_diagram("d89p")
print("\neight-crossing pair under a I + b A1 + c A2, a = 1, c = -b:")
for b in (0.5, 1.0):
    rb = models.make_pentagonal_family(1.0, b, -b)
    print(f"  b = {b}:  I(d89) = {invariant_of_diagram(d89, rb).i:.6f}"
          f"   I(d89p) = {invariant_of_diagram(d89p, rb).i:.6f}")

# With the type-II parameters (a, b, c) = (-xi^-3, xi, xi), xi^2 = (1-d)/2,
# the gap persists, so even the weaker equivalence is ruled out.
xi = models.potts_xi_candidates(np.sqrt(5))[0]
rt = models.make_pentagonal_family(-xi ** -3, xi, xi)
print("type-II point: ",
      np.round(invariant_of_diagram(d89, rt).i, 8), "vs",
      np.round(invariant_of_diagram(d89p, rt).i, 8))
