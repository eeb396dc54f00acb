"""Why the number is an invariant: value-preserving graph rewrites.

Each symmetric move on a diagram acts on its signed graph as a local
rewrite, and each rewrite preserves the normalized invariant exactly:

  * star <-> triangle: a degree-3 vertex with one axis edge exchanges with
    a triangle (the eigenvector identity, summed at the center);
  * parallel +/- edges cancel (off the axis always, on the axis for
    type-II refinements);
  * pendant vertices strip off against the moduli;
  * a four-vertex gadget collapses to two axis edges (four star-triangle
    exchanges plus three cancellations in one move).

random_equivalent chains seeded random rewrites, growing and shrinking the
graph while the invariant stays put.
"""

import itertools

import numpy as np

from refspin import fixtures, models, rewrites
from refspin.diagram import checkerboard, tait_graph
from refspin.engine import normalized_invariant


def inv(g, r):
    return normalized_invariant(g, r).i


# ----------------------------------------------------------------------
# The pointwise identity behind the star-triangle exchange.
# ----------------------------------------------------------------------
r = models.make_pentagonal_family(1.5, 0.5, -0.25)
v = {1: r.v_plus, -1: r.v_minus}
w = {1: r.base.w_plus, -1: r.base.w_minus}
worst = 0.0
for e1, e2 in itertools.product((1, -1), repeat=2):
    for a, b, c in itertools.product(range(5), repeat=3):
        lhs = sum(v[e1][x, c] * w[-e2][x, a] * w[e2][b, x] for x in range(5))
        rhs = r.d * v[-e1][a, b] * w[-e2][c, a] * w[e2][b, c]
        worst = max(worst, abs(lhs - rhs))
print("star-triangle identity, all sign patterns and color triples:")
print("  worst residual:", worst)

# ----------------------------------------------------------------------
# Rewrites on an actual graph.
# ----------------------------------------------------------------------
d = fixtures.load_diagram("d1042")
g = tait_graph(d, checkerboard(d)[0])
base = inv(g, r5 := models.make_potts_family(2.0, 0.3))
print("\nstart: N =", g.n_vertices, " I =", np.round(base, 8))

tri = rewrites.find_triangle_sites(g)
g2 = rewrites.apply_triangle_star(g, tri[0])
print("after triangle -> star: N =", g2.n_vertices,
      " drift =", abs(inv(g2, r5) - base))

g3 = rewrites.insert_pendant_axis(g2, 0, +1)
g3 = rewrites.insert_pendant_mirror_pair(g3, 1, 4)
print("after pendant insertions: N =", g3.n_vertices,
      " drift =", abs(inv(g3, r5) - base))

axis_edges = [k for k, e in enumerate(g3.edges) if e.axis]
g4 = rewrites.insert_s4(g3, axis_edges[0], axis_edges[1])
print("after gadget insertion: N =", g4.n_vertices,
      " drift =", abs(inv(g4, r5) - base))

g5 = rewrites.apply_s4(g4, rewrites.find_s4_sites(g4)[0])
print("after gadget collapse: N =", g5.n_vertices,
      " drift =", abs(inv(g5, r5) - base))

# ----------------------------------------------------------------------
# Fuzzing: long seeded rewrite chains.  Axis +/- pair moves are enabled
# only for type-II refinements, where they are actually value-preserving.
# ----------------------------------------------------------------------
type_ii = models.make_potts_refinement(models.make_potts(3, -1, 0))
base_ii = inv(g, type_ii)
print("\nfuzzing with a type-II refinement:")
for seed in range(4):
    gf = rewrites.random_equivalent(g, seed, steps=50, model=type_ii)
    print(f"  seed {seed}: N {g.n_vertices} -> {gf.n_vertices},"
          f" drift {abs(inv(gf, type_ii) - base_ii):.2e}")
