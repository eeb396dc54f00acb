"""Partition-function engine: enumeration, elimination, pinned sums.

The reference oracle here is a deliberately dumb itertools loop over all
colorings, written independently of the engine's vectorized paths.
"""

import cmath
import itertools
import math

import pytest

from refspin import fixtures, models
from refspin.diagram import TaitEdge, TaitGraph, checkerboard, parse_smg, tait_graph
from refspin.engine import (
    EliminationOrder,
    eliminate_with_order,
    invariant_of_diagram,
    normalized_invariant,
    partition_eliminate,
    partition_naive,
    pinned_sum,
)
from refspin.errors import TooLarge, WidthOverflow
from refspin.repro import random_tait_graph


def reference_partition(g: TaitGraph, r) -> complex:
    """Brute-force oracle: plain loops, no vectorization, no components."""
    total = 0j
    for sigma in itertools.product(range(r.n), repeat=g.n_vertices):
        term = 1.0 + 0j
        for e in g.edges:
            if e.axis:
                mat = r.v_plus if e.sign > 0 else r.v_minus
            else:
                mat = r.base.w_plus if e.sign > 0 else r.base.w_minus
            term *= mat[sigma[e.u], sigma[e.v]]
        total += term
    return total * r.d ** -g.n_vertices


def graph_of(name, coloring=0):
    d = fixtures.load_diagram(name)
    return tait_graph(d, checkerboard(d)[coloring])


# ------------------------------------------------------------ small cases


def test_single_vertex_gives_d(asym_potts_refinement, asym_pent_refinement):
    g = fixtures.load_graph("trivial")
    for r in (asym_potts_refinement, asym_pent_refinement):
        val = normalized_invariant(g, r)
        assert abs(val.z - r.d) < 1e-12
        assert abs(val.i - r.d) < 1e-12


def test_one_positive_edge_closed_form(potts3):
    # two vertices joined by one off-axis + edge: Z = d / alpha_w
    r = models.make_refined(potts3, potts3.w_plus)
    g = parse_smg("smg two\nN 2\nPB 0\nNB 0\ne 1 2 + off\n")
    z = partition_naive(g, r)
    expected = math.sqrt(3) * cmath.exp(1j * math.pi / 4)
    assert abs(z - expected) < 1e-12
    assert abs(z - r.d / r.base.alpha_w) < 1e-12


def test_one_axis_edge_closed_form(rng):
    g = parse_smg("smg two\nN 2\nPB 1\nNB 0\ne 1 2 + axis\n")
    for _ in range(5):
        a, b = (complex(*rng.uniform(-2, 2, 2)) for _ in range(2))
        if abs(a * (a + 2 * b)) < 0.1:
            continue
        r = models.make_potts_family(a, b)
        assert abs(partition_naive(g, r) - (a + 2 * b)) < 1e-9


def test_engine_matches_reference_oracle(rng, asym_potts_refinement,
                                         asym_pent_refinement):
    for k in range(25):
        r = asym_potts_refinement if k % 2 else asym_pent_refinement
        g = random_tait_graph(rng, n_max=5, n_states=r.n)
        want = reference_partition(g, r)
        assert abs(partition_naive(g, r) - want) < 1e-9
        assert abs(partition_eliminate(g, r) - want) < 1e-9


def test_disconnected_graph_multiplies(asym_potts_refinement):
    r = asym_potts_refinement
    g1 = parse_smg("smg a\nN 2\nPB 1\nNB 0\ne 1 2 + axis\n")
    g2 = parse_smg("smg b\nN 3\nPB 0\nNB 1\ne 1 2 - off\ne 2 3 - axis\n")
    both = parse_smg(
        "smg ab\nN 5\nPB 1\nNB 1\n"
        "e 1 2 + axis\ne 3 4 - off\ne 4 5 - axis\n"
    )
    z1, z2 = partition_naive(g1, r), partition_naive(g2, r)
    for method in (partition_naive, partition_eliminate):
        assert abs(method(both, r) - z1 * z2) < 1e-12


def test_isolated_vertices_contribute_factor_d(asym_potts_refinement):
    r = asym_potts_refinement
    g = parse_smg("smg iso\nN 3\nPB 0\nNB 0\ne 1 2 + off\n")
    base = parse_smg("smg two\nN 2\nPB 0\nNB 0\ne 1 2 + off\n")
    want = partition_naive(base, r) * r.d  # n / d = d per isolated vertex
    assert abs(partition_naive(g, r) - want) < 1e-12
    assert abs(partition_eliminate(g, r) - want) < 1e-12


# ------------------------------------------------------------ caps, knobs


def test_enumeration_cap():
    r = models.make_potts_family(1.0, 0.0)
    g = TaitGraph("big", 40, (), 0, 0)
    with pytest.raises(TooLarge):
        partition_naive(g, r)


def test_arity_cap():
    r = models.make_potts_family(1.0, 0.0)
    # a star of 13 leaves around vertex 0 forces a 13-variable factor when
    # the center is eliminated first
    edges = tuple(TaitEdge(0, k, 1, False) for k in range(1, 14))
    g = TaitGraph("star", 14, edges, 0, 0)
    order = EliminationOrder(order=tuple(range(14)), width=0)
    with pytest.raises(WidthOverflow):
        partition_eliminate(g, r, order=order)
    # min-degree order eliminates leaves first and stays binary
    value, info = eliminate_with_order(g, r)
    assert info.width <= 2
    assert abs(value - partition_naive(g, r)) < 1e-9


def test_explicit_order_matches_default(asym_potts_refinement):
    g = graph_of("d1042")
    r = asym_potts_refinement
    want = partition_eliminate(g, r)
    order = EliminationOrder(order=tuple(range(g.n_vertices)), width=0)
    assert abs(partition_eliminate(g, r, order=order) - want) < 1e-9
    with pytest.raises(ValueError):
        partition_eliminate(g, r, order=EliminationOrder((0, 0, 1), 0))


def test_worker_count_does_not_change_values(monkeypatch,
                                             asym_potts_refinement):
    g = graph_of("d89")
    r = asym_potts_refinement
    base = partition_naive(g, r)
    monkeypatch.setenv("REFSPIN_THREADS", "4")
    assert abs(partition_naive(g, r) - base) < 1e-12


# ------------------------------------------------------------ pinned sums


def test_pinned_sum_on_point(asym_potts_refinement):
    g = fixtures.load_graph("trivial")
    assert pinned_sum(g, asym_potts_refinement, 0, 1) == 1.0


def test_pinned_sum_recovers_partition(asym_potts_refinement):
    g = graph_of("d1042p")
    r = asym_potts_refinement
    z = partition_naive(g, r)
    for v0 in (0, 2):
        total = sum(pinned_sum(g, r, v0, a) for a in range(r.n))
        assert abs(total - r.d ** g.n_vertices * z) < 1e-9


def test_pinned_sum_translation_invariance(asym_pent_refinement):
    g = graph_of("d89")
    r = asym_pent_refinement
    vals = [pinned_sum(g, r, 1, a) for a in range(r.n)]
    assert max(abs(v - vals[0]) for v in vals) < 1e-9
    # n d^-N R equals Z for translation-invariant models
    z = partition_naive(g, r)
    assert abs(r.n * r.d ** -g.n_vertices * vals[0] - z) < 1e-9


def test_pinned_sum_requires_connected(asym_potts_refinement):
    g = parse_smg("smg two\nN 2\nPB 0\nNB 0\n")
    with pytest.raises(ValueError):
        pinned_sum(g, asym_potts_refinement, 0, 0)


# --------------------------------------------------- diagrams and methods


@pytest.mark.parametrize("method", ["naive", "eliminate", "auto"])
def test_methods_agree_on_fixture(method, asym_potts_refinement):
    g = graph_of("d1042")
    val = normalized_invariant(g, asym_potts_refinement, method=method)
    want = reference_partition(g, asym_potts_refinement)
    assert abs(val.z - want) < 1e-9
    assert val.method in ("naive", "eliminate")


def test_invariant_value_consistency(asym_potts_refinement):
    g = graph_of("d89")
    r = asym_potts_refinement
    val = normalized_invariant(g, r)
    scale = r.alpha_vp ** -g.p_b * r.alpha_vm ** -g.n_b
    assert abs(val.i - scale * val.z) < 1e-12


@pytest.mark.parametrize("name", fixtures.DIAGRAMS)
def test_both_colorings_agree_on_fixtures(name, asym_potts_refinement,
                                          asym_pent_refinement):
    d = fixtures.load_diagram(name)
    for r in (asym_potts_refinement, asym_pent_refinement):
        invariant_of_diagram(d, r)  # raises ColoringMismatch on failure


def test_chain_diagrams_evaluate_to_d(asym_potts_refinement,
                                      asym_pent_refinement,
                                      type_ii_refinement):
    # every axis twist chain is a kinked unknot, so I must equal d
    for name in ("chain1n", "chain1p", "chain2", "chain3", "chain5"):
        d = fixtures.load_diagram(name)
        for r in (asym_potts_refinement, asym_pent_refinement,
                  type_ii_refinement):
            assert abs(invariant_of_diagram(d, r).i - r.d) < 1e-9


def test_connected_sum_associative_on_invariants():
    from refspin.diagram import connected_sum

    graphs = [graph_of(n) for n in ("d1042", "d1042p", "d89")]
    for r in (models.make_potts_family(1.0, 0.5),
              models.make_pentagonal_family(1.0, 0.5, -0.25)):
        left = connected_sum(connected_sum(graphs[0], graphs[1], 0, 0),
                             graphs[2], 0, 0)
        right = connected_sum(graphs[0],
                              connected_sum(graphs[1], graphs[2], 0, 0), 0, 0)
        gap = abs(normalized_invariant(left, r).i
                  - normalized_invariant(right, r).i)
        assert gap < 1e-9


def test_auto_falls_back_to_enumeration(asym_potts_refinement):
    # an arity cap of one makes every elimination step overflow
    g = graph_of("d1042p")
    val = normalized_invariant(g, asym_potts_refinement, method="auto",
                               arity_cap=1)
    assert val.method == "naive"
    want = normalized_invariant(g, asym_potts_refinement, method="eliminate")
    assert abs(val.i - want.i) < 1e-9
