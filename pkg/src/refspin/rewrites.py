"""Value-preserving rewrites on signed medial graphs.

Each rewrite replaces a local pattern by an equivalent one: a degree-3
vertex with one axis edge exchanges with a triangle, opposite parallel
edges cancel, pendant vertices strip off against the moduli, and a
four-vertex gadget collapses to two axis edges.  The identities hold for
any signed graph with axis marks, not only for genuine medial graphs, so
pattern matching never checks planarity.

random_equivalent composes seeded random rewrites in both directions to
fuzz invariance; cancelling or inserting an opposite axis pair changes the
invariant unless the model is of type II, so those moves are enabled only
when a type-II model is supplied.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import TaitEdge, TaitGraph
from .errors import PatternMismatch, TypeIIRequired
from .models import RefinedSpinModel


@dataclass(frozen=True)
class RewriteSite:
    """A located rewrite: its kind plus the vertices/edges it touches.

    star_triangle uses vertices=(x,); triangle_star and parallel_pair use
    edge indices; pendant kinds use the pendant vertices; s4_gadget uses
    vertices=(x, t, y, z).
    """

    kind: str
    vertices: tuple[int, ...] = field(default=())
    edges: tuple[int, ...] = field(default=())


def _other(e: TaitEdge, v: int) -> int:
    return e.v if e.u == v else e.u


def _drop_vertices(g: TaitGraph, dead: set[int], edges: list[TaitEdge],
                   p_b: int, n_b: int, name: str) -> TaitGraph:
    """Relabel vertices after deleting `dead`; edges are in old labels."""
    keep = [v for v in range(g.n_vertices) if v not in dead]
    new_id = {v: k for k, v in enumerate(keep)}
    relabeled = tuple(
        TaitEdge(new_id[e.u], new_id[e.v], e.sign, e.axis) for e in edges
    )
    return TaitGraph(name=name, n_vertices=len(keep), edges=relabeled,
                     p_b=p_b, n_b=n_b)


# ------------------------------------------------------- star / triangle


def _star_roles(g: TaitGraph, x: int):
    """The star pattern at x: one axis edge and two off edges of opposite
    signs, no self-loop.  Returns (axis edge, + off edge, - off edge)."""
    idxs = g.incident(x)
    if len(idxs) != 3 or any(g.edges[i].u == g.edges[i].v for i in idxs):
        raise PatternMismatch(f"vertex {x} is not a 3-star")
    axis = [i for i in idxs if g.edges[i].axis]
    off = [i for i in idxs if not g.edges[i].axis]
    if len(axis) != 1 or len(off) != 2:
        raise PatternMismatch(f"vertex {x} needs one axis and two off edges")
    if g.edges[off[0]].sign == g.edges[off[1]].sign:
        raise PatternMismatch(f"off edges at {x} must have opposite signs")
    plus, minus = (off if g.edges[off[0]].sign > 0 else off[::-1])
    return axis[0], plus, minus


def find_star_sites(g: TaitGraph) -> list[RewriteSite]:
    out = []
    for x in range(g.n_vertices):
        try:
            _star_roles(g, x)
        except PatternMismatch:
            continue
        out.append(RewriteSite(kind="star_triangle", vertices=(x,)))
    return out


def apply_star_triangle(g: TaitGraph, site: RewriteSite) -> TaitGraph:
    """Sum the star's center out: axis edge x-c of sign e1 and off edges
    x-b (+), x-a (-) become axis a-b of sign -e1 with off c-a (-), b-c (+).

    The partition function is preserved exactly; the vertex count drops by
    one and the axis-crossing counts are untouched.
    """
    (x,) = site.vertices
    i_axis, i_plus, i_minus = _star_roles(g, x)
    c = _other(g.edges[i_axis], x)
    b = _other(g.edges[i_plus], x)
    a = _other(g.edges[i_minus], x)
    e1 = g.edges[i_axis].sign
    edges = [e for k, e in enumerate(g.edges) if k not in (i_axis, i_plus, i_minus)]
    edges += [
        TaitEdge(a, b, -e1, True),
        TaitEdge(c, a, -1, False),
        TaitEdge(b, c, +1, False),
    ]
    return _drop_vertices(g, {x}, edges, g.p_b, g.n_b, g.name)


def find_triangle_sites(g: TaitGraph) -> list[RewriteSite]:
    out: list[RewriteSite] = []
    seen: set[tuple[int, int, int]] = set()
    off_by_vertex: dict[int, list[int]] = {}
    for k, e in enumerate(g.edges):
        if not e.axis:
            off_by_vertex.setdefault(e.u, []).append(k)
            if e.v != e.u:
                off_by_vertex.setdefault(e.v, []).append(k)
    for i_axis, e_axis in enumerate(g.edges):
        if not e_axis.axis:
            continue
        ends = {e_axis.u, e_axis.v}
        for c, cand in off_by_vertex.items():
            for ii in cand:
                for jj in cand:
                    if ii >= jj:
                        continue
                    e1, e2 = g.edges[ii], g.edges[jj]
                    if e1.sign == e2.sign:
                        continue
                    if {_other(e1, c), _other(e2, c)} == ends:
                        key = (i_axis, ii, jj)
                        if key not in seen:
                            seen.add(key)
                            out.append(
                                RewriteSite(kind="triangle_star", edges=key)
                            )
    return out


def apply_triangle_star(g: TaitGraph, site: RewriteSite) -> TaitGraph:
    """Inverse exchange: grow a new center vertex out of a triangle.

    The triangle is an axis edge a-b plus off edges c-a, c-b of opposite
    signs; the new star keeps the off signs on x-a / x-b and negates the
    axis sign on x-c.
    """
    i_axis, i1, i2 = site.edges
    try:
        e_axis, e1, e2 = g.edges[i_axis], g.edges[i1], g.edges[i2]
    except IndexError:
        raise PatternMismatch("edge index out of range") from None
    if not e_axis.axis or e1.axis or e2.axis:
        raise PatternMismatch("triangle needs one axis edge and two off edges")
    if e1.sign == e2.sign:
        raise PatternMismatch("off edges must have opposite signs")
    ends = {e_axis.u, e_axis.v}
    shared = {e1.u, e1.v} & {e2.u, e2.v}
    c = None
    for cand in sorted(shared):
        if {_other(e1, cand), _other(e2, cand)} == ends:
            c = cand
            break
    if c is None:
        raise PatternMismatch("off edges do not close a triangle over the axis edge")
    x = g.n_vertices
    edges = [e for k, e in enumerate(g.edges) if k not in (i_axis, i1, i2)]
    edges += [
        TaitEdge(x, c, -e_axis.sign, True),
        TaitEdge(x, _other(e1, c), e1.sign, False),
        TaitEdge(x, _other(e2, c), e2.sign, False),
    ]
    return TaitGraph(name=g.name, n_vertices=g.n_vertices + 1,
                     edges=tuple(edges), p_b=g.p_b, n_b=g.n_b)


# --------------------------------------------------------- parallel pairs


def find_parallel_pairs(g: TaitGraph, axis: bool | None = None) -> list[RewriteSite]:
    buckets: dict[tuple, dict[int, list[int]]] = {}
    for k, e in enumerate(g.edges):
        if axis is not None and e.axis != axis:
            continue
        key = (frozenset((e.u, e.v)), e.axis)
        buckets.setdefault(key, {}).setdefault(e.sign, []).append(k)
    out = []
    for signs in buckets.values():
        for i in signs.get(1, []):
            for j in signs.get(-1, []):
                out.append(RewriteSite(kind="parallel_pair", edges=(i, j)))
    return out


def cancel_parallel(
    g: TaitGraph, site: RewriteSite, model: RefinedSpinModel | None = None
) -> TaitGraph:
    """Remove two parallel edges of opposite signs.

    Off-axis pairs cancel for every model since the weights are entrywise
    reciprocal.  Axis pairs additionally need a type-II model (so that the
    moduli multiply to one); pass the model to assert that, otherwise
    TypeIIRequired is raised.  An axis pair lowers p_b and n_b by one each.
    """
    i, j = site.edges
    try:
        e1, e2 = g.edges[i], g.edges[j]
    except IndexError:
        raise PatternMismatch("edge index out of range") from None
    if i == j or {e1.u, e1.v} != {e2.u, e2.v} or e1.axis != e2.axis:
        raise PatternMismatch("edges are not parallel")
    if e1.sign + e2.sign != 0:
        raise PatternMismatch("parallel pair must have opposite signs")
    p_b, n_b = g.p_b, g.n_b
    if e1.axis:
        if model is None or not model.type_ii:
            raise TypeIIRequired("axis-pair cancellation needs a type-II model")
        if p_b < 1 or n_b < 1:
            raise PatternMismatch("axis-crossing counts cannot drop below zero")
        p_b, n_b = p_b - 1, n_b - 1
    edges = tuple(e for k, e in enumerate(g.edges) if k not in (i, j))
    return TaitGraph(name=g.name, n_vertices=g.n_vertices, edges=edges,
                     p_b=p_b, n_b=n_b)


def insert_parallel_pair(
    g: TaitGraph, u: int, v: int, axis: bool,
    model: RefinedSpinModel | None = None,
) -> TaitGraph:
    """Add opposite-sign parallel edges between u and v (inverse of
    cancel_parallel; same type-II requirement for axis pairs)."""
    if not (0 <= u < g.n_vertices and 0 <= v < g.n_vertices):
        raise PatternMismatch("vertices out of range")
    p_b, n_b = g.p_b, g.n_b
    if axis:
        if model is None or not model.type_ii:
            raise TypeIIRequired("axis-pair insertion needs a type-II model")
        p_b, n_b = p_b + 1, n_b + 1
    edges = g.edges + (TaitEdge(u, v, +1, axis), TaitEdge(u, v, -1, axis))
    return TaitGraph(name=g.name, n_vertices=g.n_vertices, edges=edges,
                     p_b=p_b, n_b=n_b)


# --------------------------------------------------------------- pendants


def _pendant_edge(g: TaitGraph, x: int) -> int:
    idxs = g.incident(x)
    if len(idxs) != 1 or g.edges[idxs[0]].u == g.edges[idxs[0]].v:
        raise PatternMismatch(f"vertex {x} is not a pendant")
    return idxs[0]


def find_pendant_axis_sites(g: TaitGraph) -> list[RewriteSite]:
    out = []
    for x in range(g.n_vertices):
        try:
            k = _pendant_edge(g, x)
        except PatternMismatch:
            continue
        if g.edges[k].axis:
            out.append(RewriteSite(kind="pendant_axis", vertices=(x,)))
    return out


def remove_pendant_axis(g: TaitGraph, site: RewriteSite) -> TaitGraph:
    """Strip a degree-1 vertex hanging on an axis edge.

    Summing the pendant color contributes d times a modulus, absorbed by
    lowering n_b (positive edge) or p_b (negative edge) by one.
    """
    (x,) = site.vertices
    k = _pendant_edge(g, x)
    e = g.edges[k]
    if not e.axis:
        raise PatternMismatch("pendant edge is off the axis")
    p_b, n_b = g.p_b, g.n_b
    if e.sign > 0:
        if n_b < 1:
            raise PatternMismatch("n_b cannot drop below zero")
        n_b -= 1
    else:
        if p_b < 1:
            raise PatternMismatch("p_b cannot drop below zero")
        p_b -= 1
    edges = [ed for kk, ed in enumerate(g.edges) if kk != k]
    return _drop_vertices(g, {x}, edges, p_b, n_b, g.name)


def insert_pendant_axis(g: TaitGraph, v: int, sign: int) -> TaitGraph:
    """Attach a new degree-1 vertex to v by an axis edge of the given sign."""
    if not (0 <= v < g.n_vertices) or sign not in (1, -1):
        raise PatternMismatch("bad pendant parameters")
    x = g.n_vertices
    p_b = g.p_b + (1 if sign < 0 else 0)
    n_b = g.n_b + (1 if sign > 0 else 0)
    return TaitGraph(name=g.name, n_vertices=x + 1,
                     edges=g.edges + (TaitEdge(x, v, sign, True),),
                     p_b=p_b, n_b=n_b)


def find_pendant_mirror_sites(g: TaitGraph) -> list[RewriteSite]:
    plus, minus = [], []
    for x in range(g.n_vertices):
        try:
            k = _pendant_edge(g, x)
        except PatternMismatch:
            continue
        if g.edges[k].axis:
            continue
        (plus if g.edges[k].sign > 0 else minus).append(x)
    return [
        RewriteSite(kind="pendant_mirror_pair", vertices=(x1, x2))
        for x1 in plus for x2 in minus
    ]


def remove_pendant_mirror_pair(g: TaitGraph, site: RewriteSite) -> TaitGraph:
    """Strip two degree-1 vertices on off-axis edges of opposite signs.

    Their summed-out factors are the modulus and its reciprocal, so nothing
    else changes.
    """
    x1, x2 = site.vertices
    if x1 == x2:
        raise PatternMismatch("need two distinct pendants")
    k1, k2 = _pendant_edge(g, x1), _pendant_edge(g, x2)
    e1, e2 = g.edges[k1], g.edges[k2]
    if e1.axis or e2.axis:
        raise PatternMismatch("mirror pair must hang on off-axis edges")
    if e1.sign + e2.sign != 0:
        raise PatternMismatch("mirror pair needs opposite signs")
    edges = [e for k, e in enumerate(g.edges) if k not in (k1, k2)]
    return _drop_vertices(g, {x1, x2}, edges, g.p_b, g.n_b, g.name)


def insert_pendant_mirror_pair(g: TaitGraph, v1: int, v2: int) -> TaitGraph:
    """Attach a +/- pair of off-axis pendants (inverse of the removal)."""
    if not (0 <= v1 < g.n_vertices and 0 <= v2 < g.n_vertices):
        raise PatternMismatch("vertices out of range")
    x1, x2 = g.n_vertices, g.n_vertices + 1
    edges = g.edges + (TaitEdge(x1, v1, +1, False), TaitEdge(x2, v2, -1, False))
    return TaitGraph(name=g.name, n_vertices=x2 + 1, edges=edges,
                     p_b=g.p_b, n_b=g.n_b)


# -------------------------------------------------------------- S4 gadget


def _s4_roles(g: TaitGraph, x: int, t: int, y: int, z: int):
    """Validate the four-vertex gadget and return the incident structure.

    Pattern: internal vertices x, t, y, z of degree 3; axis edges x-t (sign
    e2) and y-z (sign e1); off edges x-y (-), t-z (+), a-x (+), b-y (+),
    t-d (-), z-c (-), plus boundary edges a-b (-) and c-d (+).
    """
    internal = (x, t, y, z)
    if len(set(internal)) != 4:
        raise PatternMismatch("gadget vertices must be distinct")
    incid = {v: g.incident(v) for v in internal}
    for v in internal:
        if len(incid[v]) != 3:
            raise PatternMismatch(f"gadget vertex {v} must have degree 3")

    def the_edge(u, v, sign, axis):
        for k in incid[u]:
            e = g.edges[k]
            if {e.u, e.v} == {u, v} and e.sign == sign and e.axis == axis:
                return k
        raise PatternMismatch(f"missing edge {u}-{v} sign {sign:+d}")

    def axis_between(u, v):
        for k in incid[u]:
            e = g.edges[k]
            if {e.u, e.v} == {u, v} and e.axis:
                return k
        raise PatternMismatch(f"missing axis edge {u}-{v}")

    k_xt = axis_between(x, t)
    k_yz = axis_between(y, z)
    k_xy = the_edge(x, y, -1, False)
    k_tz = the_edge(t, z, +1, False)

    def boundary(v, sign, used):
        for k in incid[v]:
            if k in used:
                continue
            e = g.edges[k]
            if e.axis or e.sign != sign:
                raise PatternMismatch(f"bad boundary edge at {v}")
            w = _other(e, v)
            if w in internal:
                raise PatternMismatch(f"boundary of {v} lands inside the gadget")
            return k, w
        raise PatternMismatch(f"no boundary edge at {v}")

    used = {k_xt, k_yz, k_xy, k_tz}
    k_ax, a = boundary(x, +1, used)
    k_by, b = boundary(y, +1, used)
    k_td, d = boundary(t, -1, used)
    k_zc, c = boundary(z, -1, used)

    def outer_edge(u, v, sign):
        for k, e in enumerate(g.edges):
            if {e.u, e.v} == {u, v} and e.sign == sign and not e.axis:
                return k
        raise PatternMismatch(f"missing outer edge {u}-{v} sign {sign:+d}")

    k_ab = outer_edge(a, b, -1)
    k_cd = outer_edge(c, d, +1)
    eps2 = g.edges[k_xt].sign
    eps1 = g.edges[k_yz].sign
    gadget_edges = {k_xt, k_yz, k_xy, k_tz, k_ax, k_by, k_td, k_zc, k_ab, k_cd}
    if len(gadget_edges) != 10:
        raise PatternMismatch("gadget edges are not distinct")
    return a, b, c, d, eps1, eps2, gadget_edges


def find_s4_sites(g: TaitGraph) -> list[RewriteSite]:
    axis_edges = [k for k, e in enumerate(g.edges) if e.axis]
    out = []
    for i in axis_edges:
        for j in axis_edges:
            if i == j:
                continue
            ei, ej = g.edges[i], g.edges[j]
            for x, t in ((ei.u, ei.v), (ei.v, ei.u)):
                for y, z in ((ej.u, ej.v), (ej.v, ej.u)):
                    try:
                        _s4_roles(g, x, t, y, z)
                    except PatternMismatch:
                        continue
                    site = RewriteSite(kind="s4_gadget", vertices=(x, t, y, z))
                    if site not in out:
                        out.append(site)
    return out


def apply_s4(g: TaitGraph, site: RewriteSite) -> TaitGraph:
    """Collapse the gadget to two axis edges a-d (sign e1) and b-c (sign e2).

    Four star-triangle exchanges and three off-axis cancellations compose to
    this replacement, so it preserves the invariant for every refined model;
    the axis-crossing counts are unchanged.
    """
    x, t, y, z = site.vertices
    a, b, c, d, eps1, eps2, dead_edges = _s4_roles(g, x, t, y, z)
    edges = [e for k, e in enumerate(g.edges) if k not in dead_edges]
    edges += [TaitEdge(a, d, eps1, True), TaitEdge(b, c, eps2, True)]
    return _drop_vertices(g, {x, t, y, z}, edges, g.p_b, g.n_b, g.name)


def insert_s4(g: TaitGraph, axis_edge_1: int, axis_edge_2: int) -> TaitGraph:
    """Blow two axis edges up into the four-vertex gadget (inverse of
    apply_s4).  The first edge, read (a, d), carries e1; the second, read
    (b, c), carries e2."""
    if axis_edge_1 == axis_edge_2:
        raise PatternMismatch("need two distinct axis edges")
    try:
        e1, e2 = g.edges[axis_edge_1], g.edges[axis_edge_2]
    except IndexError:
        raise PatternMismatch("edge index out of range") from None
    if not (e1.axis and e2.axis):
        raise PatternMismatch("both edges must be on the axis")
    a, d = e1.u, e1.v
    b, c = e2.u, e2.v
    eps1, eps2 = e1.sign, e2.sign
    x, t, y, z = (g.n_vertices + k for k in range(4))
    edges = [e for k, e in enumerate(g.edges) if k not in (axis_edge_1, axis_edge_2)]
    edges += [
        TaitEdge(x, t, eps2, True),
        TaitEdge(y, z, eps1, True),
        TaitEdge(x, y, -1, False),
        TaitEdge(t, z, +1, False),
        TaitEdge(a, x, +1, False),
        TaitEdge(b, y, +1, False),
        TaitEdge(t, d, -1, False),
        TaitEdge(z, c, -1, False),
        TaitEdge(a, b, -1, False),
        TaitEdge(c, d, +1, False),
    ]
    return TaitGraph(name=g.name, n_vertices=g.n_vertices + 4,
                     edges=tuple(edges), p_b=g.p_b, n_b=g.n_b)


# ------------------------------------------------------------------ fuzzer

_MOVES = (
    "star_triangle",
    "triangle_star",
    "cancel_off_pair",
    "insert_off_pair",
    "remove_pendant_axis",
    "insert_pendant_axis",
    "remove_mirror_pair",
    "insert_mirror_pair",
    "s4_remove",
    "s4_insert",
    "cancel_axis_pair",
    "insert_axis_pair",
)


def random_equivalent(
    g: TaitGraph,
    seed: int,
    steps: int,
    model: RefinedSpinModel | None = None,
) -> TaitGraph:
    """Apply a seeded random sequence of invariant-preserving rewrites.

    Axis-pair moves are drawn only when a type-II model is supplied.
    Inapplicable draws are skipped, so every seed terminates; the vertex
    count grows by at most four per step.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    type_ii = model is not None and model.type_ii
    moves = [m for m in _MOVES if type_ii or "axis_pair" not in m]
    rng = random.Random(seed)
    for _ in range(steps):
        move = rng.choice(moves)
        if move == "star_triangle":
            sites = find_star_sites(g)
            if sites:
                g = apply_star_triangle(g, rng.choice(sites))
        elif move == "triangle_star":
            sites = find_triangle_sites(g)
            if sites:
                g = apply_triangle_star(g, rng.choice(sites))
        elif move == "cancel_off_pair":
            sites = find_parallel_pairs(g, axis=False)
            if sites:
                g = cancel_parallel(g, rng.choice(sites), model)
        elif move == "insert_off_pair":
            if g.n_vertices:
                u = rng.randrange(g.n_vertices)
                v = rng.randrange(g.n_vertices)
                g = insert_parallel_pair(g, u, v, axis=False, model=model)
        elif move == "remove_pendant_axis":
            sites = find_pendant_axis_sites(g)
            ok = [
                s for s in sites
                if (g.edges[_pendant_edge(g, s.vertices[0])].sign > 0
                    and g.n_b >= 1)
                or (g.edges[_pendant_edge(g, s.vertices[0])].sign < 0
                    and g.p_b >= 1)
            ]
            if ok:
                g = remove_pendant_axis(g, rng.choice(ok))
        elif move == "insert_pendant_axis":
            if g.n_vertices:
                g = insert_pendant_axis(
                    g, rng.randrange(g.n_vertices), rng.choice((1, -1))
                )
        elif move == "remove_mirror_pair":
            sites = find_pendant_mirror_sites(g)
            if sites:
                g = remove_pendant_mirror_pair(g, rng.choice(sites))
        elif move == "insert_mirror_pair":
            if g.n_vertices:
                v1 = rng.randrange(g.n_vertices)
                v2 = rng.randrange(g.n_vertices)
                g = insert_pendant_mirror_pair(g, v1, v2)
        elif move == "s4_remove":
            sites = find_s4_sites(g)
            if sites:
                g = apply_s4(g, rng.choice(sites))
        elif move == "s4_insert":
            axis_edges = [k for k, e in enumerate(g.edges) if e.axis]
            if len(axis_edges) >= 2:
                i, j = rng.sample(axis_edges, 2)
                g = insert_s4(g, i, j)
        elif move == "cancel_axis_pair":
            if g.p_b >= 1 and g.n_b >= 1:
                sites = find_parallel_pairs(g, axis=True)
                if sites:
                    g = cancel_parallel(g, rng.choice(sites), model)
        elif move == "insert_axis_pair":
            if g.n_vertices:
                u = rng.randrange(g.n_vertices)
                v = rng.randrange(g.n_vertices)
                g = insert_parallel_pair(g, u, v, axis=True, model=model)
    return g
