"""Partition functions and normalized invariants on signed medial graphs.

Z(g) = d**(-N) * sum over colorings sigma of the vertices of the product of
edge weights, where an edge of sign s off the axis weighs W^s(sigma(u),
sigma(v)) and an axis edge weighs V^s instead.  The normalized invariant
rescales Z by alpha_vp**(-p_b) * alpha_vm**(-n_b).

Two evaluation routes are provided: chunked brute-force enumeration and
variable elimination over the edge factors; they must agree to tolerance,
and the tests hold them to that.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import TAU_NUM
from .diagram import SymmetricDiagram, TaitGraph, checkerboard, tait_graph
from .errors import ColoringMismatch, TooLarge, WidthOverflow
from .models import RefinedSpinModel

DEFAULT_ENUM_CAP = 10 ** 8
DEFAULT_ARITY_CAP = 12
_CHUNK = 1 << 18


@dataclass(frozen=True)
class InvariantValue:
    """An evaluated invariant with its provenance.

    n_states counts colorings summed for the enumeration route and vertices
    eliminated for the elimination route.
    """

    z: complex
    i: complex
    n_states: int
    method: str


@dataclass(frozen=True)
class EliminationOrder:
    """A vertex elimination order and the largest factor arity it produced."""

    order: tuple[int, ...]
    width: int


def _edge_matrix(e, r: RefinedSpinModel) -> np.ndarray:
    if e.axis:
        return r.v_plus if e.sign > 0 else r.v_minus
    return r.base.w_plus if e.sign > 0 else r.base.w_minus


def _components(g: TaitGraph) -> list[list[int]]:
    parent = list(range(g.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        a, b = find(e.u), find(e.v)
        if a != b:
            parent[a] = b
    comps: dict[int, list[int]] = {}
    for v in range(g.n_vertices):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def _worker_count() -> int:
    raw = os.environ.get("REFSPIN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _enumerate_component(
    vertices: list[int],
    edges: list,
    r: RefinedSpinModel,
    pinned: tuple[int, int] | None = None,
) -> complex:
    """Plain sum over all colorings of one connected component (no d factor).

    pinned = (vertex, color) restricts the sum to colorings fixing that
    vertex.  Work is chunked; chunk results are summed in a fixed order so
    the value does not depend on the worker count.
    """
    n = r.n
    free = [v for v in vertices if pinned is None or v != pinned[0]]
    pos = {v: k for k, v in enumerate(free)}
    total = n ** len(free)
    mats = [_edge_matrix(e, r) for e in edges]

    def chunk_sum(lo: int, hi: int) -> complex:
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = {}
        for v in free:
            digits[v] = (idx // (n ** pos[v])) % n
        if pinned is not None:
            digits[pinned[0]] = np.full(idx.shape, pinned[1], dtype=np.int64)
        acc = np.ones(idx.shape, dtype=complex)
        for e, mat in zip(edges, mats):
            acc *= mat[digits[e.u], digits[e.v]]
        return complex(acc.sum())

    spans = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    workers = _worker_count()
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda s: chunk_sum(*s), spans))
    else:
        parts = [chunk_sum(*s) for s in spans]
    return complex(sum(parts))


def partition_naive(
    g: TaitGraph, r: RefinedSpinModel, cap: int = DEFAULT_ENUM_CAP
) -> complex:
    """Z by direct enumeration; disconnected graphs factor per component.

    Raises TooLarge when n**N exceeds the cap.
    """
    if r.n ** g.n_vertices > cap:
        raise TooLarge(
            f"{r.n}**{g.n_vertices} states exceed the cap {cap}; "
            "use partition_eliminate"
        )
    total = complex(1.0)
    for comp in _components(g):
        members = set(comp)
        edges = [e for e in g.edges if e.u in members]
        sigma = _enumerate_component(comp, edges, r)
        total *= sigma * (r.d ** -len(comp))
    return total


def pinned_sum(g: TaitGraph, r: RefinedSpinModel, v0: int, a: int,
               cap: int = DEFAULT_ENUM_CAP) -> complex:
    """Unnormalized sum over colorings with sigma(v0) = a.

    The graph must be connected; summing over a recovers d**N * Z.
    """
    comps = _components(g)
    if len(comps) != 1:
        raise ValueError("pinned_sum needs a connected graph")
    if not (0 <= v0 < g.n_vertices and 0 <= a < r.n):
        raise ValueError("pinned vertex or color out of range")
    if r.n ** max(g.n_vertices - 1, 0) > cap:
        raise TooLarge("state space exceeds the enumeration cap")
    return _enumerate_component(comps[0], list(g.edges), r, pinned=(v0, a))


# ------------------------------------------------------------- elimination


def _multiply_into(union: tuple[int, ...], factors, n: int) -> np.ndarray:
    letters = {v: chr(ord("a") + k) for k, v in enumerate(union)}
    acc = np.ones((n,) * len(union), dtype=complex)
    sub_u = "".join(letters[v] for v in union)
    for fvars, arr in factors:
        sub_f = "".join(letters[v] for v in fvars)
        acc = np.einsum(f"{sub_u},{sub_f}->{sub_u}", acc, arr)
    return acc


def eliminate_with_order(
    g: TaitGraph,
    r: RefinedSpinModel,
    order: EliminationOrder | None = None,
    arity_cap: int = DEFAULT_ARITY_CAP,
) -> tuple[complex, EliminationOrder]:
    """Z by summing vertices out of the product of edge factors.

    Default order: repeated minimum degree on the factor hypergraph, ties
    broken by lowest vertex id.  Returns the value and the order actually
    used together with the largest factor arity encountered.
    """
    n = r.n
    factors: list[tuple[tuple[int, ...], np.ndarray]] = []
    for e in g.edges:
        mat = _edge_matrix(e, r)
        if e.u == e.v:
            factors.append(((e.u,), np.diagonal(mat).copy()))
        else:
            factors.append(((e.u, e.v), mat))

    if order is not None:
        if sorted(order.order) != list(range(g.n_vertices)):
            raise ValueError("order must be a permutation of the vertices")
        queue = list(order.order)
    else:
        queue = None

    remaining = set(range(g.n_vertices))
    chosen: list[int] = []
    width = 0
    scalar = complex(1.0)
    while remaining:
        if queue is not None:
            v = queue.pop(0)
        else:
            # current neighborhood size of each remaining vertex
            best = None
            for v2 in sorted(remaining):
                nbrs = set()
                for fvars, _ in factors:
                    if v2 in fvars:
                        nbrs.update(fvars)
                deg = len(nbrs - {v2})
                if best is None or deg < best[0]:
                    best = (deg, v2)
            v = best[1]
        remaining.discard(v)
        chosen.append(v)
        touching = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        if not touching:
            scalar *= n  # isolated vertex: free color
            continue
        union: list[int] = [v]
        for fvars, _ in touching:
            for w in fvars:
                if w not in union:
                    union.append(w)
        if len(union) > arity_cap:
            raise WidthOverflow(
                f"factor over {len(union)} variables exceeds cap {arity_cap}"
            )
        width = max(width, len(union))
        prod = _multiply_into(tuple(union), touching, n)
        summed = prod.sum(axis=0)
        rest = tuple(union[1:])
        if rest:
            factors.append((rest, summed))
        else:
            scalar *= complex(summed)
    for fvars, arr in factors:  # pragma: no cover - defensive
        raise RuntimeError(f"unconsumed factor over {fvars}")
    value = scalar * (r.d ** -g.n_vertices)
    return value, EliminationOrder(order=tuple(chosen), width=width)


def partition_eliminate(
    g: TaitGraph,
    r: RefinedSpinModel,
    order: EliminationOrder | None = None,
    arity_cap: int = DEFAULT_ARITY_CAP,
) -> complex:
    """Z by variable elimination; equal to partition_naive within tolerance."""
    value, _ = eliminate_with_order(g, r, order, arity_cap)
    return value


def normalized_invariant(
    g: TaitGraph,
    r: RefinedSpinModel,
    method: str = "auto",
    cap: int = DEFAULT_ENUM_CAP,
    arity_cap: int = DEFAULT_ARITY_CAP,
) -> InvariantValue:
    """I = alpha_vp**(-p_b) * alpha_vm**(-n_b) * Z.

    method 'auto' prefers elimination and falls back to enumeration if the
    arity cap is hit.
    """
    if method not in ("auto", "naive", "eliminate"):
        raise ValueError(f"unknown method {method!r}")
    if method == "naive":
        z = partition_naive(g, r, cap)
        used, states = "naive", r.n ** g.n_vertices
    elif method == "eliminate":
        z, info = eliminate_with_order(g, r, arity_cap=arity_cap)
        used, states = "eliminate", g.n_vertices
    else:
        try:
            z, info = eliminate_with_order(g, r, arity_cap=arity_cap)
            used, states = "eliminate", g.n_vertices
        except WidthOverflow:
            z = partition_naive(g, r, cap)
            used, states = "naive", r.n ** g.n_vertices
    i = (r.alpha_vp ** -g.p_b) * (r.alpha_vm ** -g.n_b) * z
    return InvariantValue(z=complex(z), i=complex(i), n_states=states, method=used)


def invariant_of_diagram(
    d: SymmetricDiagram,
    r: RefinedSpinModel,
    method: str = "auto",
    tol: float = TAU_NUM,
) -> InvariantValue:
    """Evaluate through both checkerboard colorings and insist they agree.

    Disagreement beyond tol means a sign-convention bug, not a property of
    the diagram, and raises ColoringMismatch.
    """
    c0, c1 = checkerboard(d)
    first = normalized_invariant(tait_graph(d, c0), r, method=method)
    second = normalized_invariant(tait_graph(d, c1), r, method=method)
    if abs(first.i - second.i) > tol:
        raise ColoringMismatch(
            f"colorings give {first.i} vs {second.i} on {d.name}"
        )
    return first
