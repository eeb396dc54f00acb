"""Annotated planar diagram codes and their signed medial (Tait) graphs.

A .sud code lists crossings with four arc labels in counterclockwise order
starting at the incoming under-strand, plus an axis flag per crossing.  The
rotation system determines faces; a checkerboard coloring of the faces gives
one Tait vertex per black face and one signed edge per crossing.  Crossings
on the reflection axis yield axis-marked edges, and the signed counts of
axis crossings (p_b, n_b) ride along as diagram data.

A .smg file declares such a signed graph directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    AxisCountMismatch,
    NonPlanar,
    NotBipartite,
    OpenArc,
    ParseError,
)

AXIS_FLAGS = ("none", "pos", "neg")

# Single sign-convention switch: an edge is positive when the regions swept
# by rotating the over-strand counterclockwise onto the under-strand are the
# black ones.  Validated by reproducing the bundled closed-form invariants
# and by coloring independence; flipping it mirrors every diagram.
A_REGIONS_ARE_PLUS = True


@dataclass(frozen=True)
class Crossing:
    cid: int
    arcs: tuple[int, int, int, int]
    axis: str = "none"

    def __post_init__(self):
        if self.axis not in AXIS_FLAGS:
            raise ValueError(f"axis flag must be one of {AXIS_FLAGS}")
        if len(self.arcs) != 4:
            raise ValueError("a crossing has exactly four arc slots")


@dataclass(frozen=True)
class SymmetricDiagram:
    """A validated diagram code.

    components holds the inclusive arc-number range of each link component.
    """

    name: str
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, int], ...]

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_arcs(self) -> int:
        return 2 * len(self.crossings)

    def axis_counts(self) -> tuple[int, int]:
        p = sum(1 for c in self.crossings if c.axis == "pos")
        n = sum(1 for c in self.crossings if c.axis == "neg")
        return p, n


@dataclass(frozen=True)
class Coloring:
    """One of the two checkerboard colorings of a diagram's faces.

    corner_face[ci][k] is the face id at the corner between slots k and k+1
    of crossing ci; black is the set of black face ids.  index 0 is the
    coloring whose designated unbounded face is white.
    """

    index: int
    n_faces: int
    corner_face: tuple[tuple[int, int, int, int], ...]
    black: frozenset[int]
    outer: int


@dataclass(frozen=True)
class TaitEdge:
    u: int
    v: int
    sign: int
    axis: bool


@dataclass(frozen=True)
class TaitGraph:
    """Signed graph with axis-marked edges plus on-axis crossing counts.

    p_b and n_b are carried diagram data (signed axis-crossing counts);
    their sum always equals the number of axis-marked edges.
    """

    name: str
    n_vertices: int
    edges: tuple[TaitEdge, ...]
    p_b: int
    n_b: int

    def __post_init__(self):
        if self.p_b < 0 or self.n_b < 0:
            raise ValueError("axis-crossing counts must be nonnegative")
        axis_edges = sum(1 for e in self.edges if e.axis)
        if axis_edges != self.p_b + self.n_b:
            raise ValueError(
                f"{axis_edges} axis edges but p_b + n_b = {self.p_b + self.n_b}"
            )
        for e in self.edges:
            if not (0 <= e.u < self.n_vertices and 0 <= e.v < self.n_vertices):
                raise ValueError(f"edge ({e.u}, {e.v}) out of range")

    def degree(self, v: int) -> int:
        deg = 0
        for e in self.edges:
            deg += (e.u == v) + (e.v == v)
        return deg

    def incident(self, v: int) -> list[int]:
        return [k for k, e in enumerate(self.edges) if v in (e.u, e.v)]


# ------------------------------------------------------------------ parsing

_X_LINE = re.compile(
    r"^x\s+(\d+)\s+(\d+)\s+(\d+)\s+(\d+)\s+(\d+)\s+axis=(none|pos|neg)$"
)
_COMP_LINE = re.compile(r"^comp\s+(\d+)\s*\.\.\s*(\d+)$")


def parse_sud(text: str) -> SymmetricDiagram:
    """Parse and validate a .sud diagram code.

    Checks: four arc labels per crossing, every arc label used exactly
    twice, strand closure matching any declared components, and the Euler
    formula V - E + F = 2 on every connected piece of the underlying
    4-valent graph.
    """
    name = None
    crossings: list[Crossing] = []
    declared: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("sud"):
            parts = line.split(None, 1)
            if len(parts) != 2 or name is not None:
                raise ParseError("bad or repeated 'sud <name>' header", line=lineno)
            name = parts[1].strip()
        elif line.startswith("x"):
            m = _X_LINE.match(line)
            if not m:
                raise ParseError(f"bad crossing line {line!r}", line=lineno)
            cid = int(m.group(1))
            arcs = tuple(int(m.group(k)) for k in range(2, 6))
            crossings.append(Crossing(cid=cid, arcs=arcs, axis=m.group(6)))
        elif line.startswith("comp"):
            m = _COMP_LINE.match(line)
            if not m:
                raise ParseError(f"bad component line {line!r}", line=lineno)
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ParseError("component range reversed", line=lineno)
            declared.append((lo, hi))
        else:
            raise ParseError(f"unrecognized line {line!r}", line=lineno)
    if name is None:
        raise ParseError("missing 'sud <name>' header")

    counts: dict[int, int] = {}
    for c in crossings:
        for a in c.arcs:
            counts[a] = counts.get(a, 0) + 1
    for arc, cnt in sorted(counts.items()):
        if cnt != 2:
            raise OpenArc(f"arc {arc} appears {cnt} times (expected 2)")

    components = _strand_components(crossings)
    if declared:
        if sorted(declared) != sorted(components):
            raise ParseError(
                f"declared components {sorted(declared)} do not match "
                f"traced strands {sorted(components)}"
            )
    diagram = SymmetricDiagram(
        name=name, crossings=tuple(crossings), components=tuple(components)
    )
    _check_euler(diagram)
    return diagram


def format_sud(d: SymmetricDiagram) -> str:
    lines = [f"sud {d.name}"]
    for c in d.crossings:
        a = " ".join(str(x) for x in c.arcs)
        lines.append(f"x {c.cid} {a} axis={c.axis}")
    for lo, hi in d.components:
        lines.append(f"comp {lo}..{hi}")
    return "\n".join(lines) + "\n"


def _arc_ends(crossings) -> dict[int, list[tuple[int, int]]]:
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(crossings):
        for slot, arc in enumerate(c.arcs):
            ends.setdefault(arc, []).append((ci, slot))
    return ends


def _strand_components(crossings) -> list[tuple[int, int]]:
    """Trace strands (in through one slot, out at slot + 2) into components.

    Each component's arc labels must form a contiguous integer range.
    """
    if not crossings:
        return []
    ends = _arc_ends(crossings)
    other = {}
    for arc, pair in ends.items():
        if len(pair) == 1:  # self-paired arc label within one crossing line
            raise OpenArc(f"arc {arc} appears once")
        other[(arc, 0)] = pair[1]
        other[(arc, 1)] = pair[0]
    seen: set[tuple[int, int]] = set()
    comps: list[tuple[int, int]] = []
    for arc in sorted(ends):
        for side in (0, 1):
            if (arc, side) in seen:
                continue
            comp_arcs = set()
            # state (a, s): traversing arc a away from end ends[a][s]
            a, s = arc, side
            while (a, s) not in seen:
                seen.add((a, s))
                seen.add((a, 1 - s))  # the reverse traversal is the same strand
                comp_arcs.add(a)
                ci, slot = other[(a, s)]
                out_slot = (slot + 2) % 4
                a2 = crossings[ci].arcs[out_slot]
                pair = ends[a2]
                s = 0 if pair[0] == (ci, out_slot) else 1
                a = a2
            lo, hi = min(comp_arcs), max(comp_arcs)
            if hi - lo + 1 != len(comp_arcs):
                raise ParseError(
                    f"component arcs {sorted(comp_arcs)} are not numbered "
                    "contiguously"
                )
            comps.append((lo, hi))
    return comps


class _PlanarMap:
    """Faces of the rotation system, as orbits of corner traversal."""

    def __init__(self, d: SymmetricDiagram):
        crossings = d.crossings
        ends = _arc_ends(crossings)
        alpha: dict[tuple[int, int], tuple[int, int]] = {}
        for pair in ends.values():
            alpha[pair[0]] = pair[1]
            alpha[pair[1]] = pair[0]
        face_of: dict[tuple[int, int], int] = {}
        faces: list[list[tuple[int, int]]] = []
        for ci in range(len(crossings)):
            for slot in range(4):
                dart = (ci, slot)
                if dart in face_of:
                    continue
                fid = len(faces)
                orbit = []
                cur = dart
                while cur not in face_of:
                    face_of[cur] = fid
                    orbit.append(cur)
                    aci, aslot = alpha[cur]
                    cur = (aci, (aslot + 1) % 4)
                faces.append(orbit)
        self.faces = faces
        self.face_of = face_of
        # connected pieces of the 4-valent graph
        parent = list(range(len(crossings)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for pair in ends.values():
            a, b = find(pair[0][0]), find(pair[1][0])
            if a != b:
                parent[a] = b
        self.piece_of = [find(ci) for ci in range(len(crossings))]

    def corner_face(self, ci: int, k: int) -> int:
        # the corner between slots k and k+1 lies in the face of dart k+1
        return self.face_of[(ci, (k + 1) % 4)]


def _check_euler(d: SymmetricDiagram) -> None:
    if not d.crossings:
        return
    pmap = _PlanarMap(d)
    pieces: dict[int, list[int]] = {}
    for ci, p in enumerate(pmap.piece_of):
        pieces.setdefault(p, []).append(ci)
    face_piece = {}
    for fid, orbit in enumerate(pmap.faces):
        face_piece[fid] = pmap.piece_of[orbit[0][0]]
    for p, members in pieces.items():
        v = len(members)
        e = 2 * v
        f = sum(1 for fid in face_piece if face_piece[fid] == p)
        if v - e + f != 2:
            raise NonPlanar(
                f"piece with {v} crossings has V-E+F = {v - e + f}, expected 2"
            )


def checkerboard(d: SymmetricDiagram) -> tuple[Coloring, Coloring]:
    """Both checkerboard colorings of the faces.

    The first coloring paints the designated unbounded face white (for each
    connected piece, the face entered from its lowest-numbered crossing's
    first corner); the second is its complement.  Disconnected pieces are
    colored independently, matching the per-component definition of the
    partition function.
    """
    if not d.crossings:
        raise ValueError("empty diagram has no coloring")
    pmap = _PlanarMap(d)
    n_faces = len(pmap.faces)

    adj: dict[int, set[int]] = {fid: set() for fid in range(n_faces)}
    for ci in range(len(d.crossings)):
        for k in range(4):
            f1 = pmap.corner_face(ci, k)
            f2 = pmap.corner_face(ci, (k + 1) % 4)
            adj[f1].add(f2)
            adj[f2].add(f1)

    color: dict[int, int] = {}
    for ci, p in enumerate(pmap.piece_of):
        start = pmap.corner_face(ci, 0)
        if start in color:
            continue
        color[start] = 0  # white in coloring 0
        stack = [start]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if g not in color:
                    color[g] = 1 - color[f]
                    stack.append(g)
                elif color[g] == color[f]:
                    raise NotBipartite(f"faces {f} and {g} conflict")

    corner_face = tuple(
        tuple(pmap.corner_face(ci, k) for k in range(4))
        for ci in range(len(d.crossings))
    )
    black0 = frozenset(f for f, c in color.items() if c == 1)
    black1 = frozenset(f for f, c in color.items() if c == 0)
    outer = pmap.corner_face(0, 0)
    return (
        Coloring(index=0, n_faces=n_faces, corner_face=corner_face,
                 black=black0, outer=outer),
        Coloring(index=1, n_faces=n_faces, corner_face=corner_face,
                 black=black1, outer=outer),
    )


def tait_graph(d: SymmetricDiagram, c: Coloring) -> TaitGraph:
    """Signed medial graph on the black faces of a coloring.

    Each crossing contributes one edge joining the black faces at its
    opposite corners; slots are numbered from the incoming under-strand, so
    the over-strand occupies slots 1 and 3 and the regions swept by turning
    it counterclockwise are the corners 1 and 3.
    """
    vertex_of = {f: k for k, f in enumerate(sorted(c.black))}
    edges = []
    for ci, crossing in enumerate(d.crossings):
        faces = c.corner_face[ci]
        if faces[0] in c.black:
            pair = (0, 2)
        else:
            pair = (1, 3)
        if (faces[pair[0]] in c.black) != (faces[pair[1]] in c.black):
            raise NotBipartite(f"corners of crossing {crossing.cid} disagree")
        u = vertex_of[faces[pair[0]]]
        v = vertex_of[faces[pair[1]]]
        positive = (pair == (1, 3)) == A_REGIONS_ARE_PLUS
        edges.append(
            TaitEdge(u=u, v=v, sign=+1 if positive else -1,
                     axis=crossing.axis != "none")
        )
    p_b, n_b = d.axis_counts()
    return TaitGraph(
        name=f"{d.name}[c{c.index}]",
        n_vertices=len(vertex_of),
        edges=tuple(edges),
        p_b=p_b,
        n_b=n_b,
    )


def connected_sum(g1: TaitGraph, g2: TaitGraph, v1: int, v2: int) -> TaitGraph:
    """Glue two graphs by identifying v1 with v2.

    Vertex counts add minus one; axis-crossing counts add.
    """
    if not (0 <= v1 < g1.n_vertices and 0 <= v2 < g2.n_vertices):
        raise ValueError("gluing vertices out of range")

    def relabel(v: int) -> int:
        if v == v2:
            return v1
        return v + g1.n_vertices - (1 if v > v2 else 0)

    edges = list(g1.edges)
    for e in g2.edges:
        edges.append(TaitEdge(relabel(e.u), relabel(e.v), e.sign, e.axis))
    return TaitGraph(
        name=f"{g1.name}#{g2.name}",
        n_vertices=g1.n_vertices + g2.n_vertices - 1,
        edges=tuple(edges),
        p_b=g1.p_b + g2.p_b,
        n_b=g1.n_b + g2.n_b,
    )


# ------------------------------------------------------------------- .smg

_E_LINE = re.compile(r"^e\s+(\d+)\s+(\d+)\s+([+-])\s+(axis|off)$")


def parse_smg(text: str) -> TaitGraph:
    """Parse a directly declared signed medial graph.

    Vertices are 1-based in the file.  The number of axis edges must equal
    the declared PB + NB.
    """
    name = None
    n = pb = nb = None
    edges: list[TaitEdge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        token = line.split()[0]
        if token == "smg":
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ParseError("bad 'smg <name>' header", line=lineno)
            name = parts[1].strip()
        elif token in ("N", "PB", "NB"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"bad {token} line {line!r}", line=lineno)
            if token == "N":
                n = int(parts[1])
            elif token == "PB":
                pb = int(parts[1])
            else:
                nb = int(parts[1])
        elif token == "e":
            m = _E_LINE.match(line)
            if not m:
                raise ParseError(f"bad edge line {line!r}", line=lineno)
            u, v = int(m.group(1)) - 1, int(m.group(2)) - 1
            edges.append(
                TaitEdge(u=u, v=v, sign=+1 if m.group(3) == "+" else -1,
                         axis=m.group(4) == "axis")
            )
        else:
            raise ParseError(f"unrecognized line {line!r}", line=lineno)
    if name is None or n is None or pb is None or nb is None:
        raise ParseError("missing smg/N/PB/NB header")
    for e in edges:
        if not (0 <= e.u < n and 0 <= e.v < n):
            raise ParseError(f"edge ({e.u + 1}, {e.v + 1}) out of range")
    axis_edges = sum(1 for e in edges if e.axis)
    if axis_edges != pb + nb:
        raise AxisCountMismatch(
            f"{axis_edges} axis edges but PB + NB = {pb + nb}"
        )
    return TaitGraph(name=name, n_vertices=n, edges=tuple(edges), p_b=pb, n_b=nb)


def format_smg(g: TaitGraph) -> str:
    lines = [f"smg {g.name}", f"N {g.n_vertices}", f"PB {g.p_b}", f"NB {g.n_b}"]
    for e in g.edges:
        sign = "+" if e.sign > 0 else "-"
        loc = "axis" if e.axis else "off"
        lines.append(f"e {e.u + 1} {e.v + 1} {sign} {loc}")
    return "\n".join(lines) + "\n"
