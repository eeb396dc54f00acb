#!/usr/bin/env python3
"""Regenerate the bundled diagram fixtures.

Each hand-transcribed diagram is recorded as, per crossing, the
counterclockwise list of (segment id, goes-over flag) around the crossing
plus an axis annotation.  This script orients the strands, numbers the arcs,
rotates every crossing so the incoming under-strand comes first, and writes
.sud files (plus .smg exports of one Tait graph each) into
src/refspin/fixtures/.

The synthetic families are built here too: axis twist chains (unknots whose
crossings all sit on the axis) and mirror unions (a twist column, its mirror
image, and a band across the axis, optionally with an axis kink on the
band).
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from refspin import diagram as dg  # noqa: E402

FIXDIR = ROOT / "src" / "refspin" / "fixtures"

# crossing -> ([(segment, over), ...] counterclockwise, axis flag)
Table = dict[str, tuple[list[tuple[int, bool]], str]]

O, U = True, False

# Ten-crossing-knot pair: the first diagram has four axis crossings, the
# second two.  Transcribed from the published pictures.
D1042: Table = {
    "l1": ([(1, O), (4, U), (2, O), (3, U)], "none"),
    "m1": ([(9, U), (8, O), (1, U), (5, O)], "pos"),
    "r1": ([(6, O), (7, U), (5, O), (3, U)], "none"),
    "l2": ([(11, O), (10, U), (4, O), (8, U)], "none"),
    "r2": ([(15, U), (14, O), (9, U), (7, O)], "none"),
    "m2": ([(13, O), (12, U), (11, O), (14, U)], "neg"),
    "l3": ([(16, O), (18, U), (10, O), (12, U)], "none"),
    "r3": ([(19, U), (17, O), (13, U), (15, O)], "none"),
    "m3": ([(25, U), (24, O), (16, U), (17, O)], "pos"),
    "l4": ([(22, O), (20, U), (18, O), (24, U)], "none"),
    "r4": ([(21, U), (23, O), (25, U), (19, O)], "none"),
    "m4": ([(31, O), (30, U), (22, O), (23, U)], "neg"),
    "l5": ([(26, U), (28, O), (2, U), (20, O)], "none"),
    "r5": ([(29, O), (27, U), (21, O), (6, U)], "none"),
    "l6": ([(32, O), (28, U), (26, O), (30, U)], "none"),
    "r6": ([(29, U), (32, O), (31, U), (27, O)], "none"),
}

D1042P: Table = {
    "l1": ([(2, O), (4, U), (16, O), (1, U)], "none"),
    "r1": ([(5, U), (3, O), (1, U), (17, O)], "none"),
    "l2": ([(6, O), (8, U), (4, O), (2, U)], "none"),
    "r2": ([(9, U), (7, O), (3, U), (5, O)], "none"),
    "l3": ([(14, O), (12, U), (8, O), (10, U)], "none"),
    "r3": ([(13, U), (15, O), (11, U), (9, O)], "none"),
    "m1": ([(11, O), (10, U), (6, O), (7, U)], "neg"),
    "m2": ([(21, U), (19, O), (14, U), (15, O)], "pos"),
    "l4": ([(19, U), (26, O), (18, U), (12, O)], "none"),
    "r4": ([(20, U), (27, O), (21, U), (13, O)], "none"),
    "l5": ([(22, U), (24, O), (16, U), (18, O)], "none"),
    "r5": ([(25, O), (23, U), (20, O), (17, U)], "none"),
    "l6": ([(28, O), (24, U), (22, O), (26, U)], "none"),
    "r6": ([(25, U), (28, O), (27, U), (23, O)], "none"),
}

# Eight-crossing-knot diagram with three axis crossings; its partner is the
# same code with every axis crossing switched.
D89: Table = {
    "l1": ([(1, U), (6, O), (25, U), (5, O)], "none"),
    "r1": ([(7, O), (2, U), (5, O), (26, U)], "none"),
    "m1": ([(4, U), (3, O), (1, U), (2, O)], "pos"),
    "l2": ([(10, U), (8, O), (6, U), (3, O)], "none"),
    "r2": ([(9, O), (11, U), (4, O), (7, U)], "none"),
    "l3": ([(14, U), (12, O), (8, U), (10, O)], "none"),
    "r3": ([(13, O), (16, U), (11, O), (9, U)], "none"),
    "m2": ([(15, O), (17, U), (14, O), (16, U)], "neg"),
    "l4": ([(20, U), (18, O), (12, U), (17, O)], "none"),
    "r4": ([(19, O), (21, U), (15, O), (13, U)], "none"),
    "m3": ([(23, U), (22, O), (20, U), (21, O)], "pos"),
    "l5": ([(24, U), (25, O), (18, U), (22, O)], "none"),
    "r5": ([(26, O), (24, U), (23, O), (19, U)], "none"),
}


def switch_axis_crossings(table: Table) -> Table:
    """Swap over/under and flip the annotation at every axis crossing."""
    out: Table = {}
    for name, (slots, axis) in table.items():
        if axis == "none":
            out[name] = (list(slots), axis)
        else:
            out[name] = (
                [(seg, not over) for seg, over in slots],
                "pos" if axis == "neg" else "neg",
            )
    return out


# ------------------------------------------------------------- generators


def axis_chain(flags: list[str]) -> Table:
    """Unknot drawn as a vertical chain of axis crossings.

    flags[i] is 'ne' when the strand from lower left to upper right goes
    over at crossing i (a negative axis crossing) and 'nw' for the switched
    crossing.  Slots run counterclockwise NE, NW, SW, SE.
    """
    k = len(flags)
    seg = {"bottom": 1, "top": 2}
    nseg = 2
    left, right = {}, {}
    for i in range(k - 1):
        nseg += 1
        left[i] = nseg
        nseg += 1
        right[i] = nseg
    table: Table = {}
    for i, flag in enumerate(flags):
        ne = seg["top"] if i == k - 1 else right[i]
        nw = seg["top"] if i == k - 1 else left[i]
        sw = seg["bottom"] if i == 0 else left[i - 1]
        se = seg["bottom"] if i == 0 else right[i - 1]
        if flag == "ne":
            slots = [(ne, O), (nw, U), (sw, O), (se, U)]
            axis = "neg"
        elif flag == "nw":
            slots = [(ne, U), (nw, O), (sw, U), (se, O)]
            axis = "pos"
        else:
            raise ValueError(flag)
        table[f"c{i + 1}"] = (slots, axis)
    return table


def mirror_union(twists: int, kinks: list[str]) -> Table:
    """A twist column, its mirror image, and a band across the axis.

    The two columns are joined by an outer arc over the top and an inner
    arc; at most one axis kink may be inserted on the inner arc.
    """
    if len(kinks) > 1:
        raise ValueError("only one band kink keeps the union form")
    counter = [0]

    def new() -> int:
        counter[0] += 1
        return counter[0]

    table: Table = {}
    bl = new()
    outer_l = {i: new() for i in range(twists - 1)}
    inner_l = {i: new() for i in range(twists - 1)}
    br = new()
    outer_r = {i: new() for i in range(twists - 1)}
    inner_r = {i: new() for i in range(twists - 1)}
    to = new()  # outer band arc
    if kinks:
        ti_l, loop, ti_r = new(), new(), new()
    else:
        ti_l = ti_r = new()

    for i in range(twists):  # left column goes over on the SW-NE diagonal
        ne = ti_l if i == twists - 1 else inner_l[i]
        nw = to if i == twists - 1 else outer_l[i]
        sw = bl if i == 0 else outer_l[i - 1]
        se = bl if i == 0 else inner_l[i - 1]
        table[f"L{i + 1}"] = ([(ne, O), (nw, U), (sw, O), (se, U)], "none")
    for i in range(twists):  # mirrored handedness on the right
        ne = to if i == twists - 1 else outer_r[i]
        nw = ti_r if i == twists - 1 else inner_r[i]
        sw = br if i == 0 else inner_r[i - 1]
        se = br if i == 0 else outer_r[i - 1]
        table[f"R{i + 1}"] = ([(ne, U), (nw, O), (sw, U), (se, O)], "none")
    for j, flag in enumerate(kinks):
        if flag == "ne":
            slots = [(loop, O), (loop, U), (ti_l, O), (ti_r, U)]
            axis = "neg"
        elif flag == "nw":
            slots = [(loop, U), (loop, O), (ti_l, U), (ti_r, O)]
            axis = "pos"
        else:
            raise ValueError(flag)
        table[f"K{j + 1}"] = (slots, axis)
    return table


# --------------------------------------------------------------- emission


def emit_sud(name: str, table: Table) -> str:
    names = list(table)
    index = {c: k for k, c in enumerate(names)}
    ends: dict[int, list[tuple[int, int]]] = {}
    for cname, (slots, _) in table.items():
        if len(slots) != 4:
            raise ValueError(f"{cname} has {len(slots)} slots")
        over = [o for _, o in slots]
        if over[0] != over[2] or over[1] != over[3] or over[0] == over[1]:
            raise ValueError(f"{cname} over/under flags do not alternate")
        for slot, (seg, _) in enumerate(slots):
            ends.setdefault(seg, []).append((index[cname], slot))
    for seg, pair in sorted(ends.items()):
        if len(pair) != 2:
            raise ValueError(f"segment {seg} has {len(pair)} ends")

    # orient strands: walk in through a slot, out at slot + 2
    arc_no: dict[int, int] = {}
    incoming: set[tuple[int, int]] = set()
    comp_ranges: list[tuple[int, int]] = []
    next_arc = 1
    visited: set[int] = set()
    for seg0 in sorted(ends):
        if seg0 in visited:
            continue
        start = next_arc
        seg, end_idx = seg0, 0  # travel seg0 toward its first-listed end
        while seg not in visited:
            visited.add(seg)
            arc_no[seg] = next_arc
            next_arc += 1
            ci, slot = ends[seg][end_idx]
            incoming.add((ci, slot))
            out_slot = (slot + 2) % 4
            seg2 = table[names[ci]][0][out_slot][0]
            end_idx = 1 if ends[seg2][0] == (ci, out_slot) else 0
            seg = seg2
        comp_ranges.append((start, next_arc - 1))

    lines = [f"sud {name}"]
    for cname in names:
        slots, axis = table[cname]
        under_in = [
            s
            for s, (seg, over) in enumerate(slots)
            if not over and (index[cname], s) in incoming
        ]
        if len(under_in) != 1:
            raise ValueError(f"{cname}: incoming under-strand ambiguous")
        s0 = under_in[0]
        arcs = [arc_no[slots[(s0 + k) % 4][0]] for k in range(4)]
        lines.append(
            f"x {index[cname] + 1} {arcs[0]} {arcs[1]} {arcs[2]} {arcs[3]} "
            f"axis={axis}"
        )
    for lo, hi in comp_ranges:
        lines.append(f"comp {lo}..{hi}")
    return "\n".join(lines) + "\n"


FIXTURES = {
    "d1042": D1042,
    "d1042p": D1042P,
    "d89": D89,
    "d89p": switch_axis_crossings(D89),
    "chain1n": axis_chain(["ne"]),
    "chain1p": axis_chain(["nw"]),
    "chain2": axis_chain(["ne", "nw"]),
    "chain3": axis_chain(["ne", "nw", "ne"]),
    "chain5": axis_chain(["ne", "ne", "nw", "ne", "nw"]),
    "union3": mirror_union(3, []),
    "union3k": mirror_union(3, ["ne"]),
    "union1k": mirror_union(1, ["nw"]),
}

TRIVIAL_SMG = "smg trivial\nN 1\nPB 0\nNB 0\n"


def main() -> None:
    FIXDIR.mkdir(parents=True, exist_ok=True)
    for name, table in FIXTURES.items():
        text = emit_sud(name, table)
        d = dg.parse_sud(text)  # planarity, closure, component validation
        c0, c1 = dg.checkerboard(d)
        g0 = dg.tait_graph(d, c0)
        g1 = dg.tait_graph(d, c1)
        path = FIXDIR / f"{name}.sud"
        path.write_text(text, encoding="utf-8")
        print(
            f"{name}: V={d.n_crossings} E={d.n_arcs} F={c0.n_faces} "
            f"comps={len(d.components)} p_b={g0.p_b} n_b={g0.n_b} "
            f"N0={g0.n_vertices} N1={g1.n_vertices}"
        )
    for name in ("d1042", "d1042p", "d89", "d89p"):
        d = dg.parse_sud((FIXDIR / f"{name}.sud").read_text(encoding="utf-8"))
        c0, _ = dg.checkerboard(d)
        g = dg.tait_graph(d, c0)
        g = dg.TaitGraph(name=name, n_vertices=g.n_vertices, edges=g.edges,
                         p_b=g.p_b, n_b=g.n_b)
        (FIXDIR / f"{name}.smg").write_text(dg.format_smg(g), encoding="utf-8")
    (FIXDIR / "trivial.smg").write_text(TRIVIAL_SMG, encoding="utf-8")
    print("wrote", FIXDIR)


if __name__ == "__main__":
    main()
