"""Access to the bundled diagram fixtures.

Four hand-transcribed symmetric union diagrams come with the package: the
pair d1042 / d1042p (the same ten-crossing knot, four vs. two axis
crossings) and the pair d89 / d89p (an eight-crossing knot and the diagram
obtained by switching its three axis crossings).  The chain* and union*
files are synthetic symmetric unions used by the property suites, and the
.smg files are exported Tait graphs.
"""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path

from .diagram import SymmetricDiagram, TaitGraph, parse_smg, parse_sud

DIAGRAMS = (
    "d1042",
    "d1042p",
    "d89",
    "d89p",
    "chain1n",
    "chain1p",
    "chain2",
    "chain3",
    "chain5",
    "union3",
    "union3k",
    "union1k",
)
SYNTHETIC = DIAGRAMS[4:]
GRAPHS = ("d1042", "d1042p", "d89", "d89p", "trivial")


def fixture_path(filename: str) -> Path:
    """Filesystem path of a bundled fixture file (e.g. 'd1042.sud')."""
    path = Path(str(files("refspin").joinpath("fixtures", filename)))
    if not path.exists():
        raise FileNotFoundError(f"no bundled fixture {filename!r}")
    return path


def load_diagram(name: str) -> SymmetricDiagram:
    return parse_sud(fixture_path(f"{name}.sud").read_text(encoding="utf-8"))


def load_graph(name: str) -> TaitGraph:
    return parse_smg(fixture_path(f"{name}.smg").read_text(encoding="utf-8"))
