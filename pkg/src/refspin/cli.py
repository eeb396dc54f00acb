"""Command-line front end.

Subcommands: validate-model, invariant, compare, gluing-check,
rewrite-fuzz, paper-repro.  Global flags --tol, --method and --json apply
to every subcommand.  Exit codes: 0 success, 1 a check failed, 2 parse
error, 3 invalid model, 4 resource limit hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import models, repro, rewrites
from .diagram import checkerboard, connected_sum, parse_smg, parse_sud, tait_graph
from .engine import invariant_of_diagram, normalized_invariant
from .errors import (
    BadLoopValue,
    ColoringMismatch,
    NotInNomura,
    NotSymmetric,
    ParseError,
    RefspinError,
    TooLarge,
    TypeIIIFailure,
    WidthOverflow,
    ZeroEntry,
    ZeroModulus,
)
from .models import format_complex

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_MODEL = 3
EXIT_RESOURCE = 4

_MODEL_ERRORS = (
    NotSymmetric,
    NotInNomura,
    ZeroModulus,
    ZeroEntry,
    BadLoopValue,
    TypeIIIFailure,
)


@dataclass
class RunReport:
    """What a subcommand did: inputs, labeled results, tolerance, timing."""

    command: str
    inputs: dict[str, str]
    tolerance: float
    method: str
    results: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def add_value(self, label: str, value: complex) -> None:
        self.results.append({"label": label, "value": format_complex(value)})

    def add_check(self, label: str, passed: bool, detail: str = "") -> None:
        self.results.append(
            {"label": label, "pass": bool(passed), "detail": detail}
        )

    def add_info(self, label: str, text: str) -> None:
        self.results.append({"label": label, "info": text})

    @property
    def all_passed(self) -> bool:
        return all(r.get("pass", True) for r in self.results)

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "inputs": self.inputs,
                "tolerance": self.tolerance,
                "method": self.method,
                "results": self.results,
                "wall_time_s": self.wall_time,
            },
            indent=2,
        )

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        for key, val in self.inputs.items():
            lines.append(f"#   {key}: {val}")
        for r in self.results:
            if "value" in r:
                lines.append(f"{r['label']} = {r['value']}")
            elif "info" in r:
                lines.append(f"{r['label']}: {r['info']}")
            else:
                mark = "PASS" if r["pass"] else "FAIL"
                detail = f"  ({r['detail']})" if r.get("detail") else ""
                lines.append(f"[{mark}] {r['label']}{detail}")
        lines.append(
            f"# tolerance {self.tolerance:g}, method {self.method}, "
            f"{self.wall_time:.3f}s"
        )
        return "\n".join(lines)


def _load_model(spec: str):
    return models.parse_model_spec(spec)


def _load_graph_any(path: str):
    """A Tait graph from a .smg file or from a .sud file's first coloring."""
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".sud"):
        d = parse_sud(text)
        return tait_graph(d, checkerboard(d)[0])
    return parse_smg(text)


def _diagram_or_graph(path: str):
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".sud"):
        return parse_sud(text), None
    return None, parse_smg(text)


def _cmd_validate_model(args, report: RunReport) -> int:
    r = _load_model(args.model)
    base = r.base
    w = base.w_plus
    report.add_check(
        "weight matrix symmetric",
        True,
        f"residual {float(np.max(np.abs(w - w.T))):.2e}",
    )
    report.add_check(
        "entrywise reciprocal partner",
        True,
        f"residual {float(np.max(np.abs(w * base.w_minus - 1))):.2e}",
    )
    report.add_check("loop value d**2 = n", True, f"d = {base.d:.17g}, n = {base.n}")
    worst = 0.0
    ys = base.y_vectors()
    for a in range(base.n):
        for b in range(base.n):
            y = ys[a, b]
            worst = max(
                worst,
                float(np.max(np.abs(w @ y - base.d * base.w_minus[a, b] * y))),
            )
    report.add_check("eigen-equations on quotient vectors", True,
                     f"worst residual {worst:.2e}")
    report.add_value("alpha_w", base.alpha_w)
    report.add_check("axis matrix in the eigenvector algebra", True, "")
    report.add_value("alpha_v_plus", r.alpha_vp)
    report.add_value("alpha_v_minus", r.alpha_vm)
    report.add_check("moduli nonzero", True,
                     f"product {format_complex(r.alpha_vp * r.alpha_vm)}")
    report.add_info("type II", "yes" if r.type_ii else "no")
    report.add_info(
        "translation invariant",
        "yes" if models.is_translation_invariant(r) else "no",
    )
    return EXIT_OK


def _cmd_invariant(args, report: RunReport) -> int:
    r = _load_model(args.model)
    d, g = _diagram_or_graph(args.file)
    if d is not None:
        c0, c1 = checkerboard(d)
        for c in (c0, c1):
            val = normalized_invariant(tait_graph(d, c), r, method=args.method)
            report.add_value(f"Z[coloring {c.index}]", val.z)
            report.add_value(f"I[coloring {c.index}]", val.i)
        iv = invariant_of_diagram(d, r, method=args.method, tol=args.tol)
        report.add_check("colorings agree", True, f"within {args.tol:g}")
        report.add_value("I", iv.i)
    else:
        val = normalized_invariant(g, r, method=args.method)
        report.add_value("Z", val.z)
        report.add_value("I", val.i)
    return EXIT_OK


def _invariant_of_path(path: str, r, method: str, tol: float) -> complex:
    d, g = _diagram_or_graph(path)
    if d is not None:
        return invariant_of_diagram(d, r, method=method, tol=tol).i
    return normalized_invariant(g, r, method=method).i


def _cmd_compare(args, report: RunReport) -> int:
    r = _load_model(args.model)
    ia = _invariant_of_path(args.file_a, r, args.method, args.tol)
    ib = _invariant_of_path(args.file_b, r, args.method, args.tol)
    report.add_value("I_A", ia)
    report.add_value("I_B", ib)
    gap = abs(ia - ib)
    distinguished = gap > 10 * args.tol
    verdict = "DISTINGUISHED" if distinguished else "NOT DISTINGUISHED"
    report.add_check(verdict, True, f"|I_A - I_B| = {gap:.6e}")
    return EXIT_OK


def _cmd_gluing_check(args, report: RunReport) -> int:
    r = _load_model(args.model)
    if not models.is_translation_invariant(r):
        report.add_check("model translation invariant", False,
                         "gluing formula needs a translation-invariant model")
        return EXIT_CHECK_FAILED
    g1 = _load_graph_any(args.file_a)
    g2 = _load_graph_any(args.file_b)
    i1 = normalized_invariant(g1, r, method=args.method).i
    i2 = normalized_invariant(g2, r, method=args.method).i
    glued = connected_sum(g1, g2, 0, 0)
    i12 = normalized_invariant(glued, r, method=args.method).i
    report.add_value("I_A", i1)
    report.add_value("I_B", i2)
    report.add_value("I_A#B", i12)
    gap = abs(i12 - i1 * i2 / r.d)
    ok = gap < args.tol
    report.add_check("I(A#B) = I(A) I(B) / d", ok, f"gap {gap:.2e}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_rewrite_fuzz(args, report: RunReport) -> int:
    r = _load_model(args.model)
    g = _load_graph_any(args.file)
    base = normalized_invariant(g, r, method=args.method).i
    fuzzed = rewrites.random_equivalent(g, args.seed, args.steps, model=r)
    after = normalized_invariant(fuzzed, r, method=args.method).i
    report.add_value("I_before", base)
    report.add_value("I_after", after)
    gap = abs(after - base)
    ok = gap < args.tol
    report.add_check(
        "invariant preserved",
        ok,
        f"{args.steps} steps, N {g.n_vertices} -> {fuzzed.n_vertices}, "
        f"gap {gap:.2e}",
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_paper_repro(args, report: RunReport) -> int:
    ok = True
    for res in repro.run_all():
        report.add_check(res.label, res.passed,
                         f"{res.detail} [{res.seconds:.2f}s]")
        ok = ok and res.passed
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refspin",
        description="Refined spin-model invariants of symmetric union diagrams",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9,
                        help="comparison tolerance (default 1e-9)")
    common.add_argument("--method", choices=("naive", "eliminate", "auto"),
                        default="auto", help="evaluation method")
    common.add_argument("--json", action="store_true",
                        help="machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-model", parents=[common],
                       help="check the model axioms and print a report")
    p.add_argument("--model", required=True)
    p.set_defaults(func=_cmd_validate_model)

    p = sub.add_parser("invariant", parents=[common],
                       help="evaluate Z and I on a .sud or .smg file")
    p.add_argument("--model", required=True)
    p.add_argument("file")
    p.set_defaults(func=_cmd_invariant)

    p = sub.add_parser("compare", parents=[common],
                       help="evaluate two files and report DISTINGUISHED "
                            "when the invariants differ")
    p.add_argument("--model", required=True)
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("gluing-check", parents=[common],
                       help="verify I(A#B) = I(A) I(B) / d")
    p.add_argument("--model", required=True)
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_gluing_check)

    p = sub.add_parser("rewrite-fuzz", parents=[common],
                       help="apply seeded random rewrites and check I")
    p.add_argument("--model", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=25)
    p.add_argument("file")
    p.set_defaults(func=_cmd_rewrite_fuzz)

    p = sub.add_parser("paper-repro", parents=[common],
                       help="run the bundled reproduction suite")
    p.set_defaults(func=_cmd_paper_repro)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {
        k: str(v)
        for k, v in vars(args).items()
        if k in ("model", "file", "file_a", "file_b", "seed", "steps")
    }
    report = RunReport(command=args.command, inputs=inputs,
                       tolerance=args.tol, method=args.method)
    t0 = time.perf_counter()
    try:
        code = args.func(args, report)
    except _MODEL_ERRORS as exc:
        report.add_check("model valid", False, str(exc))
        code = EXIT_MODEL
    except (ParseError, FileNotFoundError) as exc:
        report.add_check("input parsed", False, str(exc))
        code = EXIT_PARSE
    except (TooLarge, WidthOverflow) as exc:
        report.add_check("within resource limits", False, str(exc))
        code = EXIT_RESOURCE
    except ColoringMismatch as exc:
        report.add_check("colorings agree", False, str(exc))
        code = EXIT_CHECK_FAILED
    except RefspinError as exc:
        report.add_check(args.command, False, str(exc))
        code = EXIT_CHECK_FAILED
    report.wall_time = time.perf_counter() - t0
    print(report.to_json() if args.json else report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
