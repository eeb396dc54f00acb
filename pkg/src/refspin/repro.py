"""One-shot reproduction suite for the bundled diagrams and models.

Every check pins the closed-form value or identity it targets together
with its tolerance; run_all() drives them all and is what both the
acceptance tests and the command line expose.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import algebra, fixtures, models, rewrites
from .diagram import TaitEdge, TaitGraph, checkerboard, connected_sum, tait_graph
from .engine import (
    eliminate_with_order,
    invariant_of_diagram,
    normalized_invariant,
    partition_naive,
)
from .errors import TooLarge

D3 = -math.sqrt(3.0)
D5 = math.sqrt(5.0)


@dataclass(frozen=True)
class CheckResult:
    label: str
    passed: bool
    detail: str
    seconds: float


def _timed(label, fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(label, passed, detail, time.perf_counter() - t0)


# closed forms for the bundled pairs -----------------------------------


def expected_1042(a: complex, b: complex) -> tuple[complex, complex]:
    """Invariants of d1042 / d1042p under the a I + b (J - I) family."""
    return (
        D3 * (a ** 3 + 6 * a ** 2 * b + 2 * b ** 3) / (a * (a + 2 * b) ** 2),
        3 * a * D3 / (a + 2 * b),
    )


def expected_89(a: complex, b: complex, c: complex) -> tuple[complex, complex]:
    """Invariants of d89 / d89p under the a I + b A1 + c A2 family."""
    d = D5
    first = d * (
        a * (a * a + 2 * a * b + 2 * a * c + 2 * b * b + 2 * c * c)
        + (d - 1) * (b ** 3 + c ** 3)
        - (d + 1) * b * c * (b + c)
    ) / (a * a * (a + 2 * b + 2 * c))
    second = d * (
        a * a * (a + 6 * b + 6 * c)
        + 2 * (d + 1) * a * (b * b + c * c)
        + (3 - d) * (b ** 3 + c ** 3)
        + 4 * (1 - d) * a * b * c
        + (d - 1) * b * c * (b + c)
    ) / (a * (a + 2 * b + 2 * c) ** 2)
    return first, second


def _diagram_invariant(name: str, r) -> complex:
    return invariant_of_diagram(fixtures.load_diagram(name), r).i


def _graph(name: str, coloring: int = 0) -> TaitGraph:
    d = fixtures.load_diagram(name)
    return tait_graph(d, checkerboard(d)[coloring])


def _random_rationals(rng, lo=-6, hi=7, den=4) -> complex:
    return complex(Fraction(int(rng.integers(lo, hi)), int(rng.integers(1, den))))


def type_ii_family_parameters() -> list[tuple[complex, complex]]:
    """Parameters (a, b) making a I + b (J - I) a type-II refinement of the
    three-state Potts model: a = w b with w**2 + w + 1 = 0 and
    b**2 (w - 1) = d."""
    out = []
    for w in (cmath.exp(2j * math.pi / 3), cmath.exp(-2j * math.pi / 3)):
        b = cmath.sqrt(D3 / (w - 1))
        out.append((w * b, b))
    return out


# ---------------------------------------------------------------- checks


def check_1042_closed_forms(tol=1e-9, samples=20):
    def run():
        rng = np.random.default_rng(42)
        worst = 0.0
        done = 0
        while done < samples:
            a = _random_rationals(rng)
            b = _random_rationals(rng)
            if abs(a * (a + 2 * b)) <= 0.1:
                continue
            done += 1
            r = models.make_potts_family(a, b)
            ea, eb = expected_1042(a, b)
            worst = max(
                worst,
                abs(_diagram_invariant("d1042", r) - ea),
                abs(_diagram_invariant("d1042p", r) - eb),
            )
        return worst < tol, f"{samples} rational pairs, worst gap {worst:.2e}"

    return _timed("ten-crossing pair: family closed forms", run)


def check_1042_point_values(tol=1e-9):
    def run():
        r = models.make_potts_family(1.0, 0.0)
        g1 = abs(_diagram_invariant("d1042", r) - D3)
        g2 = abs(_diagram_invariant("d1042p", r) - 3 * D3)
        return max(g1, g2) < tol, f"gaps {g1:.2e}, {g2:.2e} at (a,b)=(1,0)"

    return _timed("ten-crossing pair: -sqrt(3) vs -3 sqrt(3)", run)


def check_89_closed_forms(tol=1e-6, samples=20):
    def run():
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(samples):
            b = complex(rng.uniform(-2, 2), 0.0)
            if abs(b) < 0.05:
                b = 0.5 + 0j
            r = models.make_pentagonal_family(1.0, b, -b)
            worst = max(
                worst,
                abs(_diagram_invariant("d89", r) - D5 * (4 * b * b + 1)),
                abs(_diagram_invariant("d89p", r) - (40 * b * b + D5)),
            )
        # switched-crossing values at the type-II point, trying both square
        # roots of (1 - sqrt(5))/2; one branch must reproduce them
        branch_ok = []
        for xi in (models.potts_xi_candidates(D5)[0],
                   models.potts_xi_candidates(D5)[1]):
            r = models.make_pentagonal_family(-(xi ** -3), xi, xi)
            g1 = abs(_diagram_invariant("d89", r) - (-5 * D5 + 10))
            g2 = abs(_diagram_invariant("d89p", r) - (-5 * D5 - 10))
            branch_ok.append(max(g1, g2) < tol)
        ok = worst < tol and any(branch_ok)
        return ok, (
            f"{samples} samples on a=1, c=-b, worst gap {worst:.2e}; "
            f"type-II point branches {branch_ok}"
        )

    return _timed("eight-crossing pair: family closed forms", run)


def check_model_axioms(tol=1e-9):
    def run():
        for n in (2, 3, 4, 5):
            for d_sign in (1, -1):
                for k in range(4):
                    models.make_potts(n, d_sign, k)  # raises on failure
        pent = models.make_pentagonal()
        rng = np.random.default_rng(3)
        worst = 0.0
        base3 = models.make_potts(3, -1, 0)
        eye3 = np.eye(3, dtype=complex)
        ones3 = np.ones((3, 3), dtype=complex)
        for _ in range(10):
            a, b = (complex(*rng.uniform(-2, 2, 2)) for _ in range(2))
            v = a * eye3 + b * (ones3 - eye3)
            image = algebra.psi_image(v, base3)
            want = (a + 2 * b) * eye3 + (a - b) * (ones3 - eye3)
            worst = max(worst, float(np.max(np.abs(image - want))))
        for mat in (np.eye(5), np.ones((5, 5)), pent.w_plus,
                    models.PENT_A1, models.PENT_A2):
            twice = algebra.psi_image(algebra.psi_image(mat, pent), pent)
            back = 5 * np.asarray(mat, dtype=complex).T
            worst = max(worst, float(np.max(np.abs(twice - back))))
        for _ in range(10):
            a, b, c = (complex(*rng.uniform(-2, 2, 2)) for _ in range(3))
            if abs(a * (a + 2 * b + 2 * c)) < 0.1:
                a = a + 1.0
            r = models.make_pentagonal_family(a, b, c)
            worst = max(worst, abs(r.alpha_vm - (a + 2 * b + 2 * c) / D5))
        return worst < tol, f"worst identity gap {worst:.2e}"

    return _timed("model axioms and duality identities", run)


def model_battery() -> list:
    base3 = models.make_potts(3, -1, 0)
    pent = models.make_pentagonal()
    return [
        models.make_refined(base3, base3.w_plus),
        models.make_potts_family(1.0, 0.0),
        models.make_potts_family(2.0, 0.3),
        models.make_potts_refinement(base3, 0),
        models.make_refined(pent, pent.w_plus),
        models.make_pentagonal_family(1.0, 0.5, -0.5),
        models.make_pentagonal_family(2.0, 0.5, -1.0),
        models.make_potts_refinement(pent, 0),
    ]


def check_coloring_independence(tol=1e-9):
    def run():
        worst = 0.0
        for name in fixtures.DIAGRAMS:
            d = fixtures.load_diagram(name)
            c0, c1 = checkerboard(d)
            g0, g1 = tait_graph(d, c0), tait_graph(d, c1)
            for r in model_battery():
                gap = abs(normalized_invariant(g0, r).i
                          - normalized_invariant(g1, r).i)
                worst = max(worst, gap)
        n = len(fixtures.DIAGRAMS)
        return worst < tol, f"{n} diagrams x 8 models, worst gap {worst:.2e}"

    return _timed("coloring independence on all fixtures", run)


def check_rewrite_soundness(tol=1e-9, runs=100, steps=25):
    def run():
        type_ii = models.make_potts_refinement(models.make_potts(3, -1, 0))
        plain = models.make_potts_family(2.0, 0.3)
        worst = 0.0
        for name in fixtures.DIAGRAMS:
            g = _graph(name)
            for r in (type_ii, plain):
                base = normalized_invariant(g, r).i
                for seed in range(runs):
                    gf = rewrites.random_equivalent(g, seed, steps, model=r)
                    gap = abs(normalized_invariant(gf, r).i - base)
                    worst = max(worst, gap)
                    if worst >= tol:
                        return False, (
                            f"seed {seed} on {name} drifted by {gap:.2e}"
                        )
        total = len(fixtures.DIAGRAMS) * 2 * runs
        return True, f"{total} fuzz runs of {steps} steps, worst gap {worst:.2e}"

    return _timed("rewrite soundness under fuzzing", run)


def check_gluing(tol=1e-9, k_max=10):
    def run():
        battery = [models.make_potts_family(1.0, 0.5),
                   models.make_pentagonal_family(1.0, 0.5, -0.25)]
        graphs = [_graph(name) for name in fixtures.DIAGRAMS]
        worst = 0.0
        for r in battery:
            vals = [normalized_invariant(g, r).i for g in graphs]
            for i1, g1 in enumerate(graphs):
                for i2, g2 in enumerate(graphs):
                    if i2 < i1:
                        continue
                    glued = connected_sum(g1, g2, 0, 0)
                    gap = abs(normalized_invariant(glued, r).i
                              - vals[i1] * vals[i2] / r.d)
                    worst = max(worst, gap)
        r = models.make_potts_family(1.0, 0.0)
        g = _graph("d1042")
        base = normalized_invariant(g, r).i
        acc = g
        for k in range(2, k_max + 1):
            acc = connected_sum(acc, g, 0, 0)
            z, _ = eliminate_with_order(acc, r)
            val = (r.alpha_vp ** -acc.p_b) * (r.alpha_vm ** -acc.n_b) * z
            worst = max(worst, abs(val - base ** k / r.d ** (k - 1)))
        return worst < tol, f"all fixture pairs + iterated sums, worst {worst:.2e}"

    return _timed("gluing formula and iterated sums", run)


def random_tait_graph(rng, n_max=8, n_states=3) -> TaitGraph:
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, 2 * n))
    edges = []
    p_b = n_b = 0
    for _ in range(m):
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        sign = 1 if rng.random() < 0.5 else -1
        axis = bool(rng.random() < 0.4)
        if axis:
            if rng.random() < 0.5:
                p_b += 1
            else:
                n_b += 1
        edges.append(TaitEdge(u, v, sign, axis))
    return TaitGraph(name=f"rand{n_states}", n_vertices=n,
                     edges=tuple(edges), p_b=p_b, n_b=n_b)


def check_engine_oracle(tol=1e-9, samples=200):
    def run():
        rng = np.random.default_rng(11)
        r3 = models.make_potts_family(1.0, 0.5)
        r5 = models.make_pentagonal_family(1.0, 0.5, -0.25)
        worst = 0.0
        for k in range(samples):
            r = r3 if k % 2 == 0 else r5
            g = random_tait_graph(rng, n_max=8, n_states=r.n)
            gap = abs(partition_naive(g, r) - eliminate_with_order(g, r)[0])
            worst = max(worst, gap)
        return worst < tol, f"{samples} random graphs, worst gap {worst:.2e}"

    return _timed("enumeration vs elimination", run)


def check_performance(budget_s=1.0, k=10):
    def run():
        r = models.make_potts_family(1.0, 0.0)
        g = _graph("d1042")
        acc = g
        for _ in range(k - 1):
            acc = connected_sum(acc, g, 0, 0)
        try:
            partition_naive(acc, r)
            naive_blocked = False
        except TooLarge:
            naive_blocked = True
        t0 = time.perf_counter()
        z, info = eliminate_with_order(acc, r)
        elapsed = time.perf_counter() - t0
        val = (r.alpha_vp ** -acc.p_b) * (r.alpha_vm ** -acc.n_b) * z
        base = normalized_invariant(g, r).i
        exact = abs(val - base ** k / r.d ** (k - 1)) < 1e-6
        ok = naive_blocked and elapsed < budget_s and exact
        return ok, (
            f"N={acc.n_vertices}, width={info.width}, {elapsed * 1e3:.1f} ms, "
            f"naive refused: {naive_blocked}"
        )

    return _timed("elimination handles the 10-fold sum under 1 s", run)


def check_type_ii_agreement(tol=1e-6):
    def run():
        base3 = models.make_potts(3, -1, 0)
        pent = models.make_pentagonal()
        refs = [models.make_potts_refinement(base3, k) for k in range(4)]
        refs += [models.make_potts_refinement(pent, k) for k in range(4)]
        refs += [models.make_potts_family(a, b)
                 for a, b in type_ii_family_parameters()]
        d1 = fixtures.load_diagram("d1042")
        d2 = fixtures.load_diagram("d1042p")
        worst = 0.0
        for r in refs:
            if not r.type_ii:
                return False, "a constructed refinement is not type II"
            gap = abs(invariant_of_diagram(d1, r).i
                      - invariant_of_diagram(d2, r).i)
            worst = max(worst, gap)
        return worst < tol, (
            f"{len(refs)} type-II refinements agree on the pair, "
            f"worst gap {worst:.2e}"
        )

    return _timed("type-II refinements agree on the ten-crossing pair", run)


ALL_CHECKS = (
    check_1042_closed_forms,
    check_1042_point_values,
    check_89_closed_forms,
    check_model_axioms,
    check_coloring_independence,
    check_rewrite_soundness,
    check_gluing,
    check_engine_oracle,
    check_performance,
    check_type_ii_agreement,
)


def run_all() -> list[CheckResult]:
    return [fn() for fn in ALL_CHECKS]
