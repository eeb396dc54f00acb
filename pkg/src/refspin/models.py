"""Concrete spin models and their refinements.

Provides the Potts family on any n, the pentagonal model on n = 5, the
two parametric refinement families used to tell the bundled diagram pairs
apart, and predicates (type II, translation invariance) on refinements.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import TAU_NUM, TAU_ZERO, SpinModel, as_cmatrix
from .errors import NotSymmetric, ParseError, ZeroModulus


@dataclass(frozen=True)
class RefinedSpinModel:
    """A spin model plus a symmetric axis-weight matrix from its eigenvector
    algebra.

    v_minus = psi(v_plus) / d, and the moduli alpha_vp / alpha_vm are the
    (constant) diagonal values of v_plus / v_minus.  type_ii records whether
    v_plus and v_minus are entrywise reciprocal.
    """

    base: SpinModel
    v_plus: np.ndarray
    v_minus: np.ndarray
    alpha_vp: complex
    alpha_vm: complex
    type_ii: bool

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def d(self) -> float:
        return self.base.d


@dataclass(frozen=True)
class ShiftMap:
    """The cyclic shift a -> a + 1 (mod n) on the color set."""

    n: int

    def __call__(self, a: int) -> int:
        return (a + 1) % self.n


def _constant_diagonal(m: np.ndarray, what: str, tol: float = TAU_NUM) -> complex:
    diag = np.diagonal(m)
    if np.any(np.abs(diag - diag[0]) > tol):
        raise ValueError(f"{what} does not have a constant diagonal")
    return complex(diag[0])


def make_refined(m: SpinModel, v_plus, tol: float = TAU_NUM) -> RefinedSpinModel:
    """Refine a spin model by an axis-weight matrix.

    v_plus must be symmetric and lie in the eigenvector algebra of the model;
    the product of the two moduli must be nonzero.
    """
    v = as_cmatrix(v_plus)
    if not np.all(np.abs(v - v.T) <= tol):
        raise NotSymmetric("v_plus is not symmetric")
    v_minus = algebra.psi_image(v, m, tol) / m.d
    alpha_vp = _constant_diagonal(v, "v_plus", tol)
    alpha_vm = _constant_diagonal(v_minus, "v_minus", tol)
    if abs(alpha_vp * alpha_vm) < TAU_ZERO:
        raise ZeroModulus(f"alpha_vp * alpha_vm = {alpha_vp * alpha_vm}")
    type_ii = bool(np.all(np.abs(v * v_minus - 1.0) <= tol))
    out = np.array(v_minus)
    out.flags.writeable = False
    vp = np.array(v)
    vp.flags.writeable = False
    return RefinedSpinModel(
        base=m,
        v_plus=vp,
        v_minus=out,
        alpha_vp=alpha_vp,
        alpha_vm=alpha_vm,
        type_ii=type_ii,
    )


# ------------------------------------------------------------------ Potts


def potts_xi_candidates(d: float) -> list[complex]:
    """The four solutions of d = -xi**2 - xi**(-2), in a fixed order.

    xi**2 solves z**2 + d z + 1 = 0; the two roots are ordered by argument
    in [0, 2*pi) (ties by modulus), and each contributes its principal
    square root followed by the negated one.
    """
    disc = cmath.sqrt(d * d - 4.0)
    roots = sorted(
        [(-d + disc) / 2.0, (-d - disc) / 2.0],
        key=lambda z: (cmath.phase(z) % (2.0 * math.pi), abs(z)),
    )
    out: list[complex] = []
    for z in roots:
        s = cmath.sqrt(z)
        out.extend([s, -s])
    return out


def potts_matrix(n: int, xi: complex) -> np.ndarray:
    eye = np.eye(n, dtype=complex)
    return (-(xi ** -3)) * eye + xi * (np.ones((n, n), dtype=complex) - eye)


def make_potts(n: int, d_sign: int = -1, xi_choice: int = 0) -> SpinModel:
    """The n-state Potts model (-xi**-3) I + xi (J - I) with d = d_sign*sqrt(n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if d_sign not in (1, -1):
        raise ValueError("d_sign must be +1 or -1")
    d = d_sign * math.sqrt(n)
    xi = potts_xi_candidates(d)[xi_choice]
    return algebra.verify_spin_model(potts_matrix(n, xi), d)


# ------------------------------------------------------------- pentagonal

# Circulant 0/1 matrices with ones at offsets +-1 and +-2 (mod 5).
PENT_A1 = np.array(
    [[0, 1, 0, 0, 1],
     [1, 0, 1, 0, 0],
     [0, 1, 0, 1, 0],
     [0, 0, 1, 0, 1],
     [1, 0, 0, 1, 0]],
    dtype=complex,
)
PENT_A2 = np.array(
    [[0, 0, 1, 1, 0],
     [0, 0, 0, 1, 1],
     [1, 0, 0, 0, 1],
     [1, 1, 0, 0, 0],
     [0, 1, 1, 0, 0]],
    dtype=complex,
)


def make_pentagonal() -> SpinModel:
    """The five-state model I + w A1 + w**4 A2 with w = exp(2*pi*i/5), d = +sqrt(5)."""
    omega = cmath.exp(2j * math.pi / 5.0)
    w = np.eye(5, dtype=complex) + omega * PENT_A1 + omega ** 4 * PENT_A2
    return algebra.verify_spin_model(w, math.sqrt(5.0))


# ------------------------------------------------------------ refinements


def make_potts_refinement(m: SpinModel, xi_choice: int = 0) -> RefinedSpinModel:
    """Refine any spin model by a Potts-shaped axis matrix; always type II."""
    xi = potts_xi_candidates(m.d)[xi_choice]
    return make_refined(m, potts_matrix(m.n, xi))


def make_potts_family(a: complex, b: complex) -> RefinedSpinModel:
    """Refinement a I + b (J - I) of the three-state Potts model, d = -sqrt(3).

    Requires a (a + 2 b) != 0.
    """
    if abs(a * (a + 2 * b)) < TAU_ZERO:
        raise ZeroModulus("need a (a + 2 b) != 0")
    base = make_potts(3, d_sign=-1, xi_choice=0)
    eye = np.eye(3, dtype=complex)
    v = a * eye + b * (np.ones((3, 3), dtype=complex) - eye)
    return make_refined(base, v)


def make_pentagonal_family(a: complex, b: complex, c: complex) -> RefinedSpinModel:
    """Refinement a I + b A1 + c A2 of the pentagonal model.

    Requires a (a + 2 b + 2 c) != 0.
    """
    if abs(a * (a + 2 * b + 2 * c)) < TAU_ZERO:
        raise ZeroModulus("need a (a + 2 b + 2 c) != 0")
    base = make_pentagonal()
    v = a * np.eye(5, dtype=complex) + b * PENT_A1 + c * PENT_A2
    return make_refined(base, v)


def is_translation_invariant(r: RefinedSpinModel, tol: float = TAU_NUM) -> bool:
    """Whether all four weight matrices are circulant under the index shift."""
    for m in (r.base.w_plus, r.base.w_minus, r.v_plus, r.v_minus):
        shifted = np.roll(np.roll(m, 1, axis=0), 1, axis=1)
        if np.any(np.abs(shifted - m) > tol):
            return False
    return True


# ------------------------------------------------------ text interfaces

_COMPLEX_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:\s*([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?\s*$"
)


def parse_complex(text: str) -> complex:
    """Parse 're' or 're+imi' literals, e.g. '2', '-0.5+0.866i'."""
    t = text.strip()
    m = _COMPLEX_RE.match(t)
    if m:
        re_part = float(m.group(1))
        im_part = 0.0
        if m.group(2) is not None:
            im_part = float(m.group(3))
            if m.group(2) == "-":
                im_part = -im_part
        return complex(re_part, im_part)
    raise ParseError(f"bad complex literal {text!r}")


def format_complex(z: complex) -> str:
    """Fixed 17-significant-digit '<re>+<im>i' rendering."""
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_matrix_block(lines: list[str], start: int) -> tuple[np.ndarray, int]:
    """Parse a 'matrix n=<n>' header plus n whitespace-separated rows.

    Returns the matrix and the index of the first unconsumed line.
    """
    header = lines[start].strip()
    m = re.match(r"^matrix\s+n\s*=\s*(\d+)$", header)
    if not m:
        raise ParseError(f"expected 'matrix n=<n>', got {header!r}", line=start + 1)
    n = int(m.group(1))
    rows = []
    k = start + 1
    while len(rows) < n:
        if k >= len(lines):
            raise ParseError("matrix block ends early", line=k)
        row = lines[k].split("#", 1)[0].strip()
        k += 1
        if not row:
            continue
        entries = [parse_complex(tok) for tok in row.split()]
        if len(entries) != n:
            raise ParseError(f"expected {n} entries per row", line=k)
        rows.append(entries)
    return np.array(rows, dtype=complex), k


def format_matrix(m) -> str:
    mat = as_cmatrix(m)
    lines = [f"matrix n={mat.shape[0]}"]
    for row in mat:
        lines.append(" ".join(format_complex(z) for z in row))
    return "\n".join(lines)


def parse_model_file(text: str) -> RefinedSpinModel:
    """Model file: a 'd =' line, a matrix block for W+, optional 'v_plus'
    section followed by a matrix block.  Without v_plus the model is refined
    by its own weight matrix.
    """
    lines = text.splitlines()
    d = None
    w = None
    v = None
    k = 0
    while k < len(lines):
        stripped = lines[k].split("#", 1)[0].strip()
        if not stripped:
            k += 1
            continue
        if stripped.startswith("d"):
            m = re.match(r"^d\s*=\s*(\S+)$", stripped)
            if not m:
                raise ParseError(f"bad d line {stripped!r}", line=k + 1)
            d = float(m.group(1))
            k += 1
        elif stripped.startswith("matrix"):
            if w is None:
                w, k = parse_matrix_block(lines, k)
            else:
                raise ParseError("unexpected second matrix block", line=k + 1)
        elif re.match(r"^v_plus\s*=?\s*$", stripped):
            k += 1
            while k < len(lines) and not lines[k].split("#", 1)[0].strip():
                k += 1
            v, k = parse_matrix_block(lines, k)
        else:
            raise ParseError(f"unrecognized line {stripped!r}", line=k + 1)
    if d is None or w is None:
        raise ParseError("model file needs a 'd =' line and a matrix block")
    base = algebra.verify_spin_model(w, d)
    return make_refined(base, w if v is None else v)


def _parse_kwargs(body: str) -> dict[str, str]:
    out: dict[str, str] = {}
    if not body:
        return out
    for item in body.split(","):
        if "=" not in item:
            raise ParseError(f"bad model parameter {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def parse_model_spec(spec: str) -> RefinedSpinModel:
    """Parse the CLI model mini-language.

    Forms: 'potts[:n=..,dsign=..,xi=..]', 'pentagonal',
    'potts-family:a=..,b=..', 'pent-family:a=..,b=..,c=..', 'file:<path>'.
    Bare spin models are refined by their own weight matrix.
    """
    head, _, body = spec.partition(":")
    head = head.strip()
    if head == "file":
        with open(body, encoding="utf-8") as fh:
            return parse_model_file(fh.read())
    kw = _parse_kwargs(body)
    if head == "potts":
        n = int(kw.pop("n", "3"))
        d_sign = int(kw.pop("dsign", "-1"))
        xi = int(kw.pop("xi", "0"))
        if kw:
            raise ParseError(f"unknown potts parameters {sorted(kw)}")
        base = make_potts(n, d_sign, xi)
        return make_refined(base, base.w_plus)
    if head == "pentagonal":
        if kw:
            raise ParseError(f"unknown pentagonal parameters {sorted(kw)}")
        base = make_pentagonal()
        return make_refined(base, base.w_plus)
    if head == "potts-family":
        try:
            a = parse_complex(kw.pop("a"))
            b = parse_complex(kw.pop("b"))
        except KeyError as exc:
            raise ParseError(f"potts-family needs {exc} ") from None
        if kw:
            raise ParseError(f"unknown potts-family parameters {sorted(kw)}")
        return make_potts_family(a, b)
    if head == "pent-family":
        try:
            a = parse_complex(kw.pop("a"))
            b = parse_complex(kw.pop("b"))
            c = parse_complex(kw.pop("c"))
        except KeyError as exc:
            raise ParseError(f"pent-family needs {exc}") from None
        if kw:
            raise ParseError(f"unknown pent-family parameters {sorted(kw)}")
        return make_pentagonal_family(a, b, c)
    raise ParseError(f"unknown model spec {spec!r}")
