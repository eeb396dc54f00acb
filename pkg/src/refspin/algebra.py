"""Complex matrix algebra behind spin models.

Index sets are X = {0, ..., n-1}; matrices are dense complex numpy arrays.
The central objects are the quotient vectors Y_ab(x) = A(x,a)/A(x,b), the
eigenvalue map psi on the algebra of matrices that have every Y_ab as an
eigenvector, and the axioms a pair (W+, d) must satisfy to be a spin model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadLoopValue,
    NotInNomura,
    NotSymmetric,
    TypeIIIFailure,
    ZeroEntry,
)

# Absolute tolerance for equality checks and for zero detection.  All known
# models have n <= 5 and well-conditioned short sums, so fixed absolute
# tolerances are adequate.
TAU_NUM = 1e-9
TAU_ZERO = 1e-12


def as_cmatrix(a) -> np.ndarray:
    """Coerce to a square complex matrix and validate finiteness."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    out = np.array(m, dtype=complex)
    out.flags.writeable = False
    return out


def is_symmetric(a, tol: float = TAU_NUM) -> bool:
    m = as_cmatrix(a)
    return bool(np.all(np.abs(m - m.T) <= tol))


def hadamard_inverse(a) -> np.ndarray:
    """Entrywise reciprocal; the Hadamard product with the input is all-ones.

    Raises ZeroEntry at the first (row-major) entry smaller than TAU_ZERO.
    """
    m = as_cmatrix(a)
    small = np.abs(m) < TAU_ZERO
    if small.any():
        i, j = np.argwhere(small)[0]
        raise ZeroEntry(int(i), int(j))
    return 1.0 / m


def y_vector(a, i: int, j: int) -> np.ndarray:
    """Quotient vector Y_ij(x) = A(x,i) / A(x,j).

    Defined only when column j has no zero entry; Y_ii is the all-1 vector.
    """
    m = as_cmatrix(a)
    col_j = m[:, j]
    small = np.abs(col_j) < TAU_ZERO
    if small.any():
        k = int(np.argwhere(small)[0][0])
        raise ZeroEntry(k, int(j))
    return m[:, i] / col_j


@dataclass(frozen=True)
class SpinModel:
    """A symmetric weight matrix with loop value d = +-sqrt(n).

    w_minus is the entrywise reciprocal of w_plus and alpha_w the constant
    diagonal value of w_plus.  Instances are produced by verify_spin_model
    and are immutable.
    """

    n: int
    d: float
    w_plus: np.ndarray
    w_minus: np.ndarray
    alpha_w: complex

    def y_vectors(self) -> np.ndarray:
        """All quotient vectors as an (n, n, n) array indexed [a, b, x]."""
        w = self.w_plus
        return (w[:, :, None] / w[:, None, :]).transpose(1, 2, 0)


def _eigenvalue_on(a: np.ndarray, y: np.ndarray, tol: float) -> complex | None:
    """Eigenvalue of a on y, or None if y is not an eigenvector within tol.

    The eigenvalue is read off the first component of y above TAU_ZERO and
    cross-checked against every component.
    """
    big = np.abs(y) > TAU_ZERO
    if not big.any():
        return None
    k = int(np.argmax(big))
    image = a @ y
    lam = image[k] / y[k]
    if np.all(np.abs(image - lam * y) <= tol):
        return complex(lam)
    return None


def is_in_nomura(a, m: SpinModel, tol: float = TAU_NUM) -> bool:
    """Whether every quotient vector of the model is an eigenvector of a."""
    mat = as_cmatrix(a)
    if mat.shape[0] != m.n:
        return False
    ys = m.y_vectors()
    for i in range(m.n):
        for j in range(m.n):
            if _eigenvalue_on(mat, ys[i, j], tol) is None:
                return False
    return True


def psi_image(a, m: SpinModel, tol: float = TAU_NUM) -> np.ndarray:
    """The matrix of eigenvalues of a on the quotient vectors.

    psi(a)[i, j] is the eigenvalue of a on Y_ij; applying psi twice gives
    n times the transpose.  Raises NotInNomura when some Y_ij fails the
    eigenvector test.
    """
    mat = as_cmatrix(a)
    if mat.shape[0] != m.n:
        raise NotInNomura(f"shape {mat.shape} does not match n={m.n}")
    ys = m.y_vectors()
    out = np.empty((m.n, m.n), dtype=complex)
    for i in range(m.n):
        for j in range(m.n):
            lam = _eigenvalue_on(mat, ys[i, j], tol)
            if lam is None:
                raise NotInNomura(f"Y_{i}{j} is not an eigenvector")
            out[i, j] = lam
    return out


def verify_spin_model(w_plus, d: float, tol: float = TAU_NUM) -> SpinModel:
    """Check the spin-model axioms for (w_plus, d) and package the result.

    Required:
      * w_plus symmetric with no zero entry,
      * d**2 == n,
      * W+ Y_ab = d W-(a,b) Y_ab for all a, b (with W- the entrywise
        reciprocal); the a = b case forces constant row sums and a constant
        diagonal, the modulus alpha_w.
    """
    w = as_cmatrix(w_plus)
    n = w.shape[0]
    if n < 2:
        raise ValueError("spin models need n >= 2")
    if abs(d * d - n) > tol:
        raise BadLoopValue(f"d**2 = {d * d} but n = {n}")
    if not np.all(np.abs(w - w.T) <= tol):
        raise NotSymmetric("w_plus is not symmetric")
    w_minus = hadamard_inverse(w)

    ys = (w[:, :, None] / w[:, None, :]).transpose(1, 2, 0)
    for a in range(n):
        for b in range(n):
            y = ys[a, b]
            if np.any(np.abs(w @ y - d * w_minus[a, b] * y) > tol):
                raise TypeIIIFailure(a, b)

    diag = np.diagonal(w)
    if np.any(np.abs(diag - diag[0]) > tol):
        # cannot happen once the eigen-equations hold; defensive
        raise TypeIIIFailure(0, 0)
    return SpinModel(
        n=n,
        d=float(d),
        w_plus=_frozen(w),
        w_minus=_frozen(w_minus),
        alpha_w=complex(diag[0]),
    )
