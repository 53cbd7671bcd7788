"""Dense linear algebra for symmetric positive-definite matrices.

Everything the Gaussian families need: Cholesky, log-determinant, inverse,
symmetric square root and (generalized) symmetric eigenvalues.  Matrices are
validated once through :class:`SpdMatrix`; all operations are pure.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceFailure, DimMismatch, NotPositiveDefinite

# Relative asymmetry tolerated on input before rejection.
_SYM_RTOL = 1e-8


class SpdMatrix:
    """A validated symmetric positive-definite matrix.

    The input is symmetrized once ((M + M^T)/2) to absorb benign I/O
    round-off; genuinely asymmetric input is rejected.  Positive
    definiteness is established by a pivoted-free Cholesky pass at
    construction time.
    """

    __slots__ = ("array", "dim")

    def __init__(self, entries) -> None:
        a = np.asarray(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimMismatch(f"expected a square matrix, got shape {a.shape}")
        scale = max(1.0, float(np.abs(a).max()))
        asym = float(np.abs(a - a.T).max())
        if asym > _SYM_RTOL * scale:
            raise NotPositiveDefinite(
                f"matrix is not symmetric (max asymmetry {asym:.3e})"
            )
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        self.array = a
        self.dim = a.shape[0]
        cholesky(self)  # raises NotPositiveDefinite on failure

    def __repr__(self) -> str:
        return f"SpdMatrix({self.array.tolist()!r})"


def _as_array(m) -> np.ndarray:
    if isinstance(m, SpdMatrix):
        return m.array
    return SpdMatrix(m).array


def cholesky(m) -> np.ndarray:
    """Lower-triangular L with L L^T = m.

    A pivot <= 1e-13 * trace/dim is treated as failure rather than being
    regularized: silently fixing the matrix would corrupt every divergence
    value computed downstream.
    """
    if isinstance(m, SpdMatrix):
        a = m.array
    else:
        a = np.asarray(m, dtype=float)
        a = 0.5 * (a + a.T)
    d = a.shape[0]
    tol = 1e-13 * float(np.trace(a)) / d
    L = np.zeros_like(a)
    for j in range(d):
        pivot = a[j, j] - L[j, :j] @ L[j, :j]
        if pivot <= tol:
            raise NotPositiveDefinite(
                f"Cholesky pivot {pivot:.3e} at column {j} (tol {tol:.3e})"
            )
        L[j, j] = np.sqrt(pivot)
        if j + 1 < d:
            L[j + 1 :, j] = (a[j + 1 :, j] - L[j + 1 :, :j] @ L[j, :j]) / L[j, j]
    return L


def log_det(m) -> float:
    """log|m| computed as 2 sum(log L_ii), never via the raw determinant."""
    L = cholesky(m)
    return 2.0 * float(np.log(np.diag(L)).sum())


def spd_inverse(m) -> np.ndarray:
    """Inverse of an SPD matrix, explicitly symmetrized."""
    a = _as_array(m)
    L = cholesky(a)
    # Solve L L^T X = I by two triangular solves.
    eye = np.eye(a.shape[0])
    y = np.linalg.solve(L, eye)
    x = np.linalg.solve(L.T, y)
    return 0.5 * (x + x.T)


def sym_sqrt(m) -> np.ndarray:
    """Unique symmetric PD square root via eigendecomposition."""
    a = _as_array(m)
    w, v = _eigh(a)
    if w[0] <= 0.0:
        raise NotPositiveDefinite(f"eigenvalue {w[0]:.3e} is not positive")
    s = (v * np.sqrt(w)) @ v.T
    return 0.5 * (s + s.T)


def eigvals_sym(m) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, sorted ascending."""
    a = np.asarray(m, dtype=float)
    a = 0.5 * (a + a.T)
    w, _ = _eigh(a)
    return w


def generalized_spectrum(a, b) -> np.ndarray:
    """Eigenvalues of B^{-1/2} A B^{-1/2}, ascending (all positive).

    These coincide with the eigenvalues of A B^{-1} but are computed through
    the symmetric congruence so the problem stays symmetric.
    """
    aa = _as_array(a)
    bb = _as_array(b)
    if aa.shape != bb.shape:
        raise DimMismatch(f"dims differ: {aa.shape[0]} vs {bb.shape[0]}")
    b_isqrt = sym_sqrt(spd_inverse(bb))
    w = eigvals_sym(b_isqrt @ aa @ b_isqrt)
    if w[0] <= 0.0:
        raise NotPositiveDefinite("generalized spectrum has non-positive entries")
    return w


def _eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - pathological input
        raise ConvergenceFailure(f"symmetric eigensolver failed: {exc}") from exc
