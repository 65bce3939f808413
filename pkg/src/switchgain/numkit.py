"""Small dense complex linear algebra and entropy helpers.

Matrices are plain ``numpy`` complex arrays. The Hermitian eigensolver is a
cyclic Jacobi implementation so the entropy and spectral routines do not
depend on LAPACK behaviour for the tiny matrices used throughout the package.
All logarithms are base 2.
"""

import math

import numpy as np

__all__ = [
    "DimensionError",
    "NotHermitianError",
    "ConvergenceError",
    "InvalidStateError",
    "as_cmatrix",
    "mat_mul",
    "kron",
    "dagger",
    "partial_trace",
    "hermitian_eigenvalues",
    "binary_entropy",
    "h_lambda",
    "shannon_entropy",
    "von_neumann_entropy",
    "PAULI",
]


class DimensionError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    pass


class InvalidStateError(ValueError):
    pass


PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
"""The Pauli matrices I, X, Y, Z stacked along axis 0."""


def as_cmatrix(a):
    """Return ``a`` as a finite 2d complex array.

    Raises ``ValueError`` for NaN/Inf entries or non-2d input.
    """
    out = np.array(a, dtype=complex)
    if out.ndim != 2 or out.shape[0] == 0 or out.shape[1] == 0:
        raise DimensionError(f"expected a non-empty 2d matrix, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix has non-finite entries")
    return out


def mat_mul(a, b):
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b):
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def dagger(a):
    return as_cmatrix(a).conj().T


def partial_trace(a, dims, keep="first"):
    """Partial trace of an operator on a bipartite space.

    Parameters
    ----------
    a : array_like
        Square matrix acting on ``C^d1 (x) C^d2``.
    dims : tuple of int
        ``(d1, d2)``.
    keep : {"first", "second"}
        Which tensor factor survives.
    """
    a = as_cmatrix(a)
    d1, d2 = (int(d) for d in dims)
    if a.shape != (d1 * d2, d1 * d2):
        raise DimensionError(f"matrix of shape {a.shape} does not match dims {dims}")
    t = a.reshape(d1, d2, d1, d2)
    if keep == "first":
        return np.einsum("ikjk->ij", t)
    if keep == "second":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'first' or 'second', not {keep!r}")


def _offdiag_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def hermitian_eigenvalues(a, *, herm_tol=1e-10, tol=1e-12, max_sweeps=100):
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns the real spectrum in ascending order. The iteration stops once the
    off-diagonal Frobenius norm drops below ``tol * max(1, ||a||_F)``.
    """
    a = as_cmatrix(a)
    n = a.shape[0]
    if a.shape[1] != n:
        raise DimensionError(f"expected a square matrix, got {a.shape}")
    if np.max(np.abs(a - a.conj().T)) > herm_tol:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    a = 0.5 * (a + a.conj().T)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for _ in range(max_sweeps):
        if _offdiag_norm(a) < threshold:
            return np.sort(np.real(np.diag(a)))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] in the (p, q) plane
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q] * np.conj(phase)
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :] * phase
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    if _offdiag_norm(a) < threshold:
        return np.sort(np.real(np.diag(a)))
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def _xlog2x(x):
    return 0.0 if x <= 0.0 else x * math.log2(x)


def binary_entropy(x):
    """H(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0."""
    x = float(x)
    if not (-1e-12 <= x <= 1.0 + 1e-12):
        raise ValueError(f"binary entropy argument {x} outside [0, 1]")
    x = min(1.0, max(0.0, x))
    return -_xlog2x(x) - _xlog2x(1.0 - x)


def h_lambda(lam):
    """Entropy of the spectrum (1 +- lam)/2 of a qubit with Bloch length lam."""
    lam = float(lam)
    if abs(lam) > 1.0 + 1e-12:
        raise ValueError(f"|lambda| = {abs(lam)} exceeds 1")
    return binary_entropy((1.0 + lam) / 2.0)


def shannon_entropy(p):
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0 or np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("not a probability distribution")
    return float(-sum(_xlog2x(x) for x in np.clip(p, 0.0, None)))


def von_neumann_entropy(rho):
    rho = as_cmatrix(rho)
    if abs(np.trace(rho) - 1.0) > 1e-9:
        raise InvalidStateError("state does not have unit trace")
    try:
        ev = hermitian_eigenvalues(rho)
    except NotHermitianError as exc:
        raise InvalidStateError("state is not Hermitian") from exc
    if ev[0] < -1e-9:
        raise InvalidStateError(f"state has negative eigenvalue {ev[0]:.3g}")
    ev = np.where(ev < 0.0, 0.0, ev)
    return float(-sum(_xlog2x(x) for x in ev))
