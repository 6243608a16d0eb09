"""Dense complex linear algebra primitives used throughout the package.

All operators are plain square ``numpy`` arrays of complex dtype; tensor
factor structure is described by a tuple of factor dimensions where needed.
Everything here is a pure function of its inputs.
"""

import math

import numpy as np

HERM_TOL = 1e-10


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def kron(*ops) -> np.ndarray:
    """Kronecker product of one or more operators, left factor first."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def maximally_mixed(d: int) -> np.ndarray:
    """The state 1/d on a d-level system."""
    return np.eye(d, dtype=complex) / d


def is_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def _check_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def partial_trace(m: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out the tensor factors of ``m`` that are not listed in ``keep``.

    ``dims`` gives the dimension of every factor (their product must equal
    the matrix dimension); ``keep`` is a nonempty collection of factor
    indices. Kept factors retain their original order.
    """
    m = _check_square(m)
    dims = tuple(int(x) for x in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"factor dimensions must be positive, got {dims}")
    if math.prod(dims) != m.shape[0]:
        raise ValueError(
            f"factor dims {dims} do not multiply to matrix dimension {m.shape[0]}"
        )
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep={keep} is not a nonempty subset of factor indices 0..{n - 1}")

    t = m.reshape(dims + dims)
    row_sub = list(range(n))
    col_sub = [n + i if i in keep else i for i in range(n)]
    out_sub = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(t, row_sub + col_sub, out_sub)
    dk = math.prod(dims[i] for i in keep)
    return reduced.reshape(dk, dk)


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values (unnormalized trace norm).

    Hermitian inputs are routed through the eigendecomposition for accuracy;
    everything else falls back to a full SVD.
    """
    m = _check_square(m)
    if is_hermitian(m):
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def herm_eig(m: np.ndarray, tol: float = HERM_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector matrix with orthonormal
    columns). Raises ValueError if the input is not Hermitian within ``tol``.
    """
    m = _check_square(m)
    if not is_hermitian(m, tol):
        dev = float(np.max(np.abs(m - m.conj().T)))
        raise ValueError(f"matrix is not Hermitian within {tol} (deviation {dev:.3e})")
    vals, vecs = np.linalg.eigh(m)
    return vals, vecs


def num_rank(m: np.ndarray, tol: float) -> int:
    """Number of eigenvalues above ``tol`` for a PSD Hermitian matrix.

    Raises ValueError if any eigenvalue lies below ``-tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    vals, _ = herm_eig(m)
    if vals[0] < -tol:
        raise ValueError(
            f"matrix is not positive semidefinite within {tol} (min eigenvalue {vals[0]:.3e})"
        )
    return int(np.count_nonzero(vals > tol))
