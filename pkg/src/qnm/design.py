"""Twirls, isotropic projections and unitary 2-design certification.

An encryption scheme is modelled as a weighted ensemble of unitaries
{p_k, U_k} on a d-level system. Its second-moment behaviour is captured by
the operator

    Omega = sum_k p_k (U_k (x) conj(U_k) (x) 1) Phi_{d^2} (...)^dagger

on four d-level systems, whose ideal (Haar) value has the closed form

    Omega_haar = 1/d^2 * Phi_d (x) Phi_d
               + 1/(d^2 (d^2-1)) * (1 - Phi_d) (x) (1 - Phi_d).

The ensemble is a unitary 2-design exactly when Omega equals Omega_haar,
which is what :func:`certify_design` measures.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import herm_eig, kron, maximally_mixed, num_rank, trace_norm

UNITARY_INGEST_TOL = 1e-8
WEIGHT_TOL = 1e-12
DEFAULT_CERT_TOL = 1e-9
SUPPORT_LEAK_TOL = 1e-9


@dataclass
class UnitaryEnsemble:
    """A weighted collection {p_k, U_k} of d x d unitaries."""

    d: int
    weights: np.ndarray
    unitaries: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.unitaries = np.asarray(self.unitaries, dtype=complex)
        d = int(self.d)
        if self.unitaries.ndim != 3 or self.unitaries.shape[1:] != (d, d):
            raise ValueError(
                f"unitaries must have shape (N, {d}, {d}), got {self.unitaries.shape}"
            )
        if self.weights.shape != (self.unitaries.shape[0],):
            raise ValueError("weights and unitaries disagree on ensemble size")
        if np.any(self.weights < 0):
            raise ValueError("weights must be nonnegative")
        if abs(self.weights.sum() - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights must sum to 1, got {self.weights.sum()!r}")
        eye = np.eye(d)
        for k, u in enumerate(self.unitaries):
            dev = float(np.max(np.abs(u.conj().T @ u - eye)))
            if dev > UNITARY_INGEST_TOL:
                raise ValueError(f"ensemble element {k} is not unitary (deviation {dev:.3e})")

    @property
    def size(self) -> int:
        return self.unitaries.shape[0]

    @classmethod
    def uniform(cls, d: int, unitaries) -> "UnitaryEnsemble":
        unitaries = np.asarray(unitaries, dtype=complex)
        n = unitaries.shape[0]
        return cls(d=d, weights=np.full(n, 1.0 / n), unitaries=unitaries)


@dataclass
class IsotropicDecomposition:
    """Coordinates of a bipartite operator in the span of Phi_d and 1 - Phi_d."""

    alpha: float
    beta: float
    residual: float


@dataclass
class CertificationReport:
    """Design grades for an ensemble, with the associated key-size bounds."""

    d: int
    n: int
    one_design_dist: float
    two_design_trace_dist: float
    two_design_diamond_upper: float
    multiplicative_theta: float | None
    omega_rank: int
    rank_bound: int
    conjectured_rank_bound: int
    frame_potential: float
    entropy_bits: float
    entropy_bound_bits: float | None
    passes_2design_at: float
    passes_one_design: bool
    passes_two_design: bool
    passes_multiplicative: bool | None
    passes_rank_bound: bool


def max_entangled(d: int) -> np.ndarray:
    """Maximally entangled state Phi_d = 1/d sum_{ij} |ii><jj| on two d-level systems."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    phi = np.zeros(d * d, dtype=complex)
    phi[:: d + 1] = 1.0
    return np.outer(phi, phi) / d


def iso_project(x: np.ndarray, d: int):
    """Project a d^2 x d^2 operator onto the isotropic span.

    Returns (IsotropicDecomposition, projected) where
    projected = alpha * Phi_d + beta * (1 - Phi_d) with

        alpha = tr(X Phi_d),   beta = tr(X (1 - Phi_d)) / (d^2 - 1),

    and residual is the trace norm of the off-span part X - projected.
    The map coincides with averaging (U (x) conj(U)) X (U (x) conj(U))^dagger
    over the Haar measure.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != (d * d, d * d):
        raise ValueError(f"expected a {d * d} x {d * d} operator, got shape {x.shape}")
    phi = max_entangled(d)
    alpha = float(np.real(np.trace(x @ phi)))
    beta = float(np.real(np.trace(x)) - alpha) / (d * d - 1)
    projected = alpha * phi + beta * (np.eye(d * d) - phi)
    residual = trace_norm(x - projected)
    return IsotropicDecomposition(alpha=alpha, beta=beta, residual=residual), projected


def ideal_choi(d: int) -> np.ndarray:
    """Second-moment operator of the Haar twirl, in closed form (d^4 x d^4)."""
    phi = max_entangled(d)
    comp = np.eye(d * d) - phi
    return kron(phi, phi) / d**2 + kron(comp, comp) / (d**2 * (d**2 - 1))


def _vec(m: np.ndarray) -> np.ndarray:
    # row-major flatten; vec(W) = (W (x) 1)|phi> * sqrt(D) for D x D inputs
    return np.asarray(m).reshape(-1)


def ensemble_choi(e: UnitaryEnsemble) -> np.ndarray:
    """Second-moment operator Omega of an ensemble (d^4 x d^4, PSD, trace 1).

    Uses (W (x) 1) Phi_D (W (x) 1)^dagger = vec(W) vec(W)^dagger / D with
    W = U (x) conj(U) and D = d^2, so the whole sum reduces to one product
    of stacked vectors.
    """
    d = e.d
    dd = d * d
    b = np.empty((e.size, dd * dd), dtype=complex)
    for k, u in enumerate(e.unitaries):
        b[k] = math.sqrt(e.weights[k]) * _vec(np.kron(u, u.conj()))
    omega = (b.T @ b.conj()) / dd
    return (omega + omega.conj().T) / 2


def encryption_choi(e: UnitaryEnsemble) -> np.ndarray:
    """Choi operator of the average encryption map rho -> sum_k p_k U_k rho U_k^dagger."""
    d = e.d
    b = np.empty((e.size, d * d), dtype=complex)
    for k, u in enumerate(e.unitaries):
        b[k] = math.sqrt(e.weights[k]) * _vec(u)
    choi = (b.T @ b.conj()) / d
    return (choi + choi.conj().T) / 2


def one_design_distance(e: UnitaryEnsemble) -> float:
    """Trace distance of the average encryption Choi operator from tau (x) tau."""
    d = e.d
    tau = maximally_mixed(d)
    return trace_norm(encryption_choi(e) - kron(tau, tau))


def frame_potential(e: UnitaryEnsemble, block: int = 1024) -> float:
    """Second frame potential sum_{k,l} p_k p_l |tr(U_k^dagger U_l)|^4.

    Brute-force evaluation of all N^2 pairwise traces, blocked to bound
    memory. The minimum value 2 is attained exactly on unitary 2-designs.
    """
    a = e.unitaries.reshape(e.size, -1)
    w = e.weights
    total = 0.0
    for i0 in range(0, e.size, block):
        gram = a[i0 : i0 + block].conj() @ a.T  # gram[i, j] = tr(U_i^dagger U_j)
        total += float(np.sum(w[i0 : i0 + block, None] * w[None, :] * np.abs(gram) ** 4))
    return total


def ensemble_entropy(e: UnitaryEnsemble) -> float:
    """Shannon entropy of the key distribution, in bits."""
    w = e.weights[e.weights > 0]
    return float(-np.sum(w * np.log2(w)))


def _binary_entropy_bits(x: float) -> float:
    if x < 0 or x > 1:
        raise ValueError(f"binary entropy argument must lie in [0, 1], got {x}")
    if x == 0 or x == 1:
        return 0.0
    return float(-x * math.log2(x) - (1 - x) * math.log2(1 - x))


def entropy_bound(d: int, theta: float) -> float:
    """Lower bound, in bits, on the key entropy of a theta-approximate scheme.

    Evaluates H2(1/d^2) + 2 (1 - 1/d^2) log2(d^2 - 1) - 4 theta log2(d) - H2(theta),
    valid for 0 <= theta <= 1/e. At theta = 0 this is the entropy of the ideal
    second-moment operator.
    """
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if not 0 <= theta <= 1 / math.e:
        raise ValueError(f"theta must lie in [0, 1/e], got {theta}")
    dd = d * d
    return (
        _binary_entropy_bits(1 / dd)
        + 2 * (1 - 1 / dd) * math.log2(dd - 1)
        - 4 * theta * math.log2(d)
        - _binary_entropy_bits(theta)
    )


def rank_bound(d: int) -> int:
    """Minimum number of unitaries in any exact 2-design: (d^2 - 1)^2 + 1."""
    return (d * d - 1) ** 2 + 1


def conjectured_rank_bound(d: int) -> int:
    """Conjectured (unenforced) improvement d^2 (d^2 - 1); informational only."""
    return d * d * (d * d - 1)


def multiplicative_theta(
    omega: np.ndarray, d: int, leak_tol: float = SUPPORT_LEAK_TOL
) -> float | None:
    """Largest relative eigenvalue deviation of Omega on the ideal support.

    Conjugates ``omega`` by the pseudo-inverse square root of the ideal
    second-moment operator and reports max |eig - 1|. This equals the
    smallest theta with (1-theta) Omega_haar <= Omega <= (1+theta) Omega_haar
    when Omega is supported inside the ideal support; if more than
    ``leak_tol`` of its trace leaks outside, returns None.
    """
    vals, vecs = herm_eig(ideal_choi(d))
    on_support = vals > 1e-12
    v = vecs[:, on_support]
    lam = vals[on_support]
    inside = float(np.real(np.trace(v.conj().T @ omega @ v)))
    leak = float(np.real(np.trace(omega))) - inside
    if leak > leak_tol:
        return None
    q = v / np.sqrt(lam)
    sandwich = q.conj().T @ omega @ q
    ev = np.linalg.eigvalsh((sandwich + sandwich.conj().T) / 2)
    return float(np.max(np.abs(ev - 1)))


def certify_design(e: UnitaryEnsemble, tol: float = DEFAULT_CERT_TOL) -> CertificationReport:
    """Grade an ensemble as an encryption scheme (1-design) and 2-design.

    The additive grade is the trace norm ||Omega - Omega_haar||_1 on
    second-moment operators; d^2 times it upper-bounds the diamond distance
    of the corresponding twirls. The multiplicative grade is the operator
    sandwich deviation (see :func:`multiplicative_theta`). Rank, frame
    potential and key-entropy diagnostics are filled in alongside.
    """
    d = e.d
    omega = ensemble_choi(e)
    omega_ideal = ideal_choi(d)
    two_dist = trace_norm(omega - omega_ideal)
    one_dist = one_design_distance(e)
    theta = multiplicative_theta(omega, d)
    rank = num_rank(omega, 1e-10)
    bound = rank_bound(d)
    fp = frame_potential(e)
    ent = ensemble_entropy(e)
    ent_bound = entropy_bound(d, two_dist) if two_dist <= 1 / math.e else None
    return CertificationReport(
        d=d,
        n=e.size,
        one_design_dist=one_dist,
        two_design_trace_dist=two_dist,
        two_design_diamond_upper=d * d * two_dist,
        multiplicative_theta=theta,
        omega_rank=rank,
        rank_bound=bound,
        conjectured_rank_bound=conjectured_rank_bound(d),
        frame_potential=fp,
        entropy_bits=ent,
        entropy_bound_bits=ent_bound,
        passes_2design_at=tol,
        passes_one_design=one_dist <= tol,
        passes_two_design=two_dist <= tol,
        passes_multiplicative=None if theta is None else theta <= tol,
        passes_rank_bound=rank >= bound,
    )
