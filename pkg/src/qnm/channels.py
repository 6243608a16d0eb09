"""Quantum channels in Kraus form and the Choi representation.

A channel Lambda with Kraus operators {K_m} acts as rho -> sum_m K_m rho
K_m^dagger. Its Choi operator is omega = (Lambda (x) id) Phi_d (trace at
most 1, exactly 1 for trace-preserving channels), and the channel is
recovered through Lambda(rho) = d tr_2((1 (x) rho^T) omega), with the
transpose taken in the computational basis.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import dagger, maximally_mixed, partial_trace

CPTNI_TOL = 1e-10
KRAUS_CUTOFF = 1e-12


@dataclass
class KrausChannel:
    """A completely positive map given by a list of d_out x d_in Kraus operators."""

    d_in: int
    d_out: int
    kraus_ops: list = field(default_factory=list)

    def __post_init__(self):
        ops = []
        for m, k in enumerate(self.kraus_ops):
            k = np.asarray(k, dtype=complex)
            if k.shape != (self.d_out, self.d_in):
                raise ValueError(
                    f"Kraus operator {m} has shape {k.shape}, "
                    f"expected ({self.d_out}, {self.d_in})"
                )
            ops.append(k)
        self.kraus_ops = ops

    def completeness(self) -> np.ndarray:
        """sum_m K_m^dagger K_m (equals 1 for trace-preserving channels)."""
        out = np.zeros((self.d_in, self.d_in), dtype=complex)
        for k in self.kraus_ops:
            out += dagger(k) @ k
        return out

    @property
    def is_tp(self) -> bool:
        return validate_cptni(self).is_tp

    @property
    def is_tni(self) -> bool:
        return validate_cptni(self).is_tni


@dataclass
class CptniReport:
    is_cp: bool
    is_tni: bool
    is_tp: bool
    defect: float


def validate_cptni(ch: KrausChannel) -> CptniReport:
    """Classify a Kraus channel as trace preserving / non-increasing.

    ``defect`` is the operator norm of sum K^dagger K - 1. Kraus form is
    completely positive by construction, so is_cp is always true.
    """
    comp = ch.completeness()
    eye = np.eye(ch.d_in)
    defect = float(np.linalg.norm(comp - eye, ord=2))
    evs = np.linalg.eigvalsh((comp + comp.conj().T) / 2)
    is_tni = bool(evs[-1] <= 1 + CPTNI_TOL)
    is_tp = defect <= CPTNI_TOL
    return CptniReport(is_cp=True, is_tni=is_tni, is_tp=is_tp, defect=defect)


def apply_channel(ch: KrausChannel, rho: np.ndarray) -> np.ndarray:
    """Evaluate sum_m K_m rho K_m^dagger."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.d_in, ch.d_in):
        raise ValueError(f"state has shape {rho.shape}, channel expects ({ch.d_in}, {ch.d_in})")
    out = np.zeros((ch.d_out, ch.d_out), dtype=complex)
    for k in ch.kraus_ops:
        out += k @ rho @ dagger(k)
    return out


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(d_in=d, d_out=d, kraus_ops=[np.eye(d, dtype=complex)])


def unitary_channel(u: np.ndarray) -> KrausChannel:
    u = np.asarray(u, dtype=complex)
    d = u.shape[0]
    return KrausChannel(d_in=d, d_out=d, kraus_ops=[u])


def constant_channel(eta0: np.ndarray, tol: float = 1e-10) -> KrausChannel:
    """The replacement attack rho -> eta0 * tr(rho) for a density matrix eta0."""
    eta0 = np.asarray(eta0, dtype=complex)
    d = eta0.shape[0]
    if eta0.shape != (d, d) or np.max(np.abs(eta0 - eta0.conj().T)) > tol:
        raise ValueError("replacement state must be a Hermitian square matrix")
    vals, vecs = np.linalg.eigh(eta0)
    if vals[0] < -tol or abs(vals.sum() - 1.0) > tol:
        raise ValueError("replacement state must be positive semidefinite with unit trace")
    ops = []
    for lam, v in zip(vals, vecs.T):
        if lam <= KRAUS_CUTOFF:
            continue
        for j in range(d):
            k = np.zeros((d, d), dtype=complex)
            k[:, j] = np.sqrt(lam) * v
            ops.append(k)
    return KrausChannel(d_in=d, d_out=d, kraus_ops=ops)


def depolarizing_channel(d: int) -> KrausChannel:
    """The completely forgetful channel rho -> tau * tr(rho)."""
    return constant_channel(maximally_mixed(d))


def choi_of(ch: KrausChannel) -> np.ndarray:
    """Choi operator (Lambda (x) id) Phi_d of a channel with d_in = d_out = d.

    Computed as 1/d sum_m vec(K_m) vec(K_m)^dagger with row-major vec, which
    places the channel output on the first tensor factor and the reference
    on the second.
    """
    if ch.d_in != ch.d_out:
        raise ValueError("Choi operator requires d_in = d_out")
    d = ch.d_in
    if not ch.kraus_ops:
        return np.zeros((d * d, d * d), dtype=complex)
    b = np.stack([k.reshape(-1) for k in ch.kraus_ops])
    return (b.T @ b.conj()) / d


def channel_from_choi(omega: np.ndarray, tol: float = 1e-10) -> KrausChannel:
    """Kraus representation recovered from a Choi operator.

    Eigendecomposes d * omega and keeps modes with eigenvalue above 1e-12;
    the result reproduces d tr_2((1 (x) rho^T) omega) on any input. Raises
    ValueError if omega is not PSD within ``tol``.
    """
    omega = np.asarray(omega, dtype=complex)
    dd = omega.shape[0]
    d = int(round(np.sqrt(dd)))
    if omega.shape != (dd, dd) or d * d != dd:
        raise ValueError(f"Choi operator must be d^2 x d^2, got shape {omega.shape}")
    if np.max(np.abs(omega - omega.conj().T)) > tol:
        raise ValueError("Choi operator must be Hermitian")
    vals, vecs = np.linalg.eigh(omega * d)
    if vals[0] < -tol:
        raise ValueError(f"Choi operator is not PSD (min eigenvalue {vals[0]:.3e})")
    ops = [
        np.sqrt(lam) * vecs[:, m].reshape(d, d)
        for m, lam in enumerate(vals)
        if lam > KRAUS_CUTOFF
    ]
    return KrausChannel(d_in=d, d_out=d, kraus_ops=ops)


def choi_inverse_action(omega: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Channel action d tr_2((1 (x) rho^T) omega), straight from the Choi operator."""
    omega = np.asarray(omega, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if omega.shape != (d * d, d * d):
        raise ValueError("Choi operator and state dimensions disagree")
    lifted = np.kron(np.eye(d), rho.T) @ omega
    return d * partial_trace(lifted, (d, d), keep=(0,))


def random_cptni_channel(d: int, rng: np.random.Generator, num_kraus: int | None = None) -> KrausChannel:
    """A random completely positive trace non-increasing channel.

    Draws a Haar-random Stinespring isometry with ``num_kraus`` environment
    levels (random in 1..d^2 when omitted) and rescales it by a random
    factor in (0, 1], so roughly half the draws are strictly subnormalized.
    """
    if num_kraus is None:
        num_kraus = int(rng.integers(1, d * d + 1))
    g = rng.normal(size=(num_kraus * d, d)) + 1j * rng.normal(size=(num_kraus * d, d))
    v, _ = np.linalg.qr(g)
    scale = 1.0 if rng.random() < 0.5 else float(rng.uniform(0.2, 1.0))
    ops = [np.sqrt(scale) * v[j * d : (j + 1) * d, :] for j in range(num_kraus)]
    return KrausChannel(d_in=d, d_out=d, kraus_ops=ops)
