"""Builders for exact and approximate 2-designs.

For prime dimension p the full Clifford group modulo global phases has
p^5 - p^3 elements and, as a uniform ensemble, is an exact unitary
2-design (hence a perfect non-malleable encryption scheme with key length
at most 5 log2(p) bits). Approximate designs are produced by sampling
i.i.d. from an exact design; an operator Chernoff argument makes the
multiplicative error theta shrink like 1/sqrt(N).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .design import UnitaryEnsemble, rank_bound
from .weyl import is_prime, weyl

CLIFFORD_PRIME_CAP = 5
_PHASE_PICK_TOL = 0.1
_KEY_DECIMALS = 6


@dataclass
class SamplerConfig:
    """Parameters for drawing an i.i.d. sampled ensemble."""

    d: int
    n_samples: int
    seed: int
    source: str = "clifford"

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        if self.source not in ("clifford", "haar"):
            raise ValueError(f"source must be 'clifford' or 'haar', got {self.source!r}")


def _clifford_generators(p: int) -> list:
    om = np.exp(2j * np.pi / p)
    fourier = np.array([[om ** ((j * k) % p) for k in range(p)] for j in range(p)]) / np.sqrt(p)
    if p == 2:
        quad = np.diag([1.0, 1j])
    else:
        quad = np.diag([om ** ((k * (k + 1) // 2) % p) for k in range(p)])
    return [fourier, quad, weyl(p, 1, 0), weyl(p, 0, 1)]


def _canonical_phase(u: np.ndarray) -> np.ndarray:
    flat = u.reshape(-1)
    idx = int(np.argmax(np.abs(flat) > _PHASE_PICK_TOL))
    z = flat[idx]
    return u * (abs(z) / z)


def _canonical_key(u: np.ndarray) -> bytes:
    v = _canonical_phase(u)
    # +0.0 normalizes -0.0 so byte keys are stable
    re = np.round(v.real, _KEY_DECIMALS) + 0.0
    im = np.round(v.imag, _KEY_DECIMALS) + 0.0
    return re.tobytes() + im.tobytes()


@lru_cache(maxsize=None)
def _clifford_elements(p: int) -> np.ndarray:
    gens = _clifford_generators(p)
    eye = np.eye(p, dtype=complex)
    seen = {_canonical_key(eye): _canonical_phase(eye)}
    frontier = [eye]
    while frontier:
        fresh = []
        for u in frontier:
            for g in gens:
                v = g @ u
                key = _canonical_key(v)
                if key not in seen:
                    seen[key] = _canonical_phase(v)
                    fresh.append(v)
        frontier = fresh
    elements = np.array(list(seen.values()))
    expected = p**5 - p**3
    if len(elements) != expected:
        raise RuntimeError(
            f"Clifford closure at p={p} produced {len(elements)} elements, expected {expected}"
        )
    return elements


def clifford_prime(p: int) -> UnitaryEnsemble:
    """Uniform ensemble over the full prime-dimension Clifford group mod phases.

    Enumerated by breadth-first closure over the Fourier, quadratic-phase,
    shift and phase generators, with one phase-fixed representative per
    class; the result has exactly p^5 - p^3 elements and is an exact
    unitary 2-design. Capped at p <= 5 to keep enumeration small.
    """
    if not is_prime(p) or p > CLIFFORD_PRIME_CAP:
        raise ValueError(f"p must be a prime <= {CLIFFORD_PRIME_CAP}, got {p}")
    return UnitaryEnsemble.uniform(p, _clifford_elements(p).copy())


def haar_unitary(d: int, rng) -> np.ndarray:
    """One Haar-distributed d x d unitary.

    ``rng`` is either an integer seed (a fresh counter-based generator is
    created, so equal seeds give equal matrices) or a numpy Generator to
    draw from. Uses QR of a complex Gaussian matrix with the diagonal phase
    correction that makes the distribution exactly Haar.
    """
    rng = _as_generator(rng)
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.Generator(np.random.Philox(int(rng)))


def sample_design(cfg: SamplerConfig) -> UnitaryEnsemble:
    """Uniform-weight ensemble of n_samples i.i.d. draws from the source design.

    Deterministic given the seed; draws are with repetition. Source
    'clifford' requires a prime dimension within the enumeration cap.
    """
    rng = _as_generator(cfg.seed)
    if cfg.source == "clifford":
        pool = clifford_prime(cfg.d).unitaries
        idx = rng.integers(0, len(pool), size=cfg.n_samples)
        unitaries = pool[idx]
    else:
        unitaries = np.array([haar_unitary(cfg.d, rng) for _ in range(cfg.n_samples)])
    return UnitaryEnsemble.uniform(cfg.d, unitaries)


def recommended_n(d: int, theta: float, delta: float) -> int:
    """Sample count for a target multiplicative error theta at failure rate delta.

    Solves the operator Chernoff tail 2 r exp(-theta^2 mu N / 2) <= delta
    for N, with mu = 1/(d^2 (d^2 - 1)) the smallest nonzero eigenvalue of
    the ideal second-moment operator and r its rank. The constant carries a
    safety factor 2 and is a heuristic: measured theta is what certifies an
    ensemble, never this formula.
    """
    if not 0 < theta <= 0.5:
        raise ValueError(f"theta must lie in (0, 1/2], got {theta}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    mu = 1.0 / (d * d * (d * d - 1))
    return math.ceil(2.0 / (theta * theta * mu) * math.log(2 * rank_bound(d) / delta))
