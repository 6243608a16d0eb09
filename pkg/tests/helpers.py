"""Shared test oracles: batched Haar sampling and Monte-Carlo twirling.

These deliberately avoid the library's projection formulas so they can
serve as independent cross-checks.
"""

import numpy as np

from qnm.weyl import weyl


def philox(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def haar_batch(d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Stack of ``count`` Haar unitaries via QR with diagonal phase fix."""
    z = rng.normal(size=(count, d, d)) + 1j * rng.normal(size=(count, d, d))
    q, r = np.linalg.qr(z)
    diag = np.einsum("bii->bi", r)
    return q * (diag / np.abs(diag))[:, None, :]


def random_density(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random full-rank (by default) density matrix from a Wishart draw."""
    rank = rank or d
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def mc_haar_twirl(inputs, d: int, n_samples: int, seed: int, chunk: int = 2000) -> np.ndarray:
    """Monte-Carlo estimate of the average of (U (x) conj(U)) X (...)^dagger over Haar U.

    Each of the ``n_samples`` Haar draws is stratified over the discrete
    Weyl fiber (whose conditional average is evaluated exactly), which
    keeps the estimator unbiased while cutting its variance. The same
    sample stream is shared by all inputs.
    """
    xs = np.asarray(inputs, dtype=complex)
    squeeze = xs.ndim == 2
    if squeeze:
        xs = xs[None]
    dd = d * d
    # orthonormal (Frobenius) basis of the Weyl-fiber average's range
    bflat = np.array(
        [np.kron(weyl(d, a, b), weyl(d, a, b).conj()).reshape(-1) for a in range(d) for b in range(d)]
    ) / d
    rng = philox(seed)
    acc = np.zeros((xs.shape[0], dd * dd), dtype=complex)
    left = n_samples
    while left > 0:
        b = min(chunk, left)
        u = haar_batch(d, b, rng)
        v = np.einsum("bik,bjl->bijkl", u, u.conj()).reshape(b, dd, dd)
        y = np.einsum("bpq,nqr,bsr->bnps", v, xs, v.conj()).reshape(b, xs.shape[0], dd * dd)
        coeff = y @ bflat.conj().T
        acc += np.einsum("bnw,wf->nf", coeff, bflat)
        left -= b
    out = (acc / n_samples).reshape(xs.shape[0], dd, dd)
    return out[0] if squeeze else out
