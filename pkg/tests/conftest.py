"""Shared test helpers.

``amp_joint_probs`` recomputes measurement statistics straight from state
amplitudes (tensor contraction with measurement kets), giving an oracle
that shares no code with the density-matrix path under test.
"""

import numpy as np
import pytest


def mket(theta: float, outcome: int) -> np.ndarray:
    half = theta / 2.0
    if outcome > 0:
        return np.array([np.cos(half), np.sin(half)], dtype=complex)
    return np.array([np.sin(half), -np.cos(half)], dtype=complex)


def amp_joint_probs(amps: np.ndarray, settings) -> dict:
    """Outcome distribution of per-qubit measurements on a pure state.

    ``settings`` lists one angle (or None to skip) per qubit.  Returns a
    dict over outcome tuples of +1/-1 for the measured qubits.
    """
    n = int(np.log2(amps.size))
    tensor = np.asarray(amps, dtype=complex).reshape([2] * n)
    measured = [i for i, s in enumerate(settings) if s is not None]
    out = {}
    for combo in np.ndindex(*([2] * len(measured))):
        outcomes = tuple(+1 if c == 0 else -1 for c in combo)
        t = tensor
        for pos, qubit in enumerate(measured):
            ket = mket(settings[qubit], outcomes[pos])
            # contract the (possibly shifted) qubit axis with the bra
            axis = qubit - sum(1 for q in measured[:pos] if q < qubit)
            t = np.tensordot(ket.conj(), t, axes=([0], [axis]))
        out[outcomes] = float(np.sum(np.abs(t) ** 2))
    return out


def entropy_bits(ps) -> float:
    ps = np.asarray([p for p in ps if p > 1e-15], dtype=float)
    return float(-np.sum(ps * np.log2(ps)))


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_density_mat(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return m / np.trace(m)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


GRID_101 = np.linspace(0.0, np.pi / 2, 101)
