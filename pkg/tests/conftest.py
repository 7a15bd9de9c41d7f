import numpy as np
import pytest


def random_hermitian(rng, d):
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (G + G.conj().T) / 2


def random_complex(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def random_density(rng, d, rank=None):
    G = rng.standard_normal((d, rank or d)) + 1j * rng.standard_normal((d, rank or d))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def ket(d, j):
    """|a_j> for a 1-based label."""
    v = np.zeros(d, dtype=complex)
    v[(j - 1) % d] = 1.0
    return v


def ketbra(d, j, k):
    """|a_j><a_k| for 1-based labels."""
    M = np.zeros((d, d), dtype=complex)
    M[(j - 1) % d, (k - 1) % d] = 1.0
    return M


def dft_termwise(d):
    """U[j][k] = exp(2 pi i jk / d) / sqrt(d), evaluated entry by entry with cmath."""
    import cmath

    return np.array(
        [[cmath.exp(2j * cmath.pi * j * k / d) / d**0.5 for k in range(1, d + 1)] for j in range(1, d + 1)]
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
