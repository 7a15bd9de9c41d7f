"""The real vector space of Hermitian operators whose DFT KD distribution is real.

A Hermitian F (written in the A basis) has a real KD table exactly when
``F[j, k] == F[2j - k, j]`` for all labels mod d. Iterating that map moves an
entry of difference ``n = j - k`` along its diagonal in steps of n, so the
entries split into orbit classes: for each n there are ``g = gcd(n, d)``
classes of ``d // g`` entries each, giving gamma(d) classes in total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .dft_core import DEFAULT_TOL, DFTContext, ToleranceConfig, is_hermitian, kd_distribution

ORACLE_CAP = 64


@dataclass(frozen=True)
class OrbitClass:
    n: int
    anchor: int
    members: tuple[tuple[int, int], ...]  # 1-based (row, col), increasing m

    @property
    def size(self) -> int:
        return len(self.members)


def _label(x: int, d: int) -> int:
    return (x - 1) % d + 1


def partition(d: int) -> list[OrbitClass]:
    """Orbit classes ordered by difference n, then anchor."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    classes = []
    for n in range(d):
        g = gcd(n, d)
        for k in range(1, g + 1):
            members = tuple(
                (_label(k + m * g + n, d), _label(k + m * g, d)) for m in range(1, d // g + 1)
            )
            classes.append(OrbitClass(n, k, members))
    return classes


def class_index(d: int) -> tuple[np.ndarray, list[OrbitClass]]:
    """d x d array mapping each 0-based entry to its position in ``partition(d)``."""
    classes = partition(d)
    index = np.full((d, d), -1, dtype=np.intp)
    for c, cls in enumerate(classes):
        for row, col in cls.members:
            index[row - 1, col - 1] = c
    return index, classes


def lemma1_violation(F, eps: float = DEFAULT_TOL.eps_classify):
    """First entry (row-major) breaking ``F[j,k] == F[2j-k, j]``.

    Returns ``None`` when the condition holds, else the pair of 1-based index
    pairs ``((j, k), (2j - k, j))`` that differ.
    """
    F = np.asarray(F, dtype=complex)
    d = F.shape[0]
    J, K = np.indices((d, d))
    partner = F[(2 * J - K) % d, J]
    bad = np.argwhere(np.abs(F - partner) > eps)
    if bad.size == 0:
        return None
    j, k = (int(x) for x in bad[0])
    return (j + 1, k + 1), (_label(2 * (j + 1) - (k + 1), d), j + 1)


def is_kd_real_lemma1(F, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[bool, tuple | None]:
    """Membership test for the KD-real space via the entrywise condition.

    Returns ``(ok, witness)``; ``witness`` is ``None`` when ``ok``.
    """
    F = np.asarray(F, dtype=complex)
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise ValueError(f"operator must be square, got shape {F.shape}")
    if not is_hermitian(F, tol.eps_classify):
        raise ValueError("operator is not Hermitian")
    witness = lemma1_violation(F, tol.eps_classify)
    return witness is None, witness


def _shift(d: int, n: int, k: int) -> np.ndarray:
    """sum over the orbit of |a_{row}><a_{col}| for class (n, anchor k)."""
    g = gcd(n, d)
    S = np.zeros((d, d), dtype=complex)
    for m in range(1, d // g + 1):
        S[(k + m * g + n - 1) % d, (k + m * g - 1) % d] = 1.0
    return S


@dataclass(frozen=True, eq=False)
class KDRealBasis:
    d: int
    elements: np.ndarray = field(repr=False)  # shape (gamma(d), d, d)
    labels: tuple[tuple[str, int, int], ...]  # (kind, n, anchor); kind in diag/half/sym/antisym

    def __len__(self) -> int:
        return len(self.labels)


def hermitian_basis(d: int, ctx: DFTContext | None = None) -> KDRealBasis:
    """Explicit real basis of the KD-real space with gamma(d) elements.

    Elements are the raw operators: diagonal projectors, the Hermitian shifts
    for n = d/2, and S + S^dagger, i(S - S^dagger) for each folded pair (n, d-n).
    """
    if ctx is not None and ctx.d != d:
        raise ValueError(f"context dimension {ctx.d} does not match d={d}")
    elements, labels = [], []
    for k in range(1, d + 1):
        elements.append(_shift(d, 0, k))
        labels.append(("diag", 0, k))
    if d % 2 == 0 and d > 1:
        n = d // 2
        for k in range(1, n + 1):
            elements.append(_shift(d, n, k))
            labels.append(("half", n, k))
    for n in range(1, (d - 1) // 2 + 1):
        for k in range(1, gcd(n, d) + 1):
            S = _shift(d, n, k)
            elements.append(S + S.conj().T)
            labels.append(("sym", n, k))
            elements.append(1j * (S - S.conj().T))
            labels.append(("antisym", n, k))
    return KDRealBasis(d, np.stack(elements), tuple(labels))


def hermitian_coordinates_basis(d: int) -> np.ndarray:
    """d*d Hermitian matrices forming a real basis of all Hermitian operators."""
    out = []
    for j in range(d):
        E = np.zeros((d, d), dtype=complex)
        E[j, j] = 1.0
        out.append(E)
    for j in range(d):
        for k in range(j + 1, d):
            E = np.zeros((d, d), dtype=complex)
            E[j, k] = E[k, j] = 1.0
            out.append(E)
            E = np.zeros((d, d), dtype=complex)
            E[j, k], E[k, j] = -1j, 1j
            out.append(E)
    return np.stack(out)


def numerical_rank(A: np.ndarray, rtol: float = 1e-8) -> int:
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def dim_oracle(d: int, ctx: DFTContext) -> int:
    """Dimension of the KD-real space from a rank computation alone.

    Each Hermitian coordinate direction is pushed through the KD map; the
    imaginary parts of all d*d entries form a real linear system whose
    nullspace is the KD-real space.
    """
    if d > ORACLE_CAP:
        raise ValueError(f"dim_oracle supports d <= {ORACLE_CAP}, got {d}")
    if ctx.d != d:
        raise ValueError(f"context dimension {ctx.d} does not match d={d}")
    U = ctx.U
    # Q[j, k] = sum_l F[j, l] * C[j, l, k]
    C = U[None, :, :] * U.conj()[:, None, :]
    p, q = np.triu_indices(d, 1)
    npairs = len(p)
    M = np.zeros((d, d, d * d))  # (row j, col k, coordinate)
    diag = np.arange(d)
    M[diag, :, diag] = C[diag, diag, :].imag
    sym = d + 2 * np.arange(npairs)
    anti = sym + 1
    # symmetric direction: F[p, q] = F[q, p] = 1
    M[p, :, sym] += C[p, q, :].imag
    M[q, :, sym] += C[q, p, :].imag
    # antisymmetric direction: F[p, q] = -i, F[q, p] = i
    M[p, :, anti] += (-1j * C[p, q, :]).imag
    M[q, :, anti] += (1j * C[q, p, :]).imag
    return d * d - numerical_rank(M.reshape(d * d, d * d))


def project_to_vkdr(F) -> np.ndarray:
    """Replace every entry by the mean of its orbit class.

    For Hermitian input this is the orthogonal (Frobenius) projection onto the
    KD-real space: transposing a class of difference n gives a class of
    difference d - n, so conjugate classes receive conjugate means.
    """
    F = np.asarray(F, dtype=complex)
    d = F.shape[0]
    index, classes = class_index(d)
    flat = index.ravel()
    counts = np.bincount(flat, minlength=len(classes))
    re = np.bincount(flat, weights=F.real.ravel(), minlength=len(classes)) / counts
    im = np.bincount(flat, weights=F.imag.ravel(), minlength=len(classes)) / counts
    return (re + 1j * im)[index]


def random_kdreal(d: int, seed=None) -> np.ndarray:
    """Standard-normal real combination of the basis elements.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts.
    """
    basis = hermitian_basis(d)
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(len(basis))
    return np.tensordot(coeffs, basis.elements, axes=1)


def kd_imag_max(F, ctx: DFTContext) -> float:
    return float(np.max(np.abs(kd_distribution(F, ctx).Q.imag)))
