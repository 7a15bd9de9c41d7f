"""DFT transition matrix, Kirkwood-Dirac distributions and their classification.

Index convention: externally, bases are labelled 1..d. Internally arrays are
0-based and position ``i`` holds label ``i + 1``; label ``d`` is the same
residue as ``0``. So ``U[i, k] = omega**((i + 1) * (k + 1)) / sqrt(d)``.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_DIM_CAP = 512


def dim_cap() -> int:
    """Dimension cap, overridable through ``KD_DFT_DIM_CAP``."""
    raw = os.environ.get("KD_DFT_DIM_CAP")
    if raw is None:
        return DEFAULT_DIM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"KD_DFT_DIM_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"KD_DFT_DIM_CAP must be positive, got {cap}")
    return cap


@dataclass(frozen=True)
class ToleranceConfig:
    eps_classify: float = 1e-10
    eps_residual: float = 1e-9
    eps_unitary: float = 1e-12

    def __post_init__(self) -> None:
        for name in ("eps_classify", "eps_residual", "eps_unitary"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


def root_of_unity(d: int, power: int | np.ndarray = 1) -> complex | np.ndarray:
    """``exp(2*pi*i*power/d)`` with the exponent reduced mod d first.

    Reducing before exponentiation keeps the phase error at a few ulp even for
    large exponents such as ``j * k`` with ``j, k`` near ``d``.
    """
    r = np.mod(power, d)
    out = np.exp(2j * np.pi * (r / d))
    # quarter turns are exact: 1, i, -1, -i
    quarter = (4 * r) % d == 0
    if np.any(quarter):
        exact = np.array([1, 1j, -1, -1j])[(4 * r // d) % 4]
        out = np.where(quarter, exact, out)
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True, eq=False)
class DFTContext:
    """The d x d DFT transition matrix ``U[j][k] = <a_j|b_k> = omega**(jk)/sqrt(d)``."""

    d: int
    U: np.ndarray = field(repr=False)

    @property
    def omega(self) -> complex:
        return complex(root_of_unity(self.d))

    @cached_property
    def U_conj(self) -> np.ndarray:
        out = self.U.conj()
        out.setflags(write=False)
        return out

    def b_vector(self, k: int) -> np.ndarray:
        """A-basis amplitudes of ``|b_k>`` (1-based label, taken mod d)."""
        return self.U[:, (k - 1) % self.d].copy()


def make_dft(d: int) -> DFTContext:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise TypeError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    cap = dim_cap()
    if not 1 <= d <= cap:
        raise ValueError(f"dimension must lie in [1, {cap}], got {d}")
    labels = np.arange(1, d + 1)
    U = root_of_unity(d, np.outer(labels, labels)) / np.sqrt(d)
    U.setflags(write=False)
    return DFTContext(d, U)


def check_unitary(ctx: DFTContext, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    U = ctx.U
    eye = np.eye(ctx.d)
    return bool(
        np.max(np.abs(U.conj().T @ U - eye)) <= tol.eps_unitary
        and np.array_equal(U, U.T)
        and np.max(np.abs(np.abs(U) - 1 / np.sqrt(ctx.d))) <= tol.eps_unitary
    )


@dataclass(frozen=True, eq=False)
class KDDistribution:
    d: int
    Q: np.ndarray = field(repr=False)

    @property
    def row_marginals(self) -> np.ndarray:
        return self.Q.sum(axis=1)

    @property
    def col_marginals(self) -> np.ndarray:
        return self.Q.sum(axis=0)

    @property
    def total(self) -> complex:
        return complex(self.Q.sum())

    def rows(self):
        """Yield ``(j, k, Q_jk)`` with 1-based labels in row-major order."""
        for j in range(self.d):
            for k in range(self.d):
                yield j + 1, k + 1, complex(self.Q[j, k])


def _as_square(F, d: int | None = None) -> np.ndarray:
    F = np.asarray(F, dtype=complex)
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {F.shape}")
    if d is not None and F.shape[0] != d:
        raise ValueError(f"operator dimension {F.shape[0]} does not match d={d}")
    return F


def _transition(ctx_or_unitary) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(ctx_or_unitary, DFTContext):
        return ctx_or_unitary.U, ctx_or_unitary.U_conj
    U = _as_square(ctx_or_unitary)
    return U, U.conj()


def kd_distribution(F, ctx) -> KDDistribution:
    """KD table ``Q = (F U) o U*`` (Hadamard product).

    ``ctx`` is normally a :class:`DFTContext`; any unitary matrix is accepted
    too, for comparison experiments.
    """
    U, U_conj = _transition(ctx)
    F = _as_square(F, U.shape[0])
    return KDDistribution(U.shape[0], (F @ U) * U_conj)


def kd_distribution_definitional(F, ctx) -> np.ndarray:
    """Entry by entry ``<a_j|F|b_k><b_k|a_j>``; slow reference evaluation."""
    U, _ = _transition(ctx)
    d = U.shape[0]
    F = _as_square(F, d)
    Q = np.empty((d, d), dtype=complex)
    for j in range(d):
        a_j = np.zeros(d, dtype=complex)
        a_j[j] = 1.0
        for k in range(d):
            b_k = U[:, k]
            Q[j, k] = np.vdot(a_j, F @ b_k) * np.vdot(b_k, a_j)
    return Q


class KDClass(enum.Enum):
    KD_POSITIVE = "KD_POSITIVE"
    KD_REAL_NOT_POSITIVE = "KD_REAL_NOT_POSITIVE"
    KD_COMPLEX = "KD_COMPLEX"


@dataclass(frozen=True)
class Classification:
    kind: KDClass
    witness: tuple[int, int] | None = None  # 1-based (j, k) of the largest violation
    violation: float = 0.0


def classify(dist: KDDistribution | np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> Classification:
    Q = dist.Q if isinstance(dist, KDDistribution) else np.asarray(dist, dtype=complex)
    eps = tol.eps_classify
    imag = np.abs(Q.imag)
    idx = np.unravel_index(np.argmax(imag), Q.shape)
    if imag[idx] > eps:
        return Classification(KDClass.KD_COMPLEX, (int(idx[0]) + 1, int(idx[1]) + 1), float(imag[idx]))
    idx = np.unravel_index(np.argmin(Q.real), Q.shape)
    if Q.real[idx] < -eps:
        return Classification(
            KDClass.KD_REAL_NOT_POSITIVE, (int(idx[0]) + 1, int(idx[1]) + 1), float(-Q.real[idx])
        )
    return Classification(KDClass.KD_POSITIVE)


def is_hermitian(F, atol: float = DEFAULT_TOL.eps_classify) -> bool:
    F = _as_square(F)
    return bool(np.max(np.abs(F - F.conj().T), initial=0.0) <= atol)


def is_density(F, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    F = _as_square(F)
    eps = tol.eps_classify
    if not is_hermitian(F, eps):
        return False
    if abs(np.trace(F) - 1) > eps:
        return False
    H = (F + F.conj().T) / 2
    return bool(np.linalg.eigvalsh(H)[0] >= -eps)


def projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    return np.outer(v, v.conj())


def basis_projector(d: int, j: int) -> np.ndarray:
    """``|a_j><a_j|`` for a 1-based label j."""
    P = np.zeros((d, d), dtype=complex)
    P[(j - 1) % d, (j - 1) % d] = 1.0
    return P
