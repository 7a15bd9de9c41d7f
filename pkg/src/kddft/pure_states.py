"""Catalog of pure KD-positive states for the DFT.

For every factorization ``d = d1 * d2`` and labels ``j in [1, d1]``,
``k in [1, d2]`` the state

    |psi> = d1**-0.5 * sum_{j'=1..d1} omega_{d1}**(j j') |a_{k + j' d2}>

is KD positive, and these d * tau(d) states exhaust the pure ones. The same
vector has a second expansion over the B basis, built independently by
:func:`build_state_b_form` as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dft_core import DFTContext, projector, root_of_unity
from .numtheory import divisors


@dataclass(frozen=True, order=True)
class PureStateDescriptor:
    d: int
    d1: int
    d2: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if self.d1 * self.d2 != self.d or self.d1 < 1 or self.d2 < 1:
            raise ValueError(f"need d1 * d2 == d, got {self.d1} * {self.d2} != {self.d}")
        if not 1 <= self.j <= self.d1:
            raise ValueError(f"j must lie in [1, {self.d1}], got {self.j}")
        if not 1 <= self.k <= self.d2:
            raise ValueError(f"k must lie in [1, {self.d2}], got {self.k}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.d1, self.d2, self.j, self.k)

    def as_dict(self) -> dict[str, int]:
        return {"d1": self.d1, "d2": self.d2, "j": self.j, "k": self.k}


@dataclass(frozen=True, eq=False)
class PureState:
    descriptor: PureStateDescriptor
    vector_a: np.ndarray = field(repr=False)

    @property
    def projector(self) -> np.ndarray:
        return projector(self.vector_a)


def enumerate_descriptors(d: int) -> list[PureStateDescriptor]:
    return [
        PureStateDescriptor(d, d1, d // d1, j, k)
        for d1 in divisors(d)
        for j in range(1, d1 + 1)
        for k in range(1, d // d1 + 1)
    ]


def _check_ctx(desc: PureStateDescriptor, ctx: DFTContext) -> None:
    if desc.d != ctx.d:
        raise ValueError(f"descriptor dimension {desc.d} does not match context d={ctx.d}")


def build_state_a_form(desc: PureStateDescriptor, ctx: DFTContext, alpha: float = 0.0) -> PureState:
    _check_ctx(desc, ctx)
    d, d1, d2 = desc.d, desc.d1, desc.d2
    vec = np.zeros(d, dtype=complex)
    for jp in range(1, d1 + 1):
        # 1-based label k + j' d2 reduced into [1, d] -> 0-based slot
        vec[(desc.k + jp * d2 - 1) % d] = root_of_unity(d1, desc.j * jp)
    vec /= np.sqrt(d1)
    if alpha:
        vec *= np.exp(1j * alpha)
    return PureState(desc, vec)


def build_state_b_form(desc: PureStateDescriptor, ctx: DFTContext, alpha: float = 0.0) -> PureState:
    """Same state assembled from B-basis vectors (columns of U)."""
    _check_ctx(desc, ctx)
    d1, d2, j, k = desc.as_tuple()
    vec = np.zeros(desc.d, dtype=complex)
    for kp in range(1, d2 + 1):
        vec += root_of_unity(d2, -k * kp) * ctx.b_vector(j + kp * d1)
    vec *= root_of_unity(desc.d, -j * k) / np.sqrt(d2)
    if alpha:
        vec *= np.exp(1j * alpha)
    return PureState(desc, vec)


class DuplicateStateError(RuntimeError):
    """Two descriptors produced the same projector."""


def catalog(d: int, ctx: DFTContext, *, check_distinct: bool = True) -> list[PureState]:
    """All d * tau(d) pure KD-positive states, ordered by (d1, j, k)."""
    if ctx.d != d:
        raise ValueError(f"context dimension {ctx.d} does not match d={d}")
    states = [build_state_a_form(desc, ctx) for desc in enumerate_descriptors(d)]
    if check_distinct and len(states) > 1:
        P = np.stack([s.projector.ravel() for s in states])
        # max-abs distance between every pair of projectors
        for i in range(len(states) - 1):
            gaps = np.max(np.abs(P[i + 1 :] - P[i]), axis=1)
            bad = np.flatnonzero(gaps <= 1e-6)
            if bad.size:
                other = states[i + 1 + int(bad[0])]
                raise DuplicateStateError(
                    f"{states[i].descriptor} and {other.descriptor} give the same projector"
                )
    return states


def projector_stack(d: int, ctx: DFTContext) -> tuple[list[PureStateDescriptor], np.ndarray]:
    """Descriptors and their projectors as an array of shape (n, d, d)."""
    states = catalog(d, ctx, check_distinct=False)
    return [s.descriptor for s in states], np.stack([s.projector for s in states])
