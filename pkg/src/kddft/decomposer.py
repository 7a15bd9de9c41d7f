"""Writing KD-real operators as real combinations of pure KD-positive projectors.

The constructive route rests on one identity. With ``P_j`` the projector for
descriptor ``(d1, d2, j, k)``,

    sum_j omega_{d1}**(l j) P_j = sum_{j'} |a_{k + j' d2}><a_{k + (j' + l) d2}|,

a cyclic shift of difference ``-l d2`` along the residue class ``k mod d2``.
An orbit class of difference n with ``g = gcd(n, d)`` is such a shift with
``d2 = g``, ``d1 = d / g`` and ``l = -(n / g) mod d1``. So a class carrying
value c, together with its conjugate class carrying c*, equals
``sum_j 2 Re(c omega_{d1}**(l j)) P_j``. For n = d/2 the class is its own
conjugate and the factor 2 drops out.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .dft_core import DEFAULT_TOL, DFTContext, ToleranceConfig, root_of_unity
from .kdreal_space import is_kd_real_lemma1, numerical_rank
from .pure_states import PureStateDescriptor, build_state_a_form, projector_stack

PRUNE_BELOW = 1e-14
SPAN_RANK_CAP = 32


class NotKDRealError(ValueError):
    """Operator fails the KD-real entry condition, so no decomposition exists."""

    def __init__(self, witness):
        self.witness = witness
        (j, k), (j2, k2) = witness
        super().__init__(f"operator is not KD real: F[{j},{k}] != F[{j2},{k2}]")


@dataclass(frozen=True, eq=False)
class Decomposition:
    terms: list[tuple[PureStateDescriptor, float]]
    residual: float
    coefficient_sum: float
    reconstruction: np.ndarray = field(repr=False)

    def to_json(self) -> dict:
        return {
            "terms": [{**desc.as_dict(), "lambda": lam} for desc, lam in self.terms],
            "residual": self.residual,
            "coefficient_sum": self.coefficient_sum,
        }


def _finish(F: np.ndarray, coeffs: dict[PureStateDescriptor, float], ctx: DFTContext) -> Decomposition:
    terms = [(desc, float(lam)) for desc, lam in sorted(coeffs.items()) if abs(lam) >= PRUNE_BELOW]
    R = np.zeros_like(F)
    for desc, lam in terms:
        R += lam * build_state_a_form(desc, ctx).projector
    residual = float(np.max(np.abs(R - F), initial=0.0))
    return Decomposition(terms, residual, float(sum(lam for _, lam in terms)), R)


def decompose_constructive(F, ctx: DFTContext, tol: ToleranceConfig = DEFAULT_TOL) -> Decomposition:
    F = np.asarray(F, dtype=complex)
    d = ctx.d
    if F.shape != (d, d):
        raise ValueError(f"operator shape {F.shape} does not match d={d}")
    ok, witness = is_kd_real_lemma1(F, tol)
    if not ok:
        raise NotKDRealError(witness)

    coeffs: dict[PureStateDescriptor, float] = defaultdict(float)
    for k in range(1, d + 1):
        coeffs[PureStateDescriptor(d, 1, d, 1, k)] += F[k - 1, k - 1].real

    folded = list(range(1, (d - 1) // 2 + 1))
    if d % 2 == 0 and d > 1:
        folded.append(d // 2)
    for n in folded:
        g = gcd(n, d)
        d1 = d // g
        weight = 1.0 if 2 * n == d else 2.0
        l = (-(n // g)) % d1
        phases = root_of_unity(d1, l * np.arange(1, d1 + 1))
        for k in range(1, g + 1):
            # any member of the class will do; take m = d1 (column k)
            c = F[(k + n - 1) % d, k - 1]
            lam = weight * (c * phases).real
            for j in range(1, d1 + 1):
                coeffs[PureStateDescriptor(d, d1, g, j, k)] += lam[j - 1]
    return _finish(F, coeffs, ctx)


def _realify(stack: np.ndarray) -> np.ndarray:
    """Columns are complex d x d matrices flattened to real 2 d^2 vectors."""
    flat = stack.reshape(stack.shape[0], -1)
    return np.concatenate([flat.real, flat.imag], axis=1).T


def decompose_least_squares(F, ctx: DFTContext) -> Decomposition:
    """Minimum-norm real least squares over the whole projector catalog."""
    F = np.asarray(F, dtype=complex)
    d = ctx.d
    if F.shape != (d, d):
        raise ValueError(f"operator shape {F.shape} does not match d={d}")
    descs, P = projector_stack(d, ctx)
    A = _realify(P)
    b = _realify(F[None])[:, 0]
    lam, *_ = np.linalg.lstsq(A, b, rcond=None)
    return _finish(F, dict(zip(descs, lam)), ctx)


def span_rank(d: int, ctx: DFTContext) -> int:
    """Real rank of the catalog projectors as vectors in R^(2 d^2)."""
    if d > SPAN_RANK_CAP:
        raise ValueError(f"span_rank supports d <= {SPAN_RANK_CAP}, got {d}")
    if ctx.d != d:
        raise ValueError(f"context dimension {ctx.d} does not match d={d}")
    _, P = projector_stack(d, ctx)
    return numerical_rank(_realify(P))
