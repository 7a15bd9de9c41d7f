"""Per-dimension verification sweep behind ``kddft verify``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numtheory as nt
from .decomposer import decompose_constructive, span_rank
from .dft_core import DEFAULT_TOL, ToleranceConfig, classify, kd_distribution, make_dft, KDClass
from .kdreal_space import dim_oracle, random_kdreal
from .pure_states import build_state_b_form, catalog

VERIFY_CAP = 24
ROUND_TRIPS = 20


@dataclass(frozen=True)
class Check:
    name: str
    d: int
    expected: object
    actual: object
    passed: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "passed", bool(self.passed))


@dataclass
class VerifyReport:
    d_min: int
    d_max: int
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_dimension(d: int, seed: int = 42, tol: ToleranceConfig = DEFAULT_TOL) -> list[Check]:
    ctx = make_dft(d)
    gamma = nt.gcd_sum(d)
    dtau = d * nt.tau(d)
    checks = []

    paths = (nt.gcd_sum_direct(d), nt.gamma_mobius(d), nt.summatory_gamma(d))
    checks.append(Check("gamma identities", d, [gamma, gamma, dtau], list(paths),
                        paths == (gamma, gamma, dtau)))

    states = catalog(d, ctx)
    checks.append(Check("pure count", d, dtau, len(states), len(states) == dtau))

    non_positive = sum(
        classify(kd_distribution(s.projector, ctx), tol).kind is not KDClass.KD_POSITIVE for s in states
    )
    checks.append(Check("pure positivity", d, 0, non_positive, non_positive == 0))

    dual = max(np.max(np.abs(s.vector_a - build_state_b_form(s.descriptor, ctx).vector_a)) for s in states)
    checks.append(Check("dual form", d, "<= 1e-10", float(dual), dual <= 1e-10))

    dim = dim_oracle(d, ctx)
    checks.append(Check("dim", d, gamma, dim, dim == gamma))

    rank = span_rank(d, ctx)
    checks.append(Check("span rank", d, gamma, rank, rank == gamma))

    worst = 0.0
    for i in range(ROUND_TRIPS):
        F = random_kdreal(d, [seed, d, i])
        dec = decompose_constructive(F, ctx, tol)
        worst = max(worst, dec.residual, abs(dec.coefficient_sum - np.trace(F).real))
    checks.append(Check("round trip", d, f"<= {tol.eps_residual:g}", float(worst), worst <= tol.eps_residual))
    return checks


def run_verify(d_min: int = 1, d_max: int = 12, seed: int = 42, tol: ToleranceConfig = DEFAULT_TOL) -> VerifyReport:
    if not 1 <= d_min <= d_max <= VERIFY_CAP:
        raise ValueError(f"need 1 <= d_min <= d_max <= {VERIFY_CAP}, got {d_min}..{d_max}")
    report = VerifyReport(d_min, d_max)
    for d in range(d_min, d_max + 1):
        report.checks.extend(verify_dimension(d, seed, tol))
    return report
