"""Kirkwood-Dirac quasiprobabilities for the discrete Fourier transform."""

from .decomposer import (
    Decomposition,
    NotKDRealError,
    decompose_constructive,
    decompose_least_squares,
    span_rank,
)
from .dft_core import (
    Classification,
    DFTContext,
    KDClass,
    KDDistribution,
    ToleranceConfig,
    classify,
    is_density,
    kd_distribution,
    make_dft,
)
from .kdreal_space import (
    OrbitClass,
    dim_oracle,
    hermitian_basis,
    is_kd_real_lemma1,
    partition,
    project_to_vkdr,
    random_kdreal,
)
from .numtheory import (
    divisors,
    factorize,
    gamma_mobius,
    gcd_sum,
    gcd_sum_direct,
    mobius,
    phi,
    summatory_gamma,
    tau,
)
from .pure_states import (
    PureState,
    PureStateDescriptor,
    build_state_a_form,
    build_state_b_form,
    catalog,
    enumerate_descriptors,
)

__version__ = "0.1.0"
