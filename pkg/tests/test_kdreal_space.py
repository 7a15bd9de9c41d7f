from collections import Counter
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kddft.dft_core import kd_distribution, make_dft
from kddft.kdreal_space import (
    ORACLE_CAP,
    class_index,
    dim_oracle,
    hermitian_basis,
    hermitian_coordinates_basis,
    is_kd_real_lemma1,
    numerical_rank,
    partition,
    project_to_vkdr,
    random_kdreal,
)
from kddft.numtheory import gcd_sum

from conftest import random_hermitian

# Class labels of the d=6 example matrix, entry (row, col) -> label 1..15.
D6_LABELS = {
    **{(k, k): k for k in range(1, 7)},
    (2, 1): 7, (3, 2): 7, (4, 3): 7, (5, 4): 7, (6, 5): 7, (1, 6): 7,
    (6, 1): 8, (5, 6): 8, (4, 5): 8, (3, 4): 8, (2, 3): 8, (1, 2): 8,
    (3, 1): 9, (5, 3): 9, (1, 5): 9,
    (4, 2): 10, (6, 4): 10, (2, 6): 10,
    (5, 1): 11, (3, 5): 11, (1, 3): 11,
    (6, 2): 12, (4, 6): 12, (2, 4): 12,
    (4, 1): 13, (1, 4): 13,
    (5, 2): 14, (2, 5): 14,
    (6, 3): 15, (3, 6): 15,
}
D6_CONJUGATE = {7: 8, 9: 11, 10: 12}


def d6_example_operator(rng):
    """Hermitian F with one value per class following the labelled d=6 pattern."""
    values = {}
    for label in range(1, 16):
        values[label] = rng.standard_normal()
    for a, b in D6_CONJUGATE.items():
        values[a] = rng.standard_normal() + 1j * rng.standard_normal()
        values[b] = np.conj(values[a])
    F = np.zeros((6, 6), dtype=complex)
    for (r, c), label in D6_LABELS.items():
        F[r - 1, c - 1] = values[label]
    return F


def test_d6_labels_cover_matrix():
    assert len(D6_LABELS) == 36


def test_lemma1_diagonal(rng):
    for d in (1, 4, 7):
        ok, witness = is_kd_real_lemma1(np.diag(rng.standard_normal(d)))
        assert ok and witness is None


def test_lemma1_d6_example(rng):
    F = d6_example_operator(rng)
    assert is_kd_real_lemma1(F)[0]
    assert np.abs(kd_distribution(F, make_dft(6)).Q.imag).max() < 1e-12


def test_lemma1_d3_violation():
    F = np.diag([0.3, -1.0, 2.0]).astype(complex)
    F[1, 0] = F[0, 1] = 1.0  # F_21 = 1, F_32 = 0
    ok, witness = is_kd_real_lemma1(F)
    assert not ok
    (j, k), (j2, k2) = witness
    assert (j - k) % 3 == (j2 - k2) % 3
    assert F[j - 1, k - 1] != F[j2 - 1, k2 - 1]


def test_lemma1_rejects_non_hermitian():
    with pytest.raises(ValueError):
        is_kd_real_lemma1(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize("d", range(2, 13))
def test_lemma1_agrees_with_kd_reality(rng, d):
    ctx = make_dft(d)
    for i in range(200):
        F = random_hermitian(rng, d) if i % 2 else project_to_vkdr(random_hermitian(rng, d))
        ok, _ = is_kd_real_lemma1(F)
        real = np.abs(kd_distribution(F, ctx).Q.imag).max() <= 1e-10
        assert ok == real


def test_partition_d6_counts_and_sizes():
    classes = partition(6)
    assert len(classes) == 15
    counts = Counter(c.n for c in classes)
    assert dict(counts) == {0: 6, 1: 1, 2: 2, 3: 3, 4: 2, 5: 1}
    sizes = {c.n: c.size for c in classes}
    assert sizes == {0: 1, 1: 6, 2: 3, 3: 2, 4: 3, 5: 6}


def test_partition_d6_matches_labelled_example():
    by_label = {}
    for pos, label in D6_LABELS.items():
        by_label.setdefault(label, set()).add(pos)
    ours = {frozenset(c.members) for c in partition(6)}
    assert ours == {frozenset(v) for v in by_label.values()}
    index, _ = class_index(6)
    assert index[2, 0] == index[4, 2] == index[0, 4]  # (3,1), (5,3), (1,5)


def test_partition_d1():
    classes = partition(1)
    assert len(classes) == 1 and classes[0].members == ((1, 1),)


def test_partition_d8_total():
    assert len(partition(8)) == 20 == gcd_sum(8)


@pytest.mark.parametrize("d", range(1, 25))
def test_partition_properties(d):
    classes = partition(d)
    assert len(classes) == gcd_sum(d)
    seen = [m for c in classes for m in c.members]
    assert len(seen) == len(set(seen)) == d * d
    for n in range(d):
        g = gcd(n, d)
        of_n = [c for c in classes if c.n == n]
        assert len(of_n) == g
        assert all(c.size == d // g for c in of_n)
        assert sorted(c.anchor for c in of_n) == list(range(1, g + 1))
    for c in classes:
        assert all((r - s) % d == c.n for r, s in c.members)
        assert c.anchor == min(s for _, s in c.members)
    # conjugacy: transposing a class of difference n gives a class of difference -n
    as_sets = {frozenset(c.members): c.n for c in classes}
    for c in classes:
        transposed = frozenset((s, r) for r, s in c.members)
        assert as_sets[transposed] == (-c.n) % d


@pytest.mark.parametrize("d", range(1, 25))
def test_partition_matches_lemma1_orbits(d):
    index, _ = class_index(d)
    J, K = np.indices((d, d))
    np.testing.assert_array_equal(index, index[(2 * J - K) % d, J])


def test_hermitian_basis_d2():
    elements = hermitian_basis(2).elements
    assert len(elements) == 3
    expected = [np.diag([1, 0]), np.diag([0, 1]), np.array([[0, 1], [1, 0]])]
    for E, X in zip(elements, expected):
        np.testing.assert_array_equal(E, X)


@pytest.mark.parametrize("d, count", [(6, 15), (7, 13), (1, 1), (9, 21)])
def test_hermitian_basis_counts(d, count):
    assert len(hermitian_basis(d, make_dft(d))) == count


@pytest.mark.parametrize("d", range(1, 17))
def test_hermitian_basis_properties(d):
    basis = hermitian_basis(d)
    ctx = make_dft(d)
    for (kind, n, k), E in zip(basis.labels, basis.elements):
        np.testing.assert_array_equal(E, E.conj().T)
        assert is_kd_real_lemma1(E)[0]
        assert np.abs(kd_distribution(E, ctx).Q.imag).max() < 1e-12
        if kind in ("diag", "half"):
            assert np.all(E.imag == 0)
    vecs = np.concatenate([basis.elements.real, basis.elements.imag], axis=1).reshape(len(basis), -1)
    assert numerical_rank(vecs) == len(basis) == gcd_sum(d)


def test_hermitian_basis_context_mismatch():
    with pytest.raises(ValueError):
        hermitian_basis(4, make_dft(5))


@pytest.mark.parametrize("d, expected", [(6, 15), (4, 8), (9, 21), (1, 1), (2, 3)])
def test_dim_oracle_examples(d, expected):
    assert dim_oracle(d, make_dft(d)) == expected


def _dim_by_einsum(d):
    # same quantity as dim_oracle, assembled from dense basis matrices instead
    ctx = make_dft(d)
    H = hermitian_coordinates_basis(d)
    Q = np.einsum("bjl,lk->bjk", H, ctx.U) * ctx.U.conj()
    return d * d - numerical_rank(Q.imag.reshape(len(H), -1))


@pytest.mark.parametrize("d", range(1, 13))
def test_dim_oracle_matches_dense_construction(d):
    assert dim_oracle(d, make_dft(d)) == _dim_by_einsum(d) == gcd_sum(d)


def test_dim_oracle_cap():
    with pytest.raises(ValueError):
        dim_oracle(ORACLE_CAP + 1, make_dft(ORACLE_CAP + 1))


def test_project_fixes_members(rng):
    for d in (2, 5, 6, 12):
        F = random_kdreal(d, int(rng.integers(1 << 30)))
        np.testing.assert_allclose(project_to_vkdr(F), F, atol=1e-12)
        D = np.diag(rng.standard_normal(d))
        np.testing.assert_allclose(project_to_vkdr(D), D, atol=1e-15)


def test_project_d6_pattern(rng):
    P = project_to_vkdr(random_hermitian(rng, 6))
    for label in range(1, 16):
        vals = [P[r - 1, c - 1] for (r, c), lab in D6_LABELS.items() if lab == label]
        assert np.ptp(np.real(vals)) < 1e-14 and np.ptp(np.imag(vals)) < 1e-14
    for a, b in D6_CONJUGATE.items():
        va = next(P[r - 1, c - 1] for (r, c), lab in D6_LABELS.items() if lab == a)
        vb = next(P[r - 1, c - 1] for (r, c), lab in D6_LABELS.items() if lab == b)
        assert va == pytest.approx(np.conj(vb), abs=1e-14)
    for label in (1, 2, 3, 4, 5, 6, 13, 14, 15):
        v = next(P[r - 1, c - 1] for (r, c), lab in D6_LABELS.items() if lab == label)
        assert abs(v.imag) < 1e-15


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 14), st.integers(0, 2**32 - 1))
def test_project_properties(d, seed):
    rng = np.random.default_rng(seed)
    F = random_hermitian(rng, d)
    P = project_to_vkdr(F)
    np.testing.assert_allclose(P, P.conj().T, atol=1e-13)
    assert is_kd_real_lemma1(P)[0]
    np.testing.assert_allclose(project_to_vkdr(P), P, atol=1e-13)
    # orthogonal: residual is Frobenius-orthogonal to the KD-real space
    R = F - P
    for E in hermitian_basis(d).elements:
        assert abs(np.vdot(E, R)) < 1e-10


@pytest.mark.parametrize("d", range(1, 13))
def test_project_fixed_space_dimension(d):
    H = hermitian_coordinates_basis(d)
    images = np.stack([project_to_vkdr(E) for E in H])
    M = np.concatenate([images.real, images.imag], axis=1).reshape(len(H), -1)
    assert numerical_rank(M) == gcd_sum(d)


def test_random_kdreal_deterministic():
    np.testing.assert_array_equal(random_kdreal(6, 11), random_kdreal(6, 11))
    assert not np.array_equal(random_kdreal(6, 11), random_kdreal(6, 12))


def test_random_kdreal_is_kd_real():
    ctx = make_dft(6)
    for seed in range(100):
        F = random_kdreal(6, seed)
        assert is_kd_real_lemma1(F)[0]
        assert np.abs(kd_distribution(F, ctx).Q.imag).max() <= 1e-10
