"""Property-style invariants: randomized structural checks over the channel
constructions and the capacity machinery."""

import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from latentlink.capacity import oracle_holevo, reduced_capacity
from latentlink.channels import (
    PAIR_SWAP,
    block_ppt_check,
    choi,
    effective_single,
    interference_operator,
    pauli_correlated,
    pauli_realization,
    vacuum_interference_channel,
)
from latentlink.linalg import (
    I2,
    KET_PLUS,
    dagger,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
    projector,
    random_density,
    singular_values,
)

PLUS = projector(KET_PLUS)

complex_entries = st.complex_numbers(
    min_magnitude=0, max_magnitude=3, allow_nan=False, allow_infinity=False
)
phase_vectors = arrays(np.float64, (4,), elements=st.floats(0, 2 * math.pi, allow_nan=False))


@seed(2026)
@settings(max_examples=60, deadline=None)
@given(arrays(np.complex128, (4, 4), elements=complex_entries))
def test_eigenvalue_sum_matches_trace(m):
    h = (m + dagger(m)) / 2
    vals = hermitian_eigenvalues(h)
    assert abs(vals.sum() - np.trace(h).real) < 1e-9


@seed(2027)
@settings(max_examples=60, deadline=None)
@given(arrays(np.complex128, (4, 4), elements=complex_entries))
def test_partial_transpose_involution(m):
    for sub in ("A", "B"):
        assert np.array_equal(partial_transpose(partial_transpose(m, (2, 2), sub), (2, 2), sub), m)


@seed(2028)
@settings(max_examples=60, deadline=None)
@given(
    arrays(np.complex128, (2, 2), elements=complex_entries),
    arrays(np.complex128, (3, 3), elements=complex_entries),
)
def test_kron_trace_multiplicative(a, b):
    assert np.trace(kron(a, b)) == pytest.approx(np.trace(a) * np.trace(b), abs=1e-7, rel=1e-9)


@seed(2029)
@settings(max_examples=40, deadline=None)
@given(phase_vectors)
def test_interference_norm_bound(phases):
    f = interference_operator(pauli_realization(phases))
    assert float(singular_values(f)[0]) <= 1 / math.sqrt(2) + 1e-12
    assert block_ppt_check(f)


@seed(2030)
@settings(max_examples=25, deadline=None)
@given(phase_vectors, st.floats(0, 2 * math.pi, allow_nan=False))
def test_phase_gauge_invariance(phases, shift):
    a = effective_single(pauli_realization(phases), PLUS)
    b = effective_single(pauli_realization(phases + shift), PLUS)
    assert np.abs(choi(a) - choi(b)).max() < 1e-12


@seed(2031)
@settings(max_examples=25, deadline=None)
@given(phase_vectors)
def test_white_noise_at_definite_transmission_time(phases):
    # any locally uniform joint hides all correlations from a definite-time probe
    rng = np.random.default_rng(77)
    sigma = tuple(rng.permutation(4))
    spec = pauli_correlated(phases, sigma)
    ch = effective_single(spec, projector(np.array([1, 0])))
    for _ in range(3):
        out = ch.apply(random_density(rng, 2))
        # message marginal (control traced out) is white noise; control survives
        np.testing.assert_allclose(partial_trace(out, (2, 2), "A"), I2 / 2, atol=1e-10)
        np.testing.assert_allclose(partial_trace(out, (2, 2), "B"), projector(np.array([1, 0])), atol=1e-10)


def test_every_constructed_channel_is_cptp():
    rng = np.random.default_rng(78)
    for i in range(60):
        phases = rng.uniform(0, 2 * math.pi, 4)
        if i % 2 == 0:
            spec = pauli_realization(phases)
        else:
            spec = pauli_correlated(phases, tuple(rng.permutation(4)))
        ch = effective_single(spec, random_density(rng, 2))
        gram = sum(dagger(k) @ k for k in ch.kraus)
        assert np.abs(gram - I2).max() < 1e-9
        assert hermitian_eigenvalues(choi(ch)).min() > -1e-9


def test_reduced_capacity_monotone_in_interference():
    # on the admissible quadratic region, growing either singular value never hurts
    grid = np.linspace(0.0, 1 / math.sqrt(2), 9)
    values = np.empty((9, 9))
    for i, a in enumerate(grid):
        for j, b in enumerate(grid):
            if a * a + b * b <= 0.5 + 1e-12:
                values[i, j] = reduced_capacity(a, b, refine=False).value_bits
            else:
                values[i, j] = np.nan
    for j in range(9):
        col = values[:, j]
        finite = col[~np.isnan(col)]
        assert np.all(np.diff(finite) >= -1e-3)


def test_reduced_capacity_agrees_with_oracle_on_region_diagonal():
    # independent multistart oracle on a seeded slice of the (a, b) region
    rng = np.random.default_rng(79)
    for _ in range(6):
        t = rng.uniform(0, math.pi / 2)
        r = rng.uniform(0.3, 1.0) / math.sqrt(2)
        a, b = r * math.cos(t), r * math.sin(t)
        reduced = reduced_capacity(a, b).value_bits
        ch = vacuum_interference_channel(np.diag([a, b]), PLUS)
        oracle = oracle_holevo(ch, restarts=16, seed=int(rng.integers(1 << 31))).value_bits
        assert oracle == pytest.approx(reduced, abs=1e-3)
