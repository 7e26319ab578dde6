"""Single source for the reproduction targets: every headline number with its
tolerance, plus the structural property suites.

Used both by the command-line ``reproduce`` command and by the acceptance
test suite, so the two can never drift apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .capacity import (
    analytic_upper_bound,
    control_state_dominance_check,
    oracle_holevo,
    orthogonal_lower_bound,
    reduced_capacity,
)
from .channels import (
    PAIR_SWAP,
    block_ppt_check,
    choi,
    depolarizing_qubit_channel,
    effective_network,
    effective_single,
    interference_operator,
    pauli_correlated,
    pauli_realization,
    quantum_switch,
)
from .experiments import (
    DEFAULT_GRID_STEP,
    DEFAULT_SEED,
    ScanResult,
    dephasing_curve,
    scan_network_correlated,
    scan_network_uncorrelated,
    scan_single_uncorrelated,
    switch_capacity,
)
from .linalg import KET_MINUS, KET_PLUS, I2, kron, projector, random_density, singular_values

_PLUS = projector(KET_PLUS)


@dataclass
class CriterionResult:
    name: str
    target: str
    achieved: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)


def perfect_transmission_channel():
    """The pair-swap correlated line at phases (0, 0, 0, pi/2) with a balanced control."""
    return effective_single(pauli_correlated((0.0, 0.0, 0.0, math.pi / 2), PAIR_SWAP), _PLUS)


def criterion_single_uncorrelated(
    grid_step: float = DEFAULT_GRID_STEP, workers: int | None = None
) -> tuple[CriterionResult, ScanResult]:
    scan = scan_single_uncorrelated(grid_step, workers=workers)
    achieved = float(scan.meta["max_value_bits"])
    return (
        CriterionResult(
            name="single-uncorrelated",
            target="0.16",
            achieved=achieved,
            tolerance=0.01,
            passed=abs(achieved - 0.16) <= 0.01,
            details={"argmax_phases": scan.meta["argmax_phases"]},
        ),
        scan,
    )


def criterion_perfect_transmission() -> CriterionResult:
    ch = perfect_transmission_channel()
    bound = orthogonal_lower_bound(ch).value_bits
    worst_state_dev = 0.0
    for ket, out_control in ((KET_PLUS, projector(KET_PLUS)), (KET_MINUS, projector(KET_MINUS))):
        out = ch.apply(projector(ket))
        worst_state_dev = max(worst_state_dev, float(np.abs(out - kron(I2 / 2, out_control)).max()))
    passed = abs(bound - 1.0) <= 1e-4 and worst_state_dev <= 1e-10
    return CriterionResult(
        name="perfect-transmission",
        target="1.0",
        achieved=bound,
        tolerance=1e-4,
        passed=passed,
        details={"output_state_deviation": worst_state_dev},
    )


def criterion_ceiling(scan: ScanResult) -> CriterionResult:
    bound = analytic_upper_bound(1.0 / math.sqrt(2.0), 2)
    scan_max = float(scan.values.max())
    passed = scan_max <= 0.5 + 1e-9 and abs(bound - 0.5) <= 1e-12
    return CriterionResult(
        name="ceiling",
        target="<= 0.5",
        achieved=scan_max,
        tolerance=1e-9,
        passed=passed,
        details={"analytic_bound_at_extreme": bound},
    )


def criterion_network_random_unitary(
    grid_step: float = DEFAULT_GRID_STEP, workers: int | None = None
) -> CriterionResult:
    scan = scan_network_uncorrelated(grid_step, realization="random_unitary", workers=workers)
    achieved = float(scan.meta["max_value_bits"])
    return CriterionResult(
        name="network-ru",
        target="0.018",
        achieved=achieved,
        tolerance=0.002,
        passed=abs(achieved - 0.018) <= 0.002,
        details={"argmax_phases": scan.meta["argmax_phases"]},
    )


def criterion_network_arbitrary(workers: int | None = None) -> CriterionResult:
    scan = scan_network_uncorrelated(realization="arbitrary", workers=workers)
    achieved = float(scan.meta["max_value_bits"])
    return CriterionResult(
        name="network-arbitrary",
        target="0.024",
        achieved=achieved,
        tolerance=0.002,
        passed=abs(achieved - 0.024) <= 0.002,
        details={"argmax": scan.meta["argmax"]},
    )


def criterion_switch(seed: int = DEFAULT_SEED) -> CriterionResult:
    result = switch_capacity(seed=seed)
    rng = np.random.default_rng(seed)
    worst = 0.0
    dep = depolarizing_qubit_channel()
    reference = choi(quantum_switch(dep, dep, _PLUS))
    for _ in range(10):
        phases = rng.uniform(0.0, 2 * math.pi, 4)
        spec = pauli_correlated(phases, range(4))
        network = effective_network(spec, spec, _PLUS)
        worst = max(worst, float(np.abs(choi(network) - reference).max()))
    passed = abs(result.value_bits - 0.049) <= 0.002 and worst <= 1e-10
    return CriterionResult(
        name="switch",
        target="0.049",
        achieved=result.value_bits,
        tolerance=0.002,
        passed=passed,
        details={"choi_equivalence_worst": worst, "method": result.argmax.get("method")},
    )


def criterion_network_correlated(
    grid_step: float = DEFAULT_GRID_STEP, workers: int | None = None
) -> CriterionResult:
    scan = scan_network_correlated(grid_step, workers=workers)
    achieved = float(scan.meta["max_value_bits"])
    return CriterionResult(
        name="network-correlated",
        target="0.31",
        achieved=achieved,
        tolerance=0.01,
        passed=abs(achieved - 0.31) <= 0.01,
        details={
            "argmax_phases": scan.meta["argmax_phases"],
            "cross_check_worst_choi_diff": scan.meta["cross_check_worst_choi_diff"],
        },
    )


def criterion_dephasing(s_points: int = 11, workers: int | None = None) -> CriterionResult:
    s_values = np.linspace(0.0, 0.5, s_points)
    scan = dephasing_curve(s_values, workers=workers)
    blue = scan.values[:s_points]
    orange = scan.values[s_points:]
    monotone = bool(np.all(np.diff(blue) <= 1e-9) and np.all(np.diff(orange) <= 1e-9))
    endpoints = (
        abs(blue[0] - 0.16) <= 0.01
        and abs(orange[0] - 1.0) <= 1e-3
        and abs(blue[-1]) <= 1e-6
        and abs(orange[-1]) <= 1e-6
    )
    return CriterionResult(
        name="dephasing",
        target="monotone; 0.16/1.0 at s=0; 0 at s=1/2",
        achieved=float(blue[0]),
        tolerance=0.01,
        passed=monotone and endpoints,
        details={
            "blue_at_zero": float(blue[0]),
            "orange_at_zero": float(orange[0]),
            "blue_at_half": float(blue[-1]),
            "orange_at_half": float(orange[-1]),
            "monotone": monotone,
        },
    )


def criterion_oracle_equivalence(
    seed: int = DEFAULT_SEED, n_vectors: int = 20, restarts: int = 64
) -> CriterionResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n_vectors):
        phases = rng.uniform(0.0, 2 * math.pi, 4)
        spec = pauli_realization(phases)
        sv = singular_values(interference_operator(spec))
        reduced = reduced_capacity(sv[0], sv[1]).value_bits
        oracle = oracle_holevo(
            effective_single(spec, _PLUS), n_states=4, restarts=restarts, seed=seed + i
        ).value_bits
        worst = max(worst, abs(reduced - oracle))
    return CriterionResult(
        name="oracle-equivalence",
        target="|reduced - oracle| <= 1e-3",
        achieved=worst,
        tolerance=1e-3,
        passed=worst <= 1e-3,
        details={"vectors": n_vectors, "restarts": restarts},
    )


def criterion_structural(
    seed: int = DEFAULT_SEED, configs: int = 1000, dominance_samples: int = 20
) -> CriterionResult:
    rng = np.random.default_rng(seed)
    worst_tp = 0.0
    worst_norm = 0.0
    worst_gauge = 0.0
    ppt_failures = 0
    permutations = [tuple(range(4)), PAIR_SWAP, (1, 2, 3, 0), (3, 2, 1, 0)]
    for i in range(configs):
        phases = rng.uniform(0.0, 2 * math.pi, 4)
        independent = pauli_realization(phases)
        f = interference_operator(independent)
        worst_norm = max(worst_norm, float(singular_values(f)[0]))
        if not block_ppt_check(f):
            ppt_failures += 1
        if i % 2 == 0:
            spec = independent
        else:
            spec = pauli_correlated(phases, permutations[i % len(permutations)])
        ch = effective_single(spec, _PLUS)
        gram = sum(k.conj().T @ k for k in ch.kraus)
        worst_tp = max(worst_tp, float(np.abs(gram - np.eye(2)).max()))
        shift = rng.uniform(0.0, 2 * math.pi)
        shifted = (
            pauli_realization(phases + shift)
            if spec is independent
            else pauli_correlated(phases + shift, permutations[i % len(permutations)])
        )
        gauge = float(np.abs(choi(ch) - choi(effective_single(shifted, _PLUS))).max())
        worst_gauge = max(worst_gauge, gauge)

    def build(omega):
        return effective_single(pauli_realization((0.1, 0.9, 2.3, 4.2)), omega)

    dominance = control_state_dominance_check(build, samples=dominance_samples, seed=seed)
    passed = (
        worst_tp <= 1e-9
        and worst_norm <= 1.0 / math.sqrt(2.0) + 1e-12
        and ppt_failures == 0
        and worst_gauge <= 1e-12
        and dominance
    )
    return CriterionResult(
        name="structural",
        target="CPTP/norm/PPT/gauge/dominance",
        achieved=worst_gauge,
        tolerance=1e-12,
        passed=passed,
        details={
            "configs": configs,
            "worst_trace_preservation": worst_tp,
            "worst_f_norm": worst_norm,
            "ppt_failures": ppt_failures,
            "worst_gauge_choi_diff": worst_gauge,
            "dominance": dominance,
        },
    )


def criterion_null_test(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = np.random.default_rng(seed)
    spec = pauli_correlated(rng.uniform(0.0, 2 * math.pi, 4), range(4))
    ch = effective_single(spec, _PLUS)
    reference = ch.apply(random_density(rng, 2))
    worst_dev = 0.0
    for _ in range(20):
        out = ch.apply(random_density(rng, 2))
        worst_dev = max(worst_dev, float(np.abs(out - reference).max()))
    value = oracle_holevo(ch, restarts=8, seed=seed).value_bits
    passed = worst_dev <= 1e-10 and abs(value) <= 1e-6
    return CriterionResult(
        name="null-test",
        target="0.0",
        achieved=value,
        tolerance=1e-6,
        passed=passed,
        details={"output_input_dependence": worst_dev},
    )


def run_all(
    grid_step: float = DEFAULT_GRID_STEP,
    seed: int = DEFAULT_SEED,
    only: str | None = None,
    workers: int | None = None,
) -> list[CriterionResult]:
    """Evaluate the acceptance criteria, optionally restricted to one name."""
    results: list[CriterionResult] = []

    def wanted(name: str) -> bool:
        return only is None or only == name

    scan = None
    if wanted("single-uncorrelated") or wanted("ceiling"):
        res, scan = criterion_single_uncorrelated(grid_step, workers=workers)
        if wanted("single-uncorrelated"):
            results.append(res)
    if wanted("perfect-transmission"):
        results.append(criterion_perfect_transmission())
    if wanted("ceiling"):
        results.append(criterion_ceiling(scan))
    if wanted("network-ru"):
        results.append(criterion_network_random_unitary(grid_step, workers=workers))
    if wanted("network-arbitrary"):
        results.append(criterion_network_arbitrary(workers=workers))
    if wanted("switch"):
        results.append(criterion_switch(seed=seed))
    if wanted("network-correlated"):
        results.append(criterion_network_correlated(grid_step, workers=workers))
    if wanted("dephasing"):
        results.append(criterion_dephasing(workers=workers))
    if wanted("oracle-equivalence"):
        results.append(criterion_oracle_equivalence(seed=seed))
    if wanted("structural"):
        results.append(criterion_structural(seed=seed))
    if wanted("null-test"):
        results.append(criterion_null_test(seed=seed))
    return results


CRITERION_NAMES = (
    "single-uncorrelated",
    "perfect-transmission",
    "ceiling",
    "network-ru",
    "network-arbitrary",
    "switch",
    "network-correlated",
    "dephasing",
    "oracle-equivalence",
    "structural",
    "null-test",
)
