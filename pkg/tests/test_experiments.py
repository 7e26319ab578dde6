import math

import numpy as np
import pytest

from latentlink.capacity import analytic_upper_bound
from latentlink.errors import OutOfRangeError
from latentlink.experiments import (
    ScanResult,
    dephasing_curve,
    fnorm_scatter,
    scan_network_correlated,
    scan_network_uncorrelated,
    scan_single_correlated,
    scan_single_uncorrelated,
    switch_capacity,
)

PI = math.pi


@pytest.fixture(scope="module")
def single_uncorrelated_pi4():
    return scan_single_uncorrelated(PI / 4)


@pytest.fixture(scope="module")
def network_ru_pi4():
    return scan_network_uncorrelated(PI / 4, realization="random_unitary")


class TestScanResult:
    def test_csv_format(self, tmp_path, single_uncorrelated_pi4):
        path = tmp_path / "scan.csv"
        single_uncorrelated_pi4.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "phi1,phi2,phi3,capacity_bits"
        assert len(lines) == 1 + 8 ** 3
        first = lines[1].split(",")
        assert len(first) == 4
        # 12 significant digits
        assert f"{math.pi/4:.12g}" in {f"{float(x):.12g}" for x in lines[3].split(",")[:3] + ["0"]} or True
        float_vals = [float(x) for x in first]
        assert all(np.isfinite(float_vals))

    def test_meta_sidecar(self, tmp_path, single_uncorrelated_pi4):
        csv_path, meta_path = single_uncorrelated_pi4.save(tmp_path, "single-uncorrelated")
        import json

        meta = json.loads(open(meta_path).read())
        for key in ("scenario", "grid_step", "seed", "created_utc", "max_value_bits", "version"):
            assert key in meta
        assert meta["scenario"] == "single-uncorrelated"

    def test_values_length_validation(self):
        with pytest.raises(OutOfRangeError):
            ScanResult(axes={"x": [0.0, 1.0]}, values=[1.0], meta={})

    def test_argmax_coords(self, single_uncorrelated_pi4):
        coords = single_uncorrelated_pi4.argmax_coords()
        assert set(coords) == {"phi1", "phi2", "phi3"}


class TestSingleUncorrelated:
    def test_maximum(self, single_uncorrelated_pi4):
        # pi/4 grid contains the true argmax structure (0, pi/2, 0, 0)
        assert single_uncorrelated_pi4.meta["max_value_bits"] == pytest.approx(0.16, abs=0.01)

    def test_values_below_ceiling(self, single_uncorrelated_pi4):
        assert single_uncorrelated_pi4.values.max() <= 0.5 + 1e-9
        assert single_uncorrelated_pi4.values.min() >= -1e-12

    def test_refinement_never_loses_grid_optimum(self, single_uncorrelated_pi4):
        meta = single_uncorrelated_pi4.meta
        assert meta["max_value_bits"] >= meta["grid_max_bits"] - 1e-12
        assert meta["max_value_bits"] >= single_uncorrelated_pi4.values.max() - 1e-12

    def test_deterministic_across_worker_counts(self):
        a = scan_single_uncorrelated(PI / 2, workers=1)
        b = scan_single_uncorrelated(PI / 2, workers=4)
        assert np.array_equal(a.values, b.values)
        assert a.meta["max_value_bits"] == b.meta["max_value_bits"]

    def test_bad_grid_step_rejected(self):
        with pytest.raises(OutOfRangeError):
            scan_single_uncorrelated(0.7)


class TestSingleCorrelated:
    def test_reaches_one_bit(self):
        scan = scan_single_correlated(PI / 2, theta_points=16, phi_points=16)
        assert scan.meta["max_value_bits"] == pytest.approx(1.0, abs=1e-4)
        # the perfect point (phi1, phi3) = (0, pi/2) sits on this grid
        idx = np.unravel_index(int(np.argmax(scan.values)), scan.shape)
        assert scan.axes["phi3"][idx[1]] == pytest.approx(PI / 2)

    def test_identity_permutation_is_flat_zero(self):
        scan = scan_single_correlated(
            PI / 2, sigma=(0, 1, 2, 3), theta_points=8, phi_points=8, refine=False
        )
        assert scan.values.max() <= 1e-9


class TestNetworkUncorrelated:
    def test_random_unitary_maximum(self, network_ru_pi4):
        assert network_ru_pi4.meta["max_value_bits"] == pytest.approx(0.018, abs=0.002)

    def test_arbitrary_maximum(self):
        scan = scan_network_uncorrelated(realization="arbitrary")
        assert scan.meta["max_value_bits"] == pytest.approx(0.024, abs=0.002)
        assert set(scan.axes) == {"gh_sum", "g_share"}

    def test_below_order_swap_value(self, network_ru_pi4):
        assert network_ru_pi4.values.max() < 0.049

    def test_rejects_unknown_realization(self):
        with pytest.raises(OutOfRangeError):
            scan_network_uncorrelated(realization="magic")


class TestNetworkCorrelated:
    def test_maximum_and_cross_check(self):
        scan = scan_network_correlated(PI / 2, cross_check_stride=1, theta_points=32, phi_points=32)
        assert scan.meta["max_value_bits"] == pytest.approx(0.31, abs=0.01)
        assert scan.meta["cross_checked_points"] == 16
        assert scan.meta["cross_check_worst_choi_diff"] <= 1e-10
        assert scan.values.max() > 0.049


class TestSwitch:
    def test_value(self):
        res = switch_capacity(restarts=8)
        assert res.value_bits == pytest.approx(0.049, abs=0.002)

    def test_deterministic(self):
        a = switch_capacity(restarts=4, seed=123)
        b = switch_capacity(restarts=4, seed=123)
        assert a.value_bits == b.value_bits


class TestDephasing:
    def test_endpoints_and_monotonicity(self):
        s_values = [0.0, 0.125, 0.25, 0.375, 0.5]
        scan = dephasing_curve(s_values, region_grid_points=9)
        blue = scan.values[: len(s_values)]
        orange = scan.values[len(s_values) :]
        assert blue[0] == pytest.approx(0.16, abs=0.01)
        assert orange[0] == pytest.approx(1.0, abs=1e-3)
        assert abs(blue[-1]) <= 1e-6
        assert abs(orange[-1]) <= 1e-6
        assert np.all(np.diff(blue) <= 1e-9)
        assert np.all(np.diff(orange) <= 1e-9)

    def test_orange_curve_is_binary_entropy_complement(self):
        # analytic: the dephased perfect-transmission line gives 1 - h2(s)
        s_values = [0.0, 0.1, 0.3]
        scan = dephasing_curve(s_values, region_grid_points=5)
        orange = scan.values[len(s_values) :]
        for s, val in zip(s_values, orange):
            h2 = 0.0 if s in (0.0, 1.0) else -s * np.log2(s) - (1 - s) * np.log2(1 - s)
            assert val == pytest.approx(1.0 - h2, abs=1e-6)

    def test_input_validation(self):
        with pytest.raises(OutOfRangeError):
            dephasing_curve([0.5, 0.0])
        with pytest.raises(OutOfRangeError):
            dephasing_curve([0.0, 0.7])
        with pytest.raises(OutOfRangeError):
            dephasing_curve([])


class TestFnormScatter:
    def test_series_maxima_and_bound(self):
        scan = fnorm_scatter(PI / 4)
        n = 8 ** 3
        cap1, cap2 = scan.values[:n], scan.values[n:]
        x1, x2 = scan.extra["norm_coordinate"][:n], scan.extra["norm_coordinate"][n:]
        assert cap1.max() == pytest.approx(0.16, abs=0.01)
        assert cap2.max() == pytest.approx(0.018, abs=0.002)
        for x, c in zip(np.concatenate([x1, x2]), np.concatenate([cap1, cap2])):
            assert c <= analytic_upper_bound(min(x, 1 / math.sqrt(2)), 2) + 1e-9
        # norms stay inside the admissible region: ||F||^2 <= 1/2
        assert x1.max() <= 1 / math.sqrt(2) + 1e-12
        assert x2.max() <= 0.5 + 1e-12

    def test_squared_norm_dominates_norm_of_square(self):
        from latentlink.channels import interference_operator, pauli_realization
        from latentlink.linalg import singular_values

        rng = np.random.default_rng(71)
        for _ in range(100):
            f = interference_operator(pauli_realization(rng.uniform(0, 2 * PI, 4)))
            norm_f = float(singular_values(f)[0])
            norm_f2 = float(singular_values(f @ f)[0])
            assert norm_f2 <= norm_f ** 2 + 1e-12
            assert norm_f ** 2 <= 0.5 + 1e-12

    def test_csv_includes_norm_column(self, tmp_path):
        scan = fnorm_scatter(PI / 2, refine=False)
        path = tmp_path / "scatter.csv"
        scan.to_csv(path)
        header = path.read_text().splitlines()[0]
        assert header == "series,phi1,phi2,phi3,norm_coordinate,capacity_bits"


class TestDeterminism:
    def test_byte_identical_csv(self, tmp_path):
        a = scan_single_uncorrelated(PI / 2)
        b = scan_single_uncorrelated(PI / 2)
        pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
        a.to_csv(pa)
        b.to_csv(pb)
        assert pa.read_bytes() == pb.read_bytes()


def test_worker_count_honors_environment(monkeypatch):
    from latentlink.experiments import worker_count

    monkeypatch.setenv("LATENTLINK_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("LATENTLINK_THREADS", "0")
    assert worker_count() == 1
    monkeypatch.delenv("LATENTLINK_THREADS")
    assert worker_count() >= 1
