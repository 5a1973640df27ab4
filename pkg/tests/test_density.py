"""Directed Hausdorff distances, the periodic union, and density reports."""

from __future__ import annotations

import numpy as np
import pytest

from signspectra.cloud import SpectrumCloud
from signspectra.density import (
    DensityReport,
    density_report,
    directed_hausdorff,
    disk_grid,
    periodic_union,
)
from signspectra.errors import CapExceededError
from signspectra.finite import enumerate_sigma


def _cloud(values):
    return SpectrumCloud.from_values(np.asarray(values, dtype=complex), "t")


def test_hausdorff_small_exact_cases():
    assert directed_hausdorff(_cloud([0]), _cloud([3, 4j])) == 3.0
    x = _cloud([0.25 + 1j, -2, 0.5j])
    assert directed_hausdorff(x, x) == 0.0
    assert directed_hausdorff(_cloud([1 + 1j]), _cloud([1 - 1j])) == 2.0
    with pytest.raises(ValueError):
        directed_hausdorff(_cloud([]), x)
    with pytest.raises(ValueError):
        directed_hausdorff(x, _cloud([]))


def test_hausdorff_is_directed():
    sigma1 = enumerate_sigma(1)
    two = _cloud([2])
    assert directed_hausdorff(two, sigma1) == 1.0
    assert directed_hausdorff(sigma1, two) == 3.0


def test_hausdorff_matches_brute_force_bitwise():
    # the bucket scan must pick the same nearest neighbors as a full scan,
    # so the results are equal as floats, not merely close
    for seed in range(20):
        rng = np.random.default_rng(seed)
        xs = rng.uniform(-2, 2, 40) + 1j * rng.uniform(-2, 2, 40)
        ys = rng.uniform(-2, 2, 200) + 1j * rng.uniform(-2, 2, 200)
        brute = np.abs(xs[:, None] - ys[None, :]).min(axis=1).max()
        assert directed_hausdorff(_cloud(xs), _cloud(ys)) == brute


def test_periodic_union_dedups_equivalent_patterns():
    # m <= 2 collapses to four distinct even-parity trace polynomials
    # (degrees 1, 2, 2, 4), so 9 samples give 9 + 18 + 18 + 36 points
    assert len(periodic_union(2, 9)) == 81


def test_periodic_union_period_cap():
    with pytest.raises(CapExceededError):
        periodic_union(11, 5)


def test_disk_grid_contract():
    g = disk_grid(0.25)
    v = g.values()
    assert np.array_equal(v, disk_grid(0.25).values())
    assert np.abs(v).max() <= 1 + 1e-12
    assert (v == 0).any()
    assert np.isclose(np.abs(v), 1.0, atol=1e-12).any()
    assert all(p.tag == "disk" for p in g)
    with pytest.raises(ValueError):
        disk_grid(0.0)


def test_density_report_small_run():
    rep = density_report(4, 1, 33, 0.3)
    assert sorted(rep.pi_distances) == [2, 3, 4]
    assert sorted(rep.disk_distances) == [2, 3, 4]
    assert rep.sigma_sizes == {2: 16, 3: 48, 4: 128}
    assert rep.pi_size == 99
    assert rep.monotone()
    assert rep.wall_time_s > 0


def test_density_report_input_checks():
    with pytest.raises(ValueError):
        density_report(1, 1, 33, 0.3)
    with pytest.raises(CapExceededError):
        density_report(17, 1, 33, 0.3)


def test_density_report_json_shape():
    rep = density_report(3, 1, 17, 0.5)
    d = rep.to_json_dict()
    assert set(d) == {
        "disk_distances",
        "params",
        "pi_distances",
        "pi_size",
        "sigma_sizes",
    }
    assert set(d["pi_distances"]) == {"2", "3"}
    assert d["params"] == {
        "disk_step": 0.5,
        "max_m": 1,
        "max_n": 3,
        "samples": 17,
    }
    # wall time must not leak into regression data
    assert "wall_time_s" not in d


def _report_with(pi, disk):
    return DensityReport(
        max_n=max(pi),
        max_m=1,
        samples=3,
        disk_step=0.5,
        pi_size=1,
        sigma_sizes={n: 1 for n in pi},
        pi_distances=pi,
        disk_distances=disk,
        wall_time_s=0.0,
    )


def test_monotone_slack_semantics():
    flat = {2: 1.0, 3: 1.0 + 5e-13}
    assert _report_with(flat, {2: 0.5, 3: 0.4}).monotone()
    rising = {2: 1.0, 3: 1.01}
    assert not _report_with(rising, {2: 0.5, 3: 0.4}).monotone()
    assert not _report_with({2: 0.5, 3: 0.4}, rising).monotone()
    assert _report_with(rising, {2: 0.5, 3: 0.4}).monotone(slack=0.1)
