"""Tests of the exit-sampling machinery and the KS comparison."""

import numpy as np
import pytest

from mudk.boundary import BoundaryPolyline, boundary_points
from mudk.discretize import build_measure
from mudk.distributions import Discrete, Mixture, Uniform
from mudk.verify_mc import (ExitSampleSet, TopologyError, ks_distance,
                            point_in_domain, simulate_exit)


def box_polyline(half_width, depth):
    """Rectangle [-w, w] x (-d, d) as a four-point boundary polyline."""
    pts = np.array([
        [-0.75, half_width, depth],
        [-0.25, -half_width, depth],
        [0.25, -half_width, -depth],
        [0.75, half_width, -depth],
    ])
    return BoundaryPolyline(points=pts)


@pytest.fixture(scope="module")
def uniform_bp():
    return boundary_points(build_measure(Uniform(-1.0, 1.0), 30), 512)


# ---------------------------------------------------------------- membership

def test_origin_inside(uniform_bp):
    assert point_in_domain(uniform_bp, (0.0, 0.0))


def test_far_right_outside(uniform_bp):
    assert not point_in_domain(uniform_bp, (uniform_bp.x.max() + 1.0, 0.0))


def test_gap_contains_full_vertical_strip():
    two_piece = Mixture([(0.5, Uniform(-1.0, -0.5)), (0.5, Uniform(0.5, 1.0))])
    bp = boundary_points(build_measure(two_piece, 30), 256)
    tall = 10.0 * np.abs(bp.y).max()
    assert point_in_domain(bp, (0.0, tall))
    assert point_in_domain(bp, (0.0, -tall))


def test_wall_membership_depends_on_depth(uniform_bp):
    walls = np.unique(uniform_bp.x)
    wall = walls[len(walls) // 2]  # an interior step value
    on_wall = uniform_bp.x == wall
    deep = np.abs(uniform_bp.y[on_wall]).max()
    assert point_in_domain(uniform_bp, (wall, 0.5 * deep))
    assert point_in_domain(uniform_bp, (wall, -0.999 * deep))
    assert not point_in_domain(uniform_bp, (wall, 2.0 * np.abs(uniform_bp.y).max()))


def test_extreme_wall_caps(uniform_bp):
    right = uniform_bp.x.max()
    assert point_in_domain(uniform_bp, (right, 0.0))
    assert not point_in_domain(uniform_bp, (right, 2.0 * np.abs(uniform_bp.y).max()))


def test_topology_rejects_non_monotone_chain():
    pts = np.array([
        [-0.75, 1.0, 0.5],
        [-0.25, 2.0, 0.5],
        [0.25, 2.0, -0.5],
        [0.75, 1.0, -0.5],
    ])
    bad = BoundaryPolyline(points=pts)
    with pytest.raises(TopologyError, match="monotone"):
        point_in_domain(bad, (1.5, 0.0))


def test_topology_rejects_chain_above_axis():
    pts = np.array([
        [-0.75, 1.0, 0.5],
        [-0.25, 1.0, -0.5],
        [0.25, 1.0, 0.5],
        [0.75, 1.0, -0.5],
    ])
    bad = BoundaryPolyline(points=pts)
    with pytest.raises(TopologyError, match="axis"):
        point_in_domain(bad, (1.0, 0.0))


# ---------------------------------------------------------------- simulation

def test_huge_box_truncates_every_walk():
    res = simulate_exit(box_polyline(50.0, 50.0), walks=16, step=1e-4,
                        seed=1, max_steps=1000)
    assert res.truncated_walks == 16
    assert res.samples.size == 0
    assert res.truncation_warning


def test_small_box_exits_on_boundary():
    res = simulate_exit(box_polyline(1.0, 1.0), walks=200, step=1e-3, seed=3)
    assert res.truncated_walks == 0
    assert res.samples.size == 200
    # every exit sits within an Euler overshoot of the rectangle
    slack = 10.0 * np.sqrt(1e-3)
    assert np.all(np.abs(res.samples) <= 1.0 + slack)


def test_same_seed_reproduces_exactly(uniform_bp):
    a = simulate_exit(uniform_bp, walks=64, step=1e-3, seed=7)
    b = simulate_exit(uniform_bp, walks=64, step=1e-3, seed=7)
    assert np.array_equal(a.samples, b.samples)
    assert np.array_equal(a.walk_ids, b.walk_ids)
    c = simulate_exit(uniform_bp, walks=64, step=1e-3, seed=8)
    assert not np.array_equal(a.samples, c.samples)


def test_worker_count_does_not_change_samples(uniform_bp):
    runs = [simulate_exit(uniform_bp, walks=96, step=1e-3, seed=5, workers=w)
            for w in (1, 2, 8)]
    for other in runs[1:]:
        assert np.array_equal(runs[0].samples, other.samples)
        assert runs[0].truncated_walks == other.truncated_walks


def test_thread_env_cap_respected(uniform_bp, monkeypatch):
    monkeypatch.setenv("MUDK_THREADS", "1")
    res = simulate_exit(uniform_bp, walks=32, step=1e-3, seed=5, workers=8)
    monkeypatch.delenv("MUDK_THREADS")
    free = simulate_exit(uniform_bp, walks=32, step=1e-3, seed=5, workers=8)
    assert np.array_equal(res.samples, free.samples)


def test_origin_outside_raises():
    pts = np.array([
        [-0.75, 3.0, 1.0],
        [-0.25, 1.0, 1.0],
        [0.25, 1.0, -1.0],
        [0.75, 3.0, -1.0],
    ])
    shifted = BoundaryPolyline(points=pts)
    with pytest.raises(ValueError, match="origin"):
        simulate_exit(shifted, walks=4, step=1e-3, seed=0)


def test_simulation_argument_validation(uniform_bp):
    with pytest.raises(ValueError):
        simulate_exit(uniform_bp, walks=0, step=1e-3, seed=0)
    with pytest.raises(ValueError):
        simulate_exit(uniform_bp, walks=4, step=0.0, seed=0)
    with pytest.raises(ValueError):
        simulate_exit(uniform_bp, walks=4, step=float("nan"), seed=0)
    with pytest.raises(ValueError):
        simulate_exit(uniform_bp, walks=4, step=1e-3, seed=0, max_steps=0)


def test_truncation_warning_threshold():
    kw = dict(samples=np.array([0.1]), walk_ids=np.array([0]),
              seed=0, step=1e-3, walks=100)
    assert not ExitSampleSet(truncated_walks=1, **kw).truncation_warning
    assert ExitSampleSet(truncated_walks=2, **kw).truncation_warning


def test_exit_mean_agrees_with_start(uniform_bp):
    """The mean abscissa of exits should reproduce the starting abscissa."""
    res = simulate_exit(uniform_bp, walks=600, step=1e-3, seed=11)
    mean = res.samples.mean()
    std = res.samples.std()
    assert abs(mean) <= 3.0 * std / np.sqrt(res.samples.size)


def test_step_refinement_is_consistent(uniform_bp):
    dist = Uniform(-1.0, 1.0)
    coarse = simulate_exit(uniform_bp, walks=1500, step=1e-3, seed=13)
    fine = simulate_exit(uniform_bp, walks=1500, step=1e-4, seed=13)
    ks_coarse = ks_distance(coarse.samples, dist)
    ks_fine = ks_distance(fine.samples, dist)
    assert abs(ks_coarse - ks_fine) < 0.01


# ------------------------------------------------------------------ KS stat

def test_ks_of_stratified_sample_is_half_cell():
    m = 10
    samples = (np.arange(m) + 0.5) / m
    assert ks_distance(samples, Uniform(0.0, 1.0)) == pytest.approx(0.05)


def test_ks_of_single_point():
    d = ks_distance([0.3], Uniform(0.0, 1.0))
    assert d == pytest.approx(0.7)


def test_ks_of_matched_atoms():
    dist = Discrete([(0.0, 0.25), (1.0, 0.25), (2.0, 0.25), (3.0, 0.25)])
    d = ks_distance([0.0, 1.0, 2.0, 3.0], dist)
    assert d == pytest.approx(0.25)


def test_ks_requires_samples():
    with pytest.raises(ValueError):
        ks_distance([], Uniform(0.0, 1.0))


def test_ks_detects_gross_mismatch():
    rng = np.random.default_rng(0)
    samples = rng.uniform(0.0, 0.5, size=400)
    assert ks_distance(samples, Uniform(0.0, 1.0)) > 0.4
