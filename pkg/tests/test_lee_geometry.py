import itertools
import random

import pytest

from leetile import LeeSphereSpec, lee_distance, sphere_points, sphere_size


def box_filter_points(n, r):
    """Independent oracle: filter the full coordinate box [-r, r]^n.
    Exponential in n, so only usable for small cases."""
    return [
        p
        for p in itertools.product(range(-r, r + 1), repeat=n)
        if sum(abs(c) for c in p) <= r
    ]


def test_distance_identity():
    assert lee_distance((3, -1, 7), (3, -1, 7)) == 0


def test_distance_examples():
    assert lee_distance((0, 0), (1, -2)) == 3
    assert lee_distance((1, 2, 3), (3, 2, 1)) == 4


def test_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        lee_distance((0, 0), (1, 2, 3))


def test_distance_metric_properties():
    rng = random.Random(20240811)
    for _ in range(100):
        n = rng.randint(1, 5)
        x, y, z = (tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(3))
        assert lee_distance(x, y) == lee_distance(y, x) >= 0
        assert lee_distance(x, z) <= lee_distance(x, y) + lee_distance(y, z)


def test_points_interval():
    assert sphere_points(1, 2) == [(-2,), (-1,), (0,), (1,), (2,)]


def test_points_small_counts():
    assert len(sphere_points(2, 2)) == 13
    assert len(sphere_points(3, 2)) == 25


def test_points_match_box_oracle():
    for n in range(1, 5):
        for r in range(0, 4):
            assert sphere_points(n, r) == sorted(box_filter_points(n, r))


def test_points_lexicographic_and_negation_symmetric():
    for n, r in ((2, 3), (3, 2), (4, 1)):
        pts = sphere_points(n, r)
        assert pts == sorted(pts)
        assert len(set(pts)) == len(pts)
        members = set(pts)
        assert all(tuple(-c for c in p) in members for p in pts)


def test_size_matches_enumeration():
    for n in range(1, 6):
        for r in range(0, 6):
            assert sphere_size(n, r) == len(sphere_points(n, r))


def test_size_radius_one():
    for n in range(1, 40):
        assert sphere_size(n, 1) == 2 * n + 1


def test_size_radius_two_quadratic():
    for n in range(1, 1001):
        assert sphere_size(n, 2) == 2 * n * n + 2 * n + 1


def test_size_examples():
    assert sphere_size(2, 2) == 13
    assert sphere_size(12, 2) == 313


def test_spec_validation():
    with pytest.raises(ValueError):
        LeeSphereSpec(0, 2)
    with pytest.raises(ValueError):
        sphere_points(2, -1)
