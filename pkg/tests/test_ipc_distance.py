#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import math

import numpy as np
import pytest

from pdcontact.common.errors import DegeneratePrimitiveError
from pdcontact.ipc import (
    EdgeEdgeRegion,
    PointTriangleRegion,
    edge_edge_derivatives,
    edge_edge_distance,
    point_triangle_derivatives,
    point_triangle_distance,
)

TRIANGLE = np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0]])


@pytest.mark.parametrize(
    ("point", "distance", "region"),
    [
        ([0.2, 0.2, 1.0], 1.0, PointTriangleRegion.FACE),
        ([0.5, -1.0, 0.5], math.sqrt(1.25), PointTriangleRegion.EDGE01),
        ([1.0, 1.0, 0.0], math.sqrt(0.5), PointTriangleRegion.EDGE12),
        ([-1.0, 0.5, 0.0], 1.0, PointTriangleRegion.EDGE20),
        ([-1.0, -1.0, 0.0], math.sqrt(2.0), PointTriangleRegion.VERTEX0),
        ([2.0, -0.5, 0.0], math.sqrt(1.25), PointTriangleRegion.VERTEX1),
        ([-0.5, 2.0, 0.0], math.sqrt(1.25), PointTriangleRegion.VERTEX2),
    ],
)
def test_point_triangle_regions(point, distance, region):
    d, found = point_triangle_distance(np.array(point), *TRIANGLE)
    assert d == pytest.approx(distance)
    assert found is region


def test_edge_edge_crossing():
    d, region = edge_edge_distance([0, 0, 0], [1, 0, 0], [0.5, -1, 1], [0.5, 1, 1])
    assert d == pytest.approx(1.0)
    assert region is EdgeEdgeRegion.INTERIOR_INTERIOR


def test_edge_edge_parallel():
    d, region = edge_edge_distance([0, 0, 0], [1, 0, 0], [2, 1, 0], [3, 1, 0])
    assert d == pytest.approx(math.sqrt(2.0))
    assert region is EdgeEdgeRegion.P2_Q1


def test_edge_edge_endpoint_to_interior():
    d, region = edge_edge_distance([0, 0, 0], [1, 0, 0], [2, -1, 0.5], [2, 1, 0.5])
    assert d == pytest.approx(math.sqrt(1.25))
    assert region is EdgeEdgeRegion.P2_INTERIOR


def test_degenerate_primitives():
    with pytest.raises(DegeneratePrimitiveError):
        point_triangle_distance([0, 0, 1], [0, 0, 0], [1, 0, 0], [2, 0, 0])
    with pytest.raises(DegeneratePrimitiveError):
        edge_edge_distance([0, 0, 0], [0, 0, 0], [1, 0, 0], [1, 1, 0])


def _check_derivatives(derivatives, distance_fn, points: np.ndarray) -> None:
    eps = 1e-6
    d, grad, hess = derivatives(points)
    flat = points.reshape(-1)
    assert d == pytest.approx(distance_fn(points))
    fd_grad = np.empty(12)
    fd_hess = np.empty((12, 12))
    for k in range(12):
        step = np.zeros(12)
        step[k] = eps
        plus, minus = (flat + step).reshape(4, 3), (flat - step).reshape(4, 3)
        fd_grad[k] = (distance_fn(plus) - distance_fn(minus)) / (2 * eps)
        fd_hess[:, k] = (derivatives(plus)[1] - derivatives(minus)[1]) / (2 * eps)
    assert np.linalg.norm(fd_grad - grad) / np.linalg.norm(grad) < 1e-6
    assert np.linalg.norm(fd_hess - hess) / max(np.linalg.norm(hess), 1.0) < 1e-5
    np.testing.assert_allclose(hess, hess.T, atol=1e-10)


@pytest.mark.parametrize(
    "point",
    [[0.2, 0.3, 0.7], [0.5, -0.8, 0.4], [0.9, 0.9, -0.3], [-0.6, 0.4, 0.2], [-0.5, -0.7, 0.3], [1.6, -0.2, 0.4]],
)
def test_point_triangle_derivatives(point):
    rng = np.random.default_rng(10)
    triangle = TRIANGLE + rng.normal(scale=0.05, size=(3, 3))
    points = np.vstack((point, triangle))

    def distance(p):
        return point_triangle_distance(*p)[0]

    _check_derivatives(point_triangle_derivatives, distance, points)


@pytest.mark.parametrize(
    "points",
    [
        [[0, 0, 0], [1, 0, 0], [0.4, -1, 0.6], [0.6, 1, 0.7]],
        [[0, 0, 0], [1, 0, 0], [1.5, -1, 0.5], [1.6, 1, 0.4]],
        [[0, 0, 0], [1, 0, 0], [1.5, 0.5, 0.5], [2.5, 1.0, 0.4]],
        [[0, 0, 0], [1, 0.1, 0], [0.3, 0.4, 0.5], [0.8, 0.6, 0.45]],
    ],
)
def test_edge_edge_derivatives(points):
    def distance(p):
        return edge_edge_distance(*p)[0]

    _check_derivatives(edge_edge_derivatives, distance, np.array(points, dtype=float))


def _sampled_minimum(distance_at, n_cases: int, simplex: bool = False, n: int = 33, levels: int = 12) -> np.ndarray:
    """
    Minimum of distance_at(u, v) over [0, 1]^2 (or the unit simplex) by nested grid sampling.
    """
    grid = np.linspace(0.0, 1.0, n)
    low = np.zeros((n_cases, 2))
    width = np.ones(n_cases)
    best = np.full(n_cases, np.inf)
    for _ in range(levels):
        u = low[:, 0, None, None] + width[:, None, None] * grid[None, :, None]
        v = low[:, 1, None, None] + width[:, None, None] * grid[None, None, :]
        u, v = np.broadcast_arrays(u, v)
        distances = distance_at(u, v)
        if simplex:
            distances = np.where(u + v <= 1.0, distances, np.inf)
        flat = distances.reshape(n_cases, -1)
        arg = flat.argmin(axis=1)
        best = np.minimum(best, flat[np.arange(n_cases), arg])
        rows = np.arange(n_cases)
        centre = np.stack((u.reshape(n_cases, -1)[rows, arg], v.reshape(n_cases, -1)[rows, arg]), axis=1)
        width = width / 4
        low = np.clip(centre - width[:, None] / 2, 0.0, 1.0 - width[:, None])
    return best


def test_point_triangle_distance_matches_sampling():
    rng = np.random.default_rng(2024)
    points = rng.uniform(-1.0, 1.0, size=(1000, 4, 3))
    p, a, b, c = (points[:, k, None, None, :] for k in range(4))

    def distance_at(u, v):
        return np.linalg.norm(p - (a + u[..., None] * (b - a) + v[..., None] * (c - a)), axis=-1)

    sampled = _sampled_minimum(distance_at, len(points), simplex=True)
    exact = np.array([point_triangle_distance(*config)[0] for config in points])
    assert np.all(exact <= sampled + 1e-12)
    np.testing.assert_allclose(exact, sampled, atol=1e-3)


def test_edge_edge_distance_matches_sampling():
    rng = np.random.default_rng(2025)
    points = rng.uniform(-1.0, 1.0, size=(1000, 4, 3))
    p1, p2, q1, q2 = (points[:, k, None, None, :] for k in range(4))

    def distance_at(s, t):
        return np.linalg.norm(p1 + s[..., None] * (p2 - p1) - q1 - t[..., None] * (q2 - q1), axis=-1)

    sampled = _sampled_minimum(distance_at, len(points))
    exact = np.array([edge_edge_distance(*config)[0] for config in points])
    assert np.all(exact <= sampled + 1e-12)
    np.testing.assert_allclose(exact, sampled, atol=1e-3)
