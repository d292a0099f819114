#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np
import pytest

from pdcontact.common import config
from pdcontact.common.errors import LineSearchStallError, NotDescentError
from pdcontact.ipc import (
    SpatialHash,
    adapt_kappa,
    ccd_max_step,
    count_crossings,
    init_kappa,
    line_search,
    minimum_distance,
    triangles_intersect,
)
from pdcontact.ipc._broad_phase import primitive_boxes
from pdcontact.pd import assemble_H


def _squash(box, k: float) -> np.ndarray:
    """
    Affine displacement z -> z - k z, reproduced exactly by the embedding.
    """
    delta = np.zeros((box.n_vertices, 3))
    delta[:, 2] = -k * box.rest_positions[:, 2]
    return delta.reshape(-1)


def test_spatial_hash_matches_brute_force():
    rng = np.random.default_rng(13)
    lo = rng.uniform(0, 10, size=(200, 3))
    boxes = np.stack((lo, lo + rng.uniform(0.1, 1.5, size=(200, 3))), axis=1)
    found = {tuple(pair) for pair in SpatialHash(1.0).pairs(boxes)}
    expected = {
        (i, j)
        for i in range(200)
        for j in range(i + 1, 200)
        if np.all(boxes[i, 0] <= boxes[j, 1]) and np.all(boxes[j, 0] <= boxes[i, 1])
    }
    assert found == expected


def test_spatial_hash_two_sets():
    points = np.array([[0.0, 0, 0], [5.0, 5, 5]])
    triangles = np.array([[[0.1, 0.1, 0.1], [0.9, 0.2, 0.1]], [[6.0, 6, 6], [7, 7, 7]]])
    pairs = SpatialHash(0.5).pairs(primitive_boxes(points, np.arange(2)[:, None], 0.2), triangles)
    assert pairs.tolist() == [[0, 0]]


def test_ccd_without_motion(box, facing_triangles):
    assert ccd_max_step(facing_triangles, box.rest_state, np.zeros(3 * box.n_vertices)) == 1.0


def test_ccd_separating_motion(box, facing_triangles):
    assert ccd_max_step(facing_triangles, box.rest_state, _squash(box, -0.3)) == 1.0


def test_ccd_stops_before_contact(box, facing_triangles):
    x = box.rest_state
    # the gap of 0.05 closes at alpha = 0.5
    delta = _squash(box, 2.0)
    alpha = ccd_max_step(facing_triangles, x, delta)
    assert 0.2 < alpha < 0.5
    s = facing_triangles.positions(x + alpha * delta)
    assert minimum_distance(facing_triangles, s, 0.1) > 0
    assert count_crossings(facing_triangles, s) == 0


def test_line_search_accepts_first_decrease():
    x = np.array([1.0, 1.0])
    result = line_search(x, -x, 1.0, lambda y: float(y @ y), 2 * x)
    assert result.alpha == 1.0
    assert result.halvings == 0
    assert result.energy == 0.0


def test_line_search_halves():
    x = np.array([1.0, 1.0])
    result = line_search(x, -4 * x, 1.0, lambda y: float(y @ y), 2 * x)
    assert result.alpha == 0.25
    assert result.halvings == 2


def test_line_search_respects_alpha_max():
    x = np.array([1.0, 1.0])
    result = line_search(x, -x, 0.3, lambda y: float(y @ y), 2 * x)
    assert result.alpha == 0.3


def test_line_search_rejects_ascent():
    x = np.array([1.0, 1.0])
    with pytest.raises(NotDescentError):
        line_search(x, x, 1.0, lambda y: float(y @ y), 2 * x)


def test_line_search_stall():
    x = np.array([1.0, 1.0])
    with pytest.raises(LineSearchStallError):
        line_search(x, -x, 1.0, lambda y: 1.0, 2 * x)


def test_init_kappa_scales_with_stiffness(box):
    system = assemble_H(box, mu=2.0)
    expected = 1e-2 * 2.0 * system.unit_diagonal_mean() * 0.1**2
    assert init_kappa(box, 2.0, 0.1, scale=1e-2) == pytest.approx(expected, rel=1e-12)
    assert init_kappa(box, 2.0, 0.1) == pytest.approx(expected * config.KAPPA_SCALE / 1e-2, rel=1e-12)


def test_adapt_kappa():
    d0 = 0.1
    assert adapt_kappa(1.0, [0.5 * d0], d0, 1.0) == 1.0
    assert adapt_kappa(1.0, [1e-3 * d0, 1e-4 * d0], d0, 1.0) == pytest.approx(config.KAPPA_GROWTH**2)
    assert adapt_kappa(1.0, [1e-4 * d0] * 100, d0, 1.0) == pytest.approx(config.KAPPA_CAP)


def test_triangles_intersect():
    first = np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0]])
    piercing = np.array([[0.2, 0.2, -0.5], [0.3, 0.2, 0.5], [0.2, 0.3, 0.5]])
    assert triangles_intersect(first, piercing)
    assert not triangles_intersect(first, piercing + np.array([0.0, 0.0, 1.0]))


def test_count_crossings(box, facing_triangles):
    x = box.rest_state
    assert count_crossings(facing_triangles, facing_triangles.positions(x)) == 0
    s = facing_triangles.positions(x).copy()
    s[3, 2] -= 0.06
    assert count_crossings(facing_triangles, s) == 1


def test_ccd_keeps_random_steps_intersection_free(box, facing_sheets):
    rng = np.random.default_rng(41)
    for _ in range(500):
        x = box.rest_state + rng.normal(scale=2e-3, size=3 * box.n_vertices)
        # close the sheets about z = 1 with up to twice the gap, plus noise
        delta = np.zeros((box.n_vertices, 3))
        delta[:, 2] = -rng.uniform(0.0, 2.0) * (box.rest_positions[:, 2] - 1.0)
        delta = delta.reshape(-1) + rng.normal(scale=0.02, size=3 * box.n_vertices)
        alpha = ccd_max_step(facing_sheets, x, delta)
        assert 0.0 < alpha <= 1.0
        s = facing_sheets.positions(x + alpha * delta)
        assert minimum_distance(facing_sheets, s, 0.1) > 0
        assert count_crossings(facing_sheets, s) == 0
