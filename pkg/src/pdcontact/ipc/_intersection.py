#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np

from ..mesh import EmbeddedSurface
from ._broad_phase import SpatialHash, cell_size_for, primitive_boxes


def segment_hits_triangle(p: np.ndarray, q: np.ndarray, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> bool:
    e1, e2, direction = b - a, c - a, q - p
    h = np.cross(direction, e2)
    det = np.dot(e1, h)
    # coplanar or parallel configurations are not counted as crossings
    if abs(det) <= 1e-14 * np.linalg.norm(e1) * np.linalg.norm(e2) * np.linalg.norm(direction):
        return False
    offset = p - a
    u = np.dot(offset, h) / det
    if u < 0 or u > 1:
        return False
    k = np.cross(offset, e1)
    v = np.dot(direction, k) / det
    if v < 0 or u + v > 1:
        return False
    t = np.dot(e2, k) / det
    return 0 <= t <= 1


def triangles_intersect(first: np.ndarray, second: np.ndarray) -> bool:
    for triangle, other in ((first, second), (second, first)):
        for i in range(3):
            if segment_hits_triangle(triangle[i], triangle[(i + 1) % 3], *other):
                return True
    return False


def crossing_pairs(surface: EmbeddedSurface, s: np.ndarray) -> np.ndarray:
    """
    Pairs of non-adjacent surface triangles that intersect each other.
    """
    s = np.asarray(s, dtype=np.float64).reshape(-1, 3)
    triangles = surface.triangles
    spatial_hash = SpatialHash(cell_size_for(s, triangles, 1e-12))
    candidates = spatial_hash.pairs(primitive_boxes(s, triangles))
    found = [
        (i, j)
        for i, j in candidates
        if not np.intersect1d(triangles[i], triangles[j]).size and triangles_intersect(s[triangles[i]], s[triangles[j]])
    ]
    return np.array(found, dtype=np.int64).reshape(-1, 2)


def count_crossings(surface: EmbeddedSurface, s: np.ndarray) -> int:
    return int(crossing_pairs(surface, s).shape[0])
