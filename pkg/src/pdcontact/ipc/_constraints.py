#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from dataclasses import dataclass, field

import numpy as np

from ..mesh import EmbeddedSurface
from ._broad_phase import SpatialHash, cell_size_for, primitive_boxes
from ._distance import EdgeEdgeRegion, PointTriangleRegion, edge_edge_distance, point_triangle_distance


@dataclass(frozen=True)
class ConstraintSet:
    """
    Active vertex-triangle and edge-edge pairs of the surface, all closer than d0.
    """

    d0: float
    vt_pairs: np.ndarray = field(default_factory=lambda: np.empty((0, 2), dtype=np.int64))
    vt_distances: np.ndarray = field(default_factory=lambda: np.empty(0))
    vt_regions: tuple[PointTriangleRegion, ...] = ()
    ee_pairs: np.ndarray = field(default_factory=lambda: np.empty((0, 2), dtype=np.int64))
    ee_distances: np.ndarray = field(default_factory=lambda: np.empty(0))
    ee_regions: tuple[EdgeEdgeRegion, ...] = ()

    def __len__(self) -> int:
        return self.vt_pairs.shape[0] + self.ee_pairs.shape[0]

    @property
    def distances(self) -> np.ndarray:
        return np.concatenate((self.vt_distances, self.ee_distances))

    @property
    def min_distance(self) -> float:
        return float(self.distances.min()) if len(self) else np.inf


def vertex_triangle_candidates(surface: EmbeddedSurface, s: np.ndarray, radius: float) -> np.ndarray:
    """
    Non-adjacent (vertex, triangle) pairs whose boxes come within `radius`.
    """
    vertices = np.arange(surface.n_vertices)[:, None]
    spatial_hash = SpatialHash(cell_size_for(s, surface.triangles, radius))
    pairs = spatial_hash.pairs(primitive_boxes(s, vertices, radius), primitive_boxes(s, surface.triangles))
    adjacent = np.any(surface.triangles[pairs[:, 1]] == pairs[:, :1], axis=1)
    return pairs[~adjacent]


def edge_edge_candidates(surface: EmbeddedSurface, s: np.ndarray, radius: float) -> np.ndarray:
    """
    Non-adjacent (edge, edge) pairs, first index smaller, whose boxes come within `radius`.
    """
    spatial_hash = SpatialHash(cell_size_for(s, surface.edges, radius))
    pairs = spatial_hash.pairs(primitive_boxes(s, surface.edges, radius / 2))
    first, second = surface.edges[pairs[:, 0]], surface.edges[pairs[:, 1]]
    adjacent = np.any(first[:, :, None] == second[:, None, :], axis=(1, 2))
    return pairs[~adjacent]


def build_constraint_set(surface: EmbeddedSurface, s: np.ndarray, d0: float) -> ConstraintSet:
    """
    Every non-adjacent surface pair with distance below d0.
    """
    s = np.asarray(s, dtype=np.float64).reshape(-1, 3)
    vt_pairs, vt_distances, vt_regions = [], [], []
    for vertex, triangle in vertex_triangle_candidates(surface, s, d0):
        distance, region = point_triangle_distance(s[vertex], *s[surface.triangles[triangle]])
        if distance < d0:
            vt_pairs.append((vertex, triangle))
            vt_distances.append(distance)
            vt_regions.append(region)
    ee_pairs, ee_distances, ee_regions = [], [], []
    for first, second in edge_edge_candidates(surface, s, d0):
        distance, region = edge_edge_distance(*s[surface.edges[first]], *s[surface.edges[second]])
        if distance < d0:
            ee_pairs.append((first, second))
            ee_distances.append(distance)
            ee_regions.append(region)
    return ConstraintSet(
        d0=d0,
        vt_pairs=np.array(vt_pairs, dtype=np.int64).reshape(-1, 2),
        vt_distances=np.array(vt_distances, dtype=np.float64),
        vt_regions=tuple(vt_regions),
        ee_pairs=np.array(ee_pairs, dtype=np.int64).reshape(-1, 2),
        ee_distances=np.array(ee_distances, dtype=np.float64),
        ee_regions=tuple(ee_regions),
    )


def minimum_distance(surface: EmbeddedSurface, s: np.ndarray, radius: float) -> float:
    """
    Smallest distance among non-adjacent pairs closer than `radius`, inf when there are none.
    """
    return build_constraint_set(surface, s, radius).min_distance
