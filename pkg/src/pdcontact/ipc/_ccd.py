#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np

from ..common import config
from ..common.errors import IntersectionError
from ..mesh import EmbeddedSurface
from ._broad_phase import SpatialHash, cell_size_for, swept_boxes
from ._distance import edge_edge_distance, point_triangle_distance


def _advance(distance_at, start_distance: float, rate: float) -> float:
    """
    Conservative advancement of one pair along t in [0, 1]. `rate` bounds how fast
    the pair distance can shrink per unit t.
    """
    t, d = 0.0, start_distance
    for _ in range(config.CCD_MAX_ADVANCEMENTS):
        if d <= config.CCD_MIN_SEPARATION * start_distance:
            break
        dt = config.CCD_SLACK * d / rate
        if t + dt >= 1.0:
            return 1.0
        t += dt
        d = distance_at(t)
    return t


def ccd_max_step(surface: EmbeddedSurface, x: np.ndarray, delta_x: np.ndarray) -> float:
    """
    Largest step alpha in (0, 1] such that no surface pair reaches zero distance on x + alpha * delta_x.
    """
    s = surface.positions(x)
    ds = surface.positions(delta_x)
    if not np.any(ds):
        return 1.0
    end = s + ds
    alpha = 1.0
    speeds = np.linalg.norm(ds, axis=1)

    vertices = np.arange(surface.n_vertices)[:, None]
    spatial_hash = SpatialHash(max(cell_size_for(s, surface.triangles, 1e-12), float(speeds.mean())))
    pairs = spatial_hash.pairs(swept_boxes(s, end, vertices), swept_boxes(s, end, surface.triangles))
    for vertex, triangle in pairs:
        corners = surface.triangles[triangle]
        if vertex in corners:
            continue
        rate = speeds[vertex] + speeds[corners].max()
        if rate == 0:
            continue
        start, _ = point_triangle_distance(s[vertex], *s[corners])
        if start <= 0:
            raise IntersectionError(start)

        def distance_at(t: float, vertex=vertex, corners=corners) -> float:
            return point_triangle_distance(s[vertex] + t * ds[vertex], *(s[corners] + t * ds[corners]))[0]

        alpha = min(alpha, _advance(distance_at, start, rate))

    spatial_hash = SpatialHash(max(cell_size_for(s, surface.edges, 1e-12), float(speeds.mean())))
    for first, second in spatial_hash.pairs(swept_boxes(s, end, surface.edges)):
        a, b = surface.edges[first], surface.edges[second]
        if np.intersect1d(a, b).size:
            continue
        rate = speeds[a].max() + speeds[b].max()
        if rate == 0:
            continue
        start, _ = edge_edge_distance(*s[a], *s[b])
        if start <= 0:
            raise IntersectionError(start)

        def distance_at(t: float, a=a, b=b) -> float:
            return edge_edge_distance(*(s[a] + t * ds[a]), *(s[b] + t * ds[b]))[0]

        alpha = min(alpha, _advance(distance_at, start, rate))
    return alpha
