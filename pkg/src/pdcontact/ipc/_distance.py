#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from enum import Enum

import numpy as np

from ..common.errors import DegeneratePrimitiveError

# sin^2 of the angle below which two edges count as parallel
PARALLEL_TOLERANCE = 1e-10
DEGENERACY_TOLERANCE = 1e-12


class PointTriangleRegion(Enum):
    FACE = "face"
    EDGE01 = "edge01"
    EDGE12 = "edge12"
    EDGE20 = "edge20"
    VERTEX0 = "vertex0"
    VERTEX1 = "vertex1"
    VERTEX2 = "vertex2"


class EdgeEdgeRegion(Enum):
    INTERIOR_INTERIOR = "interior-interior"
    INTERIOR_Q1 = "interior-q1"
    INTERIOR_Q2 = "interior-q2"
    P1_INTERIOR = "p1-interior"
    P2_INTERIOR = "p2-interior"
    P1_Q1 = "p1-q1"
    P1_Q2 = "p1-q2"
    P2_Q1 = "p2-q1"
    P2_Q2 = "p2-q2"


_EDGE_VERTICES = {
    PointTriangleRegion.EDGE01: (PointTriangleRegion.VERTEX0, PointTriangleRegion.VERTEX1),
    PointTriangleRegion.EDGE12: (PointTriangleRegion.VERTEX1, PointTriangleRegion.VERTEX2),
    PointTriangleRegion.EDGE20: (PointTriangleRegion.VERTEX2, PointTriangleRegion.VERTEX0),
}


def _clamped_projection(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    e = b - a
    return float(np.clip(np.dot(p - a, e) / np.dot(e, e), 0.0, 1.0))


def _closest_point_triangle(p, a, b, c) -> tuple[float, PointTriangleRegion, tuple[float, float]]:
    e0, e1 = b - a, c - a
    normal = np.cross(e0, e1)
    if np.linalg.norm(normal) <= DEGENERACY_TOLERANCE * np.linalg.norm(e0) * np.linalg.norm(e1) or not np.all(
        np.isfinite(normal)
    ):
        raise DegeneratePrimitiveError("degenerate triangle")
    v = p - a
    d00, d01, d11 = np.dot(e0, e0), np.dot(e0, e1), np.dot(e1, e1)
    d20, d21 = np.dot(v, e0), np.dot(v, e1)
    denom = d00 * d11 - d01 * d01
    u = (d11 * d20 - d01 * d21) / denom
    w = (d00 * d21 - d01 * d20) / denom
    if u >= 0 and w >= 0 and u + w <= 1:
        closest = a + u * e0 + w * e1
        return float(np.linalg.norm(p - closest)), PointTriangleRegion.FACE, (u, w)

    best = None
    for region, (start, end) in (
        (PointTriangleRegion.EDGE01, (a, b)),
        (PointTriangleRegion.EDGE12, (b, c)),
        (PointTriangleRegion.EDGE20, (c, a)),
    ):
        t = _clamped_projection(p, start, end)
        distance = float(np.linalg.norm(p - (start + t * (end - start))))
        if best is None or distance < best[0]:
            if t == 0.0:
                region = _EDGE_VERTICES[region][0]
            elif t == 1.0:
                region = _EDGE_VERTICES[region][1]
            best = (distance, region, (t, 0.0))
    return best


def point_triangle_distance(p, a, b, c) -> tuple[float, PointTriangleRegion]:
    """
    Unsigned distance from p to the closed triangle abc and the Voronoi region of the closest point.
    """
    distance, region, _ = _closest_point_triangle(*(np.asarray(v, dtype=np.float64) for v in (p, a, b, c)))
    return distance, region


def _edge_edge_parameters(p1, p2, q1, q2) -> tuple[float, float]:
    d1, d2, r = p2 - p1, q2 - q1, p1 - q1
    a, e = np.dot(d1, d1), np.dot(d2, d2)
    if a <= DEGENERACY_TOLERANCE**2 or e <= DEGENERACY_TOLERANCE**2:
        raise DegeneratePrimitiveError("zero-length edge")
    b, c, f = np.dot(d1, d2), np.dot(d1, r), np.dot(d2, r)
    denom = a * e - b * b
    if denom <= PARALLEL_TOLERANCE * a * e:
        # parallel: the closest pair involves an endpoint of one of the segments
        candidates = (
            (0.0, _clamped_projection(p1, q1, q2)),
            (1.0, _clamped_projection(p2, q1, q2)),
            (_clamped_projection(q1, p1, p2), 0.0),
            (_clamped_projection(q2, p1, p2), 1.0),
        )
        return min(candidates, key=lambda st: np.linalg.norm(p1 + st[0] * d1 - q1 - st[1] * d2))
    s = float(np.clip((b * f - c * e) / denom, 0.0, 1.0))
    t = (b * s + f) / e
    if t < 0.0:
        t = 0.0
        s = float(np.clip(-c / a, 0.0, 1.0))
    elif t > 1.0:
        t = 1.0
        s = float(np.clip((b - c) / a, 0.0, 1.0))
    return s, float(t)


def _edge_edge_region(s: float, t: float) -> EdgeEdgeRegion:
    first = "P1" if s == 0.0 else "P2" if s == 1.0 else "INTERIOR"
    second = "Q1" if t == 0.0 else "Q2" if t == 1.0 else "INTERIOR"
    return EdgeEdgeRegion[f"{first}_{second}"]


def edge_edge_distance(p1, p2, q1, q2) -> tuple[float, EdgeEdgeRegion]:
    """
    Unsigned distance between the closed segments p1p2 and q1q2.
    """
    p1, p2, q1, q2 = (np.asarray(v, dtype=np.float64) for v in (p1, p2, q1, q2))
    s, t = _edge_edge_parameters(p1, p2, q1, q2)
    distance = float(np.linalg.norm(p1 + s * (p2 - p1) - q1 - t * (q2 - q1)))
    return distance, _edge_edge_region(s, t)


def _squared_distance_derivatives(
    points: np.ndarray, coefficients: np.ndarray, directions: list[np.ndarray]
) -> tuple[float, np.ndarray, np.ndarray]:
    """
    Value, gradient and Hessian of q = |sum_j c_j x_j|^2 over the 12 point coordinates,
    where c depends affinely on the free closest-point parameters along `directions`
    and those parameters sit at their optimum.
    """
    r = coefficients @ points
    grad = 2.0 * np.kron(coefficients, r)
    hess = 2.0 * np.kron(np.outer(coefficients, coefficients), np.eye(3))
    if directions:
        tangents = np.stack([direction @ points for direction in directions], axis=1)
        f_uu = 2.0 * tangents.T @ tangents
        f_xu = np.stack(
            [
                2.0 * np.kron(direction, r) + 2.0 * np.kron(coefficients, tangents[:, k])
                for k, direction in enumerate(directions)
            ],
            axis=1,
        )
        hess = hess - f_xu @ np.linalg.solve(f_uu, f_xu.T)
    return float(r @ r), grad, hess


def _unsquared(q: float, grad_q: np.ndarray, hess_q: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    d = np.sqrt(q)
    grad = grad_q / (2.0 * d)
    hess = hess_q / (2.0 * d) - np.outer(grad_q, grad_q) / (4.0 * d**3)
    return float(d), grad, hess


def point_triangle_derivatives(points: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """
    Distance, gradient (12,) and Hessian (12, 12) for stacked points (p, a, b, c).
    """
    points = np.asarray(points, dtype=np.float64).reshape(4, 3)
    _, region, (u, w) = _closest_point_triangle(*points)
    match region:
        case PointTriangleRegion.FACE:
            coefficients = np.array([1.0, -(1.0 - u - w), -u, -w])
            directions = [np.array([0.0, 1.0, -1.0, 0.0]), np.array([0.0, 1.0, 0.0, -1.0])]
        case PointTriangleRegion.EDGE01:
            coefficients = np.array([1.0, -(1.0 - u), -u, 0.0])
            directions = [np.array([0.0, 1.0, -1.0, 0.0])]
        case PointTriangleRegion.EDGE12:
            coefficients = np.array([1.0, 0.0, -(1.0 - u), -u])
            directions = [np.array([0.0, 0.0, 1.0, -1.0])]
        case PointTriangleRegion.EDGE20:
            coefficients = np.array([1.0, -u, 0.0, -(1.0 - u)])
            directions = [np.array([0.0, -1.0, 0.0, 1.0])]
        case PointTriangleRegion.VERTEX0:
            coefficients, directions = np.array([1.0, -1.0, 0.0, 0.0]), []
        case PointTriangleRegion.VERTEX1:
            coefficients, directions = np.array([1.0, 0.0, -1.0, 0.0]), []
        case _:
            coefficients, directions = np.array([1.0, 0.0, 0.0, -1.0]), []
    return _unsquared(*_squared_distance_derivatives(points, coefficients, directions))


def edge_edge_derivatives(points: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """
    Distance, gradient (12,) and Hessian (12, 12) for stacked points (p1, p2, q1, q2).
    """
    points = np.asarray(points, dtype=np.float64).reshape(4, 3)
    s, t = _edge_edge_parameters(*points)
    coefficients = np.array([1.0 - s, s, -(1.0 - t), -t])
    directions = []
    if 0.0 < s < 1.0:
        directions.append(np.array([-1.0, 1.0, 0.0, 0.0]))
    if 0.0 < t < 1.0:
        directions.append(np.array([0.0, 0.0, 1.0, -1.0]))
    return _unsquared(*_squared_distance_derivatives(points, coefficients, directions))
