#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from dataclasses import dataclass, field

import numpy as np

from ..mesh import EmbeddedSurface
from ._constraints import vertex_triangle_candidates
from ._terms import BarrierBlocks


@dataclass(frozen=True)
class PenaltyContacts:
    """
    Surface vertices caught behind (or within ``d0`` in front of) a non-adjacent triangle,
    each with the point d0 in front of that triangle it is pulled toward.
    """

    d0: float
    vertices: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    triangles: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    targets: np.ndarray = field(default_factory=lambda: np.empty((0, 3)))

    def __len__(self) -> int:
        return self.vertices.size


def _unit_normals(corners: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    normals = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
    lengths = np.linalg.norm(normals, axis=1)
    valid = lengths > 0
    normals[valid] /= lengths[valid, None]
    return normals, valid


def _inside(points: np.ndarray, corners: np.ndarray) -> np.ndarray:
    e0 = corners[:, 1] - corners[:, 0]
    e1 = corners[:, 2] - corners[:, 0]
    r = points - corners[:, 0]
    d00 = np.einsum("ij,ij->i", e0, e0)
    d01 = np.einsum("ij,ij->i", e0, e1)
    d11 = np.einsum("ij,ij->i", e1, e1)
    d20 = np.einsum("ij,ij->i", r, e0)
    d21 = np.einsum("ij,ij->i", r, e1)
    denominator = d00 * d11 - d01**2
    v = (d11 * d20 - d01 * d21) / denominator
    w = (d00 * d21 - d01 * d20) / denominator
    return (v >= 0) & (w >= 0) & (v + w <= 1)


def penalty_contacts(surface: EmbeddedSurface, s: np.ndarray, d0: float, search_radius: float) -> PenaltyContacts:
    """
    Detect penetrating vertices by the side of each nearby triangle they occupied at rest.

    A vertex counts when its projection lands inside the triangle and its height on the
    rest side is below d0; the deepest triangle wins. Pairs that were within d0 of the
    triangle plane at rest have no defined side and are skipped.
    """
    s = np.asarray(s, dtype=np.float64).reshape(-1, 3)
    pairs = vertex_triangle_candidates(surface, s, search_radius)
    if pairs.size == 0:
        return PenaltyContacts(d0=d0)
    vertices, triangles = pairs[:, 0], pairs[:, 1]
    rest = surface.rest_vertices
    rest_normals, _ = _unit_normals(rest[surface.triangles[triangles]])
    rest_heights = np.einsum("ij,ij->i", rest[vertices] - rest[surface.triangles[triangles, 0]], rest_normals)
    side = np.sign(rest_heights)

    corners = s[surface.triangles[triangles]]
    normals, valid = _unit_normals(corners)
    heights = side * np.einsum("ij,ij->i", s[vertices] - corners[:, 0], normals)
    feet = s[vertices] - (side * heights)[:, None] * normals
    active = valid & (np.abs(rest_heights) > d0) & (heights < d0) & (heights > -search_radius)
    active[active] = _inside(feet[active], corners[active])
    if not active.any():
        return PenaltyContacts(d0=d0)

    vertices, triangles, heights = vertices[active], triangles[active], heights[active]
    feet, normals, side = feet[active], normals[active], side[active]
    order = np.lexsort((heights, vertices))
    _, first = np.unique(vertices[order], return_index=True)
    chosen = order[first]
    return PenaltyContacts(
        d0=d0,
        vertices=vertices[chosen],
        triangles=triangles[chosen],
        targets=feet[chosen] + (d0 * side[chosen])[:, None] * normals[chosen],
    )


def penalty_terms(
    surface: EmbeddedSurface, x: np.ndarray, contacts: PenaltyContacts, stiffness: float
) -> BarrierBlocks:
    """
    Quadratic springs 0.5 * k * |W_v x - target_v|^2 pulled back through W.

    The springs are PD-style constraints with fixed targets, so the Hessian k S^T S is
    constant within an iteration and positive semidefinite.
    """
    x = np.asarray(x, dtype=np.float64)
    if len(contacts) == 0:
        return BarrierBlocks(
            energy=0.0,
            gradient=np.zeros(x.size),
            vertices=np.empty(0, dtype=np.int64),
            hessian=np.zeros((0, 0)),
            kappa=stiffness,
        )
    rows = (3 * contacts.vertices[:, None] + np.arange(3)).reshape(-1)
    selector = surface.expanded_weights()[rows]
    residual = selector @ x - contacts.targets.reshape(-1)
    hessian = (stiffness * (selector.T @ selector)).tocsr()

    weights = surface.weights[contacts.vertices]
    vertices = np.unique(weights.indices[weights.data != 0])
    dofs = (3 * vertices[:, None] + np.arange(3)).reshape(-1)
    block = hessian[dofs][:, dofs].toarray()
    return BarrierBlocks(
        energy=0.5 * stiffness * float(residual @ residual),
        gradient=stiffness * (selector.T @ residual),
        vertices=vertices,
        hessian=0.5 * (block + block.T),
        kappa=stiffness,
    )
