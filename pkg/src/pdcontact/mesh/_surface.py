#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from pathlib import Path

import numpy as np
import scipy.sparse as sp
import trimesh
from scipy.spatial import cKDTree

from ..common import config, utils
from ..common.errors import EmbeddingError, MeshFormatError
from ._tetmesh import TetMesh, _readonly

log = utils.get_logger(name="mesh", log_level=config.LOG_LEVEL, log_file_path=config.log_file("mesh"))

# surface vertices may sit this far outside their tet
EMBEDDING_TOLERANCE = 1e-9


class EmbeddedSurface:
    """
    Triangle surface whose vertices interpolate the tet mesh, s = W x.

    Every row of W stores exactly four entries, the barycentric coordinates of the
    surface vertex in its containing tet, zeros included. The collision-aware vertices
    are the columns holding a nonzero weight; all remaining simulation vertices are
    collision-agnostic.
    """

    rest_vertices: np.ndarray
    triangles: np.ndarray
    edges: np.ndarray
    containing_tets: np.ndarray
    weights: sp.csr_matrix
    aware_mask: np.ndarray
    _expanded: sp.csr_matrix | None

    def __init__(
        self,
        rest_vertices: np.ndarray,
        triangles: np.ndarray,
        containing_tets: np.ndarray,
        barycentric: np.ndarray,
        mesh: TetMesh,
    ) -> None:
        ns = rest_vertices.shape[0]
        columns = mesh.tets[containing_tets]
        # keep explicit zeros so every row carries four structural entries
        weights = sp.csr_matrix(
            (barycentric.ravel(), columns.ravel(), np.arange(0, 4 * ns + 1, 4)),
            shape=(ns, mesh.n_vertices),
        )
        aware = np.zeros(mesh.n_vertices, dtype=bool)
        aware[np.unique(columns[barycentric > 0])] = True

        self.rest_vertices = _readonly(np.array(rest_vertices, dtype=np.float64))
        self.triangles = _readonly(np.array(triangles, dtype=np.int64))
        self.edges = _readonly(trimesh.Trimesh(self.rest_vertices, self.triangles, process=False).edges_unique.copy())
        self.containing_tets = _readonly(np.array(containing_tets, dtype=np.int64))
        self.weights = weights
        self.aware_mask = _readonly(aware)
        self._expanded = None

    @property
    def n_vertices(self) -> int:
        return self.rest_vertices.shape[0]

    @property
    def aware_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.aware_mask)

    @property
    def agnostic_vertices(self) -> np.ndarray:
        return np.flatnonzero(~self.aware_mask)

    @property
    def n1(self) -> int:
        return int((~self.aware_mask).sum())

    @property
    def n2(self) -> int:
        return int(self.aware_mask.sum())

    def positions(self, x: np.ndarray) -> np.ndarray:
        """
        Surface vertex positions s = W x, shape (ns, 3).
        """
        return self.weights @ np.asarray(x, dtype=np.float64).reshape(-1, 3)

    def expanded_weights(self) -> sp.csr_matrix:
        """
        W acting on flat coordinates, kron(W, I3) of shape (3ns, 3n).
        """
        if self._expanded is None:
            self._expanded = sp.kron(self.weights, sp.identity(3), format="csr")
        return self._expanded

    def pull_back(self, surface_vector: np.ndarray) -> np.ndarray:
        """
        Map a flat surface-space gradient to simulation space, W^T g.
        """
        return self.expanded_weights().T @ surface_vector


def _barycentric(mesh: TetMesh, tet: int, point: np.ndarray) -> np.ndarray:
    corners = mesh.rest_positions[mesh.tets[tet]]
    local = np.linalg.solve((corners[1:] - corners[0]).T, point - corners[0])
    return np.concatenate(([1.0 - local.sum()], local))


def build_embedding(mesh: TetMesh, surface_vertices: np.ndarray, triangles: np.ndarray) -> EmbeddedSurface:
    """
    Locate every surface vertex in the tet mesh and build the interpolation W.

    Ties between tets sharing a face go to the lowest tet index.
    """
    surface_vertices = np.asarray(surface_vertices, dtype=np.float64).reshape(-1, 3)
    triangles = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
    if triangles.size and (triangles.min() < 0 or triangles.max() >= surface_vertices.shape[0]):
        raise EmbeddingError("surface triangle index out of range")
    areas = trimesh.triangles.area(surface_vertices[triangles])
    degenerate = np.flatnonzero(~(areas > 0))
    if degenerate.size:
        raise EmbeddingError(f"surface triangle {int(degenerate[0])} is degenerate at rest")

    corners = mesh.rest_positions[mesh.tets]
    centroids = corners.mean(axis=1)
    radius = float(np.linalg.norm(corners - centroids[:, None, :], axis=2).max())
    tree = cKDTree(centroids)

    containing = np.empty(surface_vertices.shape[0], dtype=np.int64)
    barycentric = np.empty((surface_vertices.shape[0], 4))
    for k, point in enumerate(surface_vertices):
        for tet in sorted(tree.query_ball_point(point, radius + EMBEDDING_TOLERANCE)):
            weights = np.clip(_barycentric(mesh, tet, point), 0.0, 1.0)
            weights /= weights.sum()
            if np.linalg.norm(weights @ mesh.rest_positions[mesh.tets[tet]] - point) <= EMBEDDING_TOLERANCE:
                containing[k] = tet
                barycentric[k] = weights
                break
        else:
            raise EmbeddingError(f"surface vertex {k} at {point.tolist()} lies outside every tet")

    surface = EmbeddedSurface(surface_vertices, triangles, containing, barycentric, mesh)
    log.info(
        "embedded %d surface vertices, %d triangles: n1=%d collision-agnostic, n2=%d collision-aware",
        surface.n_vertices,
        triangles.shape[0],
        surface.n1,
        surface.n2,
    )
    return surface


def load_surface(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """
    Read an OBJ triangle surface, returning (vertices, triangles).
    """
    try:
        loaded = trimesh.load(str(path), file_type="obj", process=False, force="mesh", maintain_order=True)
    except Exception as e:
        raise MeshFormatError(str(path), f"parse failure: {e}") from e
    vertices = np.asarray(loaded.vertices, dtype=np.float64)
    faces = np.asarray(loaded.faces, dtype=np.int64)
    if faces.ndim != 2 or faces.shape[1] != 3 or faces.shape[0] == 0:
        raise MeshFormatError(str(path), "surface must hold triangle faces")
    return vertices, faces


def save_surface(vertices: np.ndarray, triangles: np.ndarray, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        for x, y, z in np.asarray(vertices).reshape(-1, 3):
            fp.write(f"v {x:.17g} {y:.17g} {z:.17g}\n")
        for a, b, c in np.asarray(triangles).reshape(-1, 3):
            fp.write(f"f {a + 1} {b + 1} {c + 1}\n")
