#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np
import pytest

from pdcontact.driver import SceneConfig, generate_scene
from pdcontact.driver._generate import _HexGrid
from pdcontact.mesh import TetMesh, build_embedding


@pytest.fixture
def single_tet() -> TetMesh:
    return TetMesh(np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float), [[0, 1, 2, 3]], [0])


@pytest.fixture
def two_tets() -> TetMesh:
    positions = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], dtype=float)
    return TetMesh(positions, [[0, 1, 2, 3], [1, 2, 3, 4]], [0])


def box_mesh(shape=(2, 2, 2), h=1.0, fixed_face=True) -> TetMesh:
    nx, ny, nz = shape
    cells = np.array([(i, j, k) for k in range(nz) for j in range(ny) for i in range(nx)], dtype=np.int64)
    grid = _HexGrid(shape, h, cells)
    fixed = grid.vertices_where(lambda p: np.isclose(p[:, 2], 0.0)) if fixed_face else ()
    return TetMesh(grid.positions, grid.tets, fixed)


@pytest.fixture
def box() -> TetMesh:
    return box_mesh()


@pytest.fixture
def facing_triangles(box):
    """
    Two small triangles inside the box, parallel and 0.05 apart, shifted so that
    their closest pairs are not all face-on.
    """
    lower = np.array([[0.6, 0.6, 1.0], [1.4, 0.7, 1.0], [0.8, 1.4, 1.0]])
    upper = lower + np.array([0.15, 0.1, 0.05])
    vertices = np.concatenate((lower, upper))
    triangles = np.array([[0, 1, 2], [3, 4, 5]])
    return build_embedding(box, vertices, triangles)


def _sheet(n: int, z: float) -> tuple[np.ndarray, np.ndarray]:
    axis = np.linspace(0.6, 1.4, n + 1)
    xs, ys = np.meshgrid(axis, axis, indexing="ij")
    vertices = np.stack((xs.ravel(), ys.ravel(), np.full(xs.size, z)), axis=1)
    corner = (np.arange(n)[:, None] * (n + 1) + np.arange(n)[None, :]).ravel()
    triangles = np.concatenate(
        (
            np.stack((corner, corner + n + 1, corner + 1), axis=1),
            np.stack((corner + 1, corner + n + 1, corner + n + 2), axis=1),
        )
    )
    return vertices, triangles


@pytest.fixture
def facing_sheets(box):
    """
    Two 3x3 triangulated sheets 0.05 apart, the upper one shifted off the lower grid.
    """
    lower, lower_triangles = _sheet(3, 1.0)
    upper, upper_triangles = _sheet(3, 1.05)
    upper[:, :2] += 0.05
    vertices = np.concatenate((lower, upper))
    triangles = np.concatenate((lower_triangles, upper_triangles + lower.shape[0]))
    return build_embedding(box, vertices, triangles)


@pytest.fixture(scope="session")
def slab_scene(tmp_path_factory) -> SceneConfig:
    return generate_scene("slab_pinch", 1, tmp_path_factory.mktemp("slab_pinch"), n_frames=4)


@pytest.fixture(scope="session")
def bar_scene(tmp_path_factory) -> SceneConfig:
    return generate_scene("bar_bend", 1, tmp_path_factory.mktemp("bar_bend"), n_frames=4)
