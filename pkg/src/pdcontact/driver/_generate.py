#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import itertools
from enum import Enum
from pathlib import Path

import numpy as np

from ..actuation import ActuationFrame, save_actuation
from ..common import config, utils
from ..mesh import TetMesh, build_embedding, save_surface, save_tet_mesh
from ..solvers import SolverBackend
from ._scene import SceneConfig, save_scene_config

log = utils.get_logger(name="driver", log_level=config.LOG_LEVEL, log_file_path=config.log_file("driver"))

# physical cell size at resolution 1, meters
BASE_CELL = 0.01
# surface patches sit this fraction of a cell inside the material
SURFACE_INSET = 0.02
SURFACE_SUBDIVISIONS = 2
MAX_RESOLUTION = 8

SLAB_PINCH_STRETCH = 0.5
BAR_BEND_STRETCH = 0.55


class SceneKind(Enum):
    BAR_BEND = "bar_bend"
    SLAB_PINCH = "slab_pinch"


class _HexGrid:
    """
    Regular grid of cubic cells, each split into six positively oriented tets.
    """

    def __init__(self, shape: tuple[int, int, int], h: float, cells: np.ndarray) -> None:
        nx, ny, nz = shape
        self.shape = shape
        self.h = h
        grid = np.stack(np.meshgrid(np.arange(nx + 1), np.arange(ny + 1), np.arange(nz + 1), indexing="ij"), axis=-1)

        def vertex_id(ijk: np.ndarray) -> np.ndarray:
            return ijk[..., 0] + (nx + 1) * (ijk[..., 1] + (ny + 1) * ijk[..., 2])

        tets = []
        for permutation in itertools.permutations(range(3)):
            path = [np.zeros(3, dtype=np.int64)]
            for axis in permutation:
                path.append(path[-1] + np.eye(3, dtype=np.int64)[axis])
            corners = np.stack([cells + offset for offset in path], axis=1)
            tets.append(vertex_id(corners))
        tets = np.stack(tets, axis=1).reshape(-1, 4)

        positions = grid.reshape(-1, 3)[np.argsort(vertex_id(grid.reshape(-1, 3)))] * h
        edges = positions[tets[:, 1:]] - positions[tets[:, :1]]
        negative = np.linalg.det(edges) < 0
        tets[negative] = tets[negative][:, [0, 2, 1, 3]]

        used = np.unique(tets)
        remap = np.full(positions.shape[0], -1, dtype=np.int64)
        remap[used] = np.arange(used.size)
        self.positions = positions[used]
        self.tets = remap[tets]
        # element centroids in cell units, for actuation profiles
        self.centroids = self.positions[self.tets].mean(axis=1) / h

    def vertices_where(self, mask_fn) -> np.ndarray:
        return np.flatnonzero(mask_fn(self.positions / self.h))


def _cells(ranges: list[tuple[range, range, range]]) -> np.ndarray:
    """
    Cell lower corners of a union of boxes, sorted by (z, y, x) for a deterministic element order.
    """
    cells = {
        (i, j, k)
        for x_range, y_range, z_range in ranges
        for i in x_range
        for j in y_range
        for k in z_range
    }
    return np.array(sorted(cells, key=lambda c: (c[2], c[1], c[0])), dtype=np.int64)


def _patch(origin: np.ndarray, u: np.ndarray, v: np.ndarray, nu: int, nv: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Planar triangulated rectangle origin + a u + b v, a, b in [0, 1], with nu x nv quads.
    """
    a, b = np.meshgrid(np.linspace(0.0, 1.0, nu + 1), np.linspace(0.0, 1.0, nv + 1), indexing="ij")
    vertices = origin + a.reshape(-1, 1) * u + b.reshape(-1, 1) * v
    index = np.arange((nu + 1) * (nv + 1)).reshape(nu + 1, nv + 1)
    q00, q10, q01, q11 = index[:-1, :-1], index[1:, :-1], index[:-1, 1:], index[1:, 1:]
    triangles = np.concatenate(
        (np.stack((q00, q10, q11), axis=-1).reshape(-1, 3), np.stack((q00, q11, q01), axis=-1).reshape(-1, 3))
    )
    return vertices, triangles


def _merge(patches: list[tuple[np.ndarray, np.ndarray]]) -> tuple[np.ndarray, np.ndarray]:
    vertices, triangles, offset = [], [], 0
    for patch_vertices, patch_triangles in patches:
        vertices.append(patch_vertices)
        triangles.append(patch_triangles + offset)
        offset += patch_vertices.shape[0]
    return np.concatenate(vertices), np.concatenate(triangles)


def _ramp(profile: np.ndarray, axis: int, amount: float, n_frames: int) -> list[ActuationFrame]:
    """
    Frames whose element targets stretch `axis` by 1 + amount * profile * (t + 1) / n_frames.
    """
    frames = []
    for t in range(n_frames):
        matrices = np.broadcast_to(np.eye(3), (profile.size, 3, 3)).copy()
        matrices[:, axis, axis] += amount * profile * (t + 1) / n_frames
        frames.append(ActuationFrame(matrices))
    return frames


def _slab_pinch(r: int, h: float, n_frames: int):
    """
    Two slabs joined by a hinge at the back (z = 0), separated by a slot of r cells.
    The slabs stretch in y with a profile growing toward the front, closing the slot.
    """
    nx, ny, nz = 7 * r, 9 * r, 6 * r
    cells = _cells(
        [
            (range(nx), range(0, 4 * r), range(nz)),
            (range(nx), range(5 * r, ny), range(nz)),
            (range(nx), range(4 * r, 5 * r), range(r)),
        ]
    )
    grid = _HexGrid((nx, ny, nz), h, cells)
    fixed = grid.vertices_where(lambda p: np.isclose(p[:, 2], 0.0))

    inset = SURFACE_INSET
    width, depth = 3 * r - 2 * inset, 3 * r - 2 * inset
    u, v = np.array([width * h, 0.0, 0.0]), np.array([0.0, 0.0, depth * h])
    quads = 3 * r * SURFACE_SUBDIVISIONS
    lower = _patch(np.array([2 * r + inset, 4 * r - inset, 3 * r + inset]) * h, u, v, quads, quads)
    upper = _patch(np.array([2 * r + inset, 5 * r + inset, 3 * r + inset]) * h, u, v, quads, quads)
    surface = _merge([lower, upper])

    slab = (grid.centroids[:, 1] < 4 * r) | (grid.centroids[:, 1] > 5 * r)
    profile = np.where(slab, np.clip((grid.centroids[:, 2] - r) / (nz - r), 0.0, 1.0), 0.0)
    frames = _ramp(profile, 1, SLAB_PINCH_STRETCH, n_frames)
    return grid, fixed, surface, frames


def _bar_bend(r: int, h: float, n_frames: int):
    """
    Bar along x held at its middle cross-section. Elements stretch along x in proportion
    to their height above the mid-plane, curling both halves until the end caps meet.
    """
    nx, ny, nz = 12 * r, 2 * r, 2 * r
    cells = _cells([(range(nx), range(ny), range(nz))])
    grid = _HexGrid((nx, ny, nz), h, cells)
    fixed = grid.vertices_where(lambda p: np.isclose(p[:, 0], nx / 2))

    inset = SURFACE_INSET
    side = 2 * r - 2 * inset
    u, v = np.array([0.0, side * h, 0.0]), np.array([0.0, 0.0, side * h])
    quads = 2 * r * SURFACE_SUBDIVISIONS
    left = _patch(np.array([inset, inset, inset]) * h, u, v, quads, quads)
    right = _patch(np.array([nx - inset, inset, inset]) * h, u, v, quads, quads)
    surface = _merge([left, right])

    profile = (grid.centroids[:, 1] - r) / r
    frames = _ramp(profile, 0, BAR_BEND_STRETCH, n_frames)
    return grid, fixed, surface, frames


def generate_scene(kind: SceneKind | str, resolution: int, out: str | Path, n_frames: int = 6) -> SceneConfig:
    """
    Write ``mesh.tet``, ``surface.obj``, ``actuation.txt`` and ``scene.json`` into `out`.
    """
    kind = SceneKind(kind)
    if not 1 <= resolution <= MAX_RESOLUTION:
        raise ValueError(f"resolution must be in [1, {MAX_RESOLUTION}], got {resolution}")
    h = BASE_CELL / resolution
    match kind:
        case SceneKind.SLAB_PINCH:
            grid, fixed, (surface_vertices, triangles), frames = _slab_pinch(resolution, h, n_frames)
        case SceneKind.BAR_BEND:
            grid, fixed, (surface_vertices, triangles), frames = _bar_bend(resolution, h, n_frames)

    mesh = TetMesh(grid.positions, grid.tets, fixed)
    surface = build_embedding(mesh, surface_vertices, triangles)
    if kind is SceneKind.SLAB_PINCH:
        assert surface.n2 <= 0.15 * surface.n1, f"n2/n1 = {surface.n2 / surface.n1:.3f} above 0.15"

    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    save_tet_mesh(mesh, out / "mesh.tet")
    save_surface(surface_vertices, triangles, out / "surface.obj")
    save_actuation(frames, out / "actuation.txt")
    cfg = SceneConfig(
        mesh=Path("mesh.tet"),
        surface=Path("surface.obj"),
        actuation=Path("actuation.txt"),
        backend=SolverBackend.WOODBURY,
        d0=0.1 * h,
        out=Path("out"),
    )
    save_scene_config(cfg, out / "scene.json")
    log.info(
        "generated %s at resolution %d in %s: n=%d m=%d n1=%d n2=%d surface=%d triangles, %d frames",
        kind.value,
        resolution,
        out,
        mesh.n_vertices,
        mesh.n_elements,
        surface.n1,
        surface.n2,
        triangles.shape[0],
        n_frames,
    )
    return cfg.resolved(out)
