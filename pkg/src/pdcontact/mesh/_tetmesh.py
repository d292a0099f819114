#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from collections.abc import Iterable
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from ..common import config, utils
from ..common.errors import InvertedElementError, MeshFormatError, NonFiniteError

log = utils.get_logger(name="mesh", log_level=config.LOG_LEVEL, log_file_path=config.log_file("mesh"))


def _readonly(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class TetMesh:
    """
    Linear tetrahedral mesh at rest.

    States are flat vectors of length 3n laid out vertex by vertex ``[x0, y0, z0, x1, ...]``.
    The flattened deformation gradient of element ``i`` is ``G_i x`` with row-major
    flattening, ``G_i`` being stored compactly as per-vertex shape-function gradients.
    """

    rest_positions: np.ndarray
    tets: np.ndarray
    volumes: np.ndarray
    grad_coeffs: np.ndarray
    fixed: np.ndarray
    _gradient_operator: sp.csr_matrix | None

    def __init__(self, rest_positions: np.ndarray, tets: np.ndarray, fixed: Iterable[int] = ()) -> None:
        rest_positions = np.array(rest_positions, dtype=np.float64).reshape(-1, 3)
        tets = np.array(tets, dtype=np.int64).reshape(-1, 4)
        fixed = np.unique(np.fromiter(fixed, dtype=np.int64))
        n = rest_positions.shape[0]
        if not np.all(np.isfinite(rest_positions)):
            raise NonFiniteError("rest positions")
        if tets.size and (tets.min() < 0 or tets.max() >= n):
            raise ValueError(f"tet vertex index out of range [0, {n})")
        if fixed.size and (fixed.min() < 0 or fixed.max() >= n):
            raise ValueError(f"fixed vertex index out of range [0, {n})")

        corners = rest_positions[tets]
        rest_edges = (corners[:, 1:] - corners[:, :1]).transpose(0, 2, 1)
        dets = np.linalg.det(rest_edges)
        bad = np.flatnonzero(~(dets > 0))
        if bad.size:
            raise InvertedElementError(int(bad[0]), float(dets[bad[0]]))
        inv_edges = np.linalg.inv(rest_edges)
        coeffs = np.empty((tets.shape[0], 4, 3))
        coeffs[:, 1:, :] = inv_edges
        coeffs[:, 0, :] = -inv_edges.sum(axis=1)

        self.rest_positions = _readonly(rest_positions)
        self.tets = _readonly(tets)
        self.volumes = _readonly(dets / 6.0)
        self.grad_coeffs = _readonly(coeffs)
        self.fixed = _readonly(fixed)
        self._gradient_operator = None

    @property
    def n_vertices(self) -> int:
        return self.rest_positions.shape[0]

    @property
    def n_elements(self) -> int:
        return self.tets.shape[0]

    @property
    def rest_state(self) -> np.ndarray:
        return self.rest_positions.reshape(-1).copy()

    @property
    def fixed_dofs(self) -> np.ndarray:
        return (3 * self.fixed[:, None] + np.arange(3)).reshape(-1)

    @property
    def free_dofs(self) -> np.ndarray:
        mask = np.ones(3 * self.n_vertices, dtype=bool)
        mask[self.fixed_dofs] = False
        return np.flatnonzero(mask)

    @property
    def bbox_diagonal(self) -> float:
        return float(np.linalg.norm(self.rest_positions.max(axis=0) - self.rest_positions.min(axis=0)))

    def deformation_gradients(self, x: np.ndarray) -> np.ndarray:
        """
        Per-element 3x3 deformation gradients F_i for the flat state x.
        """
        corners = np.asarray(x, dtype=np.float64).reshape(-1, 3)[self.tets]
        return np.einsum("mja,mjb->mab", corners, self.grad_coeffs)

    def gradient_operator(self) -> sp.csr_matrix:
        """
        Stacked gradient maps G = [G_0; G_1; ...] of shape (9m, 3n).
        """
        if self._gradient_operator is None:
            m = self.n_elements
            e, j, a, b = np.meshgrid(np.arange(m), np.arange(4), np.arange(3), np.arange(3), indexing="ij")
            rows = 9 * e + 3 * a + b
            cols = 3 * self.tets[e, j] + a
            values = self.grad_coeffs[e, j, b]
            operator = sp.coo_matrix(
                (values.ravel(), (rows.ravel(), cols.ravel())), shape=(9 * m, 3 * self.n_vertices)
            ).tocsr()
            operator.sum_duplicates()
            self._gradient_operator = operator
        return self._gradient_operator

    def gradient_map(self, element: int) -> sp.csr_matrix:
        return self.gradient_operator()[9 * element : 9 * element + 9]


def load_tet_mesh(path: str | Path) -> TetMesh:
    """
    Read the text tet-mesh format: ``verts <n>`` + n coordinate lines,
    ``tets <m>`` + m index lines, optionally ``fixed <k>`` + k indices.
    """
    path = str(path)
    with open(path, encoding="utf-8") as fp:
        lines = [line.split("#", 1)[0].split() for line in fp]
    tokens = [line for line in lines if line]
    sections: dict[str, list[list[str]]] = {}
    cursor = 0
    while cursor < len(tokens):
        header = tokens[cursor]
        if len(header) != 2 or header[0] not in ("verts", "tets", "fixed"):
            raise MeshFormatError(path, f"unexpected line {' '.join(header)!r}")
        try:
            count = int(header[1])
        except ValueError as e:
            raise MeshFormatError(path, f"bad count in {' '.join(header)!r}") from e
        body = tokens[cursor + 1 : cursor + 1 + count]
        if len(body) != count:
            raise MeshFormatError(path, f"section {header[0]} expects {count} lines, got {len(body)}")
        sections[header[0]] = body
        cursor += 1 + count
    if "verts" not in sections or "tets" not in sections:
        raise MeshFormatError(path, "missing verts or tets section")

    try:
        positions = np.array([[float(v) for v in row] for row in sections["verts"]], dtype=np.float64)
        tets = np.array([[int(v) for v in row] for row in sections["tets"]], dtype=np.int64)
        fixed = [int(v) for row in sections.get("fixed", []) for v in row]
    except ValueError as e:
        raise MeshFormatError(path, f"parse failure: {e}") from e
    if positions.ndim != 2 or positions.shape[1] != 3:
        raise MeshFormatError(path, "vertex lines must hold 3 coordinates")
    if tets.ndim != 2 or tets.shape[1] != 4:
        raise MeshFormatError(path, "tet lines must hold 4 indices")
    n = positions.shape[0]
    for index in (*tets.ravel(), *fixed):
        if index < 0 or index >= n:
            raise MeshFormatError(path, f"vertex index {index} out of range [0, {n})")

    mesh = TetMesh(positions, tets, fixed)
    if mesh.fixed.size == 0:
        log.warning("%s has no fixed vertices, the stiffness matrix will be singular", path)
    log.info(
        "loaded %s: %d vertices, %d tets, %d fixed, volume %.6g",
        path,
        mesh.n_vertices,
        mesh.n_elements,
        mesh.fixed.size,
        mesh.volumes.sum(),
    )
    return mesh


def save_tet_mesh(mesh: TetMesh, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(f"verts {mesh.n_vertices}\n")
        for x, y, z in mesh.rest_positions:
            fp.write(f"{x:.17g} {y:.17g} {z:.17g}\n")
        fp.write(f"tets {mesh.n_elements}\n")
        for tet in mesh.tets:
            fp.write(" ".join(str(int(v)) for v in tet) + "\n")
        if mesh.fixed.size:
            fp.write(f"fixed {mesh.fixed.size}\n")
            for index in mesh.fixed:
                fp.write(f"{int(index)}\n")
