#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..common.errors import ActuationError, MeshFormatError
from ..mesh._tetmesh import _readonly

SYMMETRY_TOLERANCE = 1e-9


class ActuationFrame:
    """
    Per-element symmetric 3x3 actuation targets A_i for one animation frame.
    """

    matrices: np.ndarray

    def __init__(self, matrices: np.ndarray) -> None:
        matrices = np.array(matrices, dtype=np.float64).reshape(-1, 3, 3)
        if not np.all(np.isfinite(matrices)):
            raise ActuationError("actuation matrices must be finite")
        asymmetry = np.abs(matrices - matrices.transpose(0, 2, 1)).max(initial=0.0)
        if asymmetry >= SYMMETRY_TOLERANCE:
            raise ActuationError(f"actuation matrices must be symmetric, max asymmetry {asymmetry:.3e}")
        dets = np.linalg.det(matrices)
        if np.any(~(dets > 0)):
            element = int(np.flatnonzero(~(dets > 0))[0])
            raise ActuationError(f"actuation matrix of element {element} has determinant {dets[element]:.3e}")
        self.matrices = _readonly(matrices)

    @staticmethod
    def identity(n_elements: int) -> "ActuationFrame":
        return ActuationFrame(np.broadcast_to(np.eye(3), (n_elements, 3, 3)))

    @property
    def n_elements(self) -> int:
        return self.matrices.shape[0]


@dataclass(frozen=True)
class ElementProjection:
    p: np.ndarray
    rotation: np.ndarray


class ElementProjections(Sequence[ElementProjection]):
    """
    Projections of all elements, stored as stacked arrays and indexable per element.
    """

    p: np.ndarray
    rotations: np.ndarray

    def __init__(self, p: np.ndarray, rotations: np.ndarray) -> None:
        self.p = np.asarray(p, dtype=np.float64).reshape(-1, 9)
        self.rotations = np.asarray(rotations, dtype=np.float64).reshape(-1, 3, 3)

    def __len__(self) -> int:
        return self.p.shape[0]

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        return ElementProjection(p=self.p[index], rotation=self.rotations[index])

    @staticmethod
    def from_list(projections: Sequence[ElementProjection]) -> "ElementProjections":
        if isinstance(projections, ElementProjections):
            return projections
        return ElementProjections(
            np.array([projection.p for projection in projections]).reshape(-1, 9),
            np.array([projection.rotation for projection in projections]).reshape(-1, 3, 3),
        )


def load_actuation(path: str | Path) -> list[ActuationFrame]:
    """
    Read ``frames <T> elems <m>`` followed by T*m lines of 9 row-major floats.
    """
    path = str(path)
    with open(path, encoding="utf-8") as fp:
        rows = [line.split() for line in fp if line.strip()]
    if not rows or len(rows[0]) != 4 or rows[0][0] != "frames" or rows[0][2] != "elems":
        raise MeshFormatError(path, "expected header 'frames <T> elems <m>'")
    try:
        n_frames, n_elements = int(rows[0][1]), int(rows[0][3])
        values = np.array([[float(v) for v in row] for row in rows[1:]], dtype=np.float64)
    except ValueError as e:
        raise MeshFormatError(path, f"parse failure: {e}") from e
    if values.shape != (n_frames * n_elements, 9):
        raise MeshFormatError(path, f"expected {n_frames * n_elements} lines of 9 floats, got {values.shape}")
    matrices = values.reshape(n_frames, n_elements, 3, 3)
    return [ActuationFrame(frame) for frame in matrices]


def save_actuation(frames: Sequence[ActuationFrame], path: str | Path) -> None:
    n_elements = frames[0].n_elements if frames else 0
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(f"frames {len(frames)} elems {n_elements}\n")
        for frame in frames:
            for matrix in frame.matrices:
                fp.write(" ".join(f"{v:.17g}" for v in matrix.ravel()) + "\n")
