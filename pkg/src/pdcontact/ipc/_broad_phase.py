#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np


def primitive_boxes(positions: np.ndarray, primitives: np.ndarray, padding: float = 0.0) -> np.ndarray:
    """
    Axis-aligned boxes (k, 2, 3) of primitives given as rows of vertex indices.
    """
    corners = positions[primitives]
    return np.stack((corners.min(axis=1) - padding, corners.max(axis=1) + padding), axis=1)


def swept_boxes(start: np.ndarray, end: np.ndarray, primitives: np.ndarray) -> np.ndarray:
    corners = np.concatenate((start[primitives], end[primitives]), axis=1)
    return np.stack((corners.min(axis=1), corners.max(axis=1)), axis=1)


class SpatialHash:
    """
    Uniform grid broad phase. Boxes are rasterized into cells of a fixed size and two
    boxes become a candidate pair when they share a cell and overlap.
    """

    cell_size: float

    def __init__(self, cell_size: float) -> None:
        assert cell_size > 0
        self.cell_size = cell_size

    def _entries(self, boxes: np.ndarray, origin: np.ndarray, dims: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        lo = np.floor((boxes[:, 0] - origin) / self.cell_size).astype(np.int64)
        hi = np.floor((boxes[:, 1] - origin) / self.cell_size).astype(np.int64)
        span = hi - lo + 1
        counts = span.prod(axis=1)
        ids = np.repeat(np.arange(boxes.shape[0]), counts)
        local = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        sx, sy = span[ids, 0], span[ids, 1]
        ix = lo[ids, 0] + local % sx
        iy = lo[ids, 1] + (local // sx) % sy
        iz = lo[ids, 2] + local // (sx * sy)
        keys = (ix * dims[1] + iy) * dims[2] + iz
        return keys, ids

    def pairs(self, boxes_a: np.ndarray, boxes_b: np.ndarray | None = None) -> np.ndarray:
        """
        Candidate pairs (i, j) with overlapping boxes, sorted. Without boxes_b the
        set is paired with itself and only i < j is returned.
        """
        self_pairs = boxes_b is None
        if self_pairs:
            boxes_b = boxes_a
        if boxes_a.shape[0] == 0 or boxes_b.shape[0] == 0:
            return np.empty((0, 2), dtype=np.int64)
        both = np.concatenate((boxes_a, boxes_b))
        origin = both[:, 0].min(axis=0)
        dims = np.floor((both[:, 1].max(axis=0) - origin) / self.cell_size).astype(np.int64) + 1
        keys_a, ids_a = self._entries(boxes_a, origin, dims)
        keys_b, ids_b = self._entries(boxes_b, origin, dims)

        order = np.argsort(keys_a, kind="stable")
        keys_a, ids_a = keys_a[order], ids_a[order]
        left = np.searchsorted(keys_a, keys_b, side="left")
        right = np.searchsorted(keys_a, keys_b, side="right")
        counts = right - left
        first = np.repeat(left, counts) + (np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts))
        candidates = np.stack((ids_a[first], np.repeat(ids_b, counts)), axis=1)
        if self_pairs:
            candidates = candidates[candidates[:, 0] < candidates[:, 1]]
        candidates = np.unique(candidates, axis=0)
        if candidates.size == 0:
            return candidates.reshape(0, 2)

        a, b = boxes_a[candidates[:, 0]], boxes_b[candidates[:, 1]]
        overlap = np.all((a[:, 0] <= b[:, 1]) & (b[:, 0] <= a[:, 1]), axis=1)
        return candidates[overlap]


def cell_size_for(positions: np.ndarray, primitives: np.ndarray, minimum: float) -> float:
    """
    Cell size of at least `minimum`, grown to the mean primitive extent so that a
    primitive covers a bounded number of cells.
    """
    if primitives.size == 0:
        return minimum
    boxes = primitive_boxes(positions, primitives)
    extent = float((boxes[:, 1] - boxes[:, 0]).max(axis=1).mean())
    return max(minimum, extent)
