#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np
import scipy.sparse as sp

from ._surface import EmbeddedSurface
from ._tetmesh import TetMesh, _readonly


class Permutation:
    """
    Vertex permutation with collision-agnostic vertices first, collision-aware second.

    ``order[k]`` is the original index of the vertex placed at position k.
    """

    order: np.ndarray
    inverse: np.ndarray
    n1: int
    n2: int

    def __init__(self, order: np.ndarray, n1: int) -> None:
        order = np.asarray(order, dtype=np.int64)
        inverse = np.empty_like(order)
        inverse[order] = np.arange(order.size)
        self.order = _readonly(order)
        self.inverse = _readonly(inverse)
        self.n1 = n1
        self.n2 = order.size - n1

    @property
    def dof_order(self) -> np.ndarray:
        return (3 * self.order[:, None] + np.arange(3)).reshape(-1)

    def apply(self, values: np.ndarray) -> np.ndarray:
        """
        Permute a flat dof vector, P v.
        """
        return np.asarray(values)[self.dof_order]

    def revert(self, values: np.ndarray) -> np.ndarray:
        """
        Undo apply, P^T v.
        """
        result = np.empty_like(values)
        result[self.dof_order] = values
        return result

    def matrix(self) -> sp.csr_matrix:
        """
        Sparse dof-level permutation matrix P with (P v)[k] = v[dof_order[k]].
        """
        size = self.dof_order.size
        return sp.csr_matrix((np.ones(size), (np.arange(size), self.dof_order)), shape=(size, size))


def partition_permutation(mesh: TetMesh, surface: EmbeddedSurface) -> Permutation:
    order = np.concatenate((surface.agnostic_vertices, surface.aware_vertices))
    assert order.size == mesh.n_vertices
    return Permutation(order, surface.n1)
