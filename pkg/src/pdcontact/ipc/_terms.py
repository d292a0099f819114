#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..common.errors import BarrierDomainError
from ..mesh import EmbeddedSurface
from ._barrier import barrier, barrier_derivative, barrier_second_derivative
from ._constraints import ConstraintSet
from ._distance import edge_edge_derivatives, point_triangle_derivatives


@dataclass(frozen=True)
class BarrierBlocks:
    """
    Barrier energy, its gradient on all simulation dofs, and the compressed Hessian.

    ``hessian`` is the dense 3n_c x 3n_c block over the dofs of ``vertices``;
    ``dofs`` plays the role of the selector that places it in the full system.
    """

    energy: float
    gradient: np.ndarray
    vertices: np.ndarray
    hessian: np.ndarray
    kappa: float

    @property
    def n_c(self) -> int:
        return self.vertices.size

    @property
    def dofs(self) -> np.ndarray:
        return (3 * self.vertices[:, None] + np.arange(3)).reshape(-1)

    def to_sparse(self, n_dofs: int) -> sp.csr_matrix:
        rows, cols = np.meshgrid(self.dofs, self.dofs, indexing="ij")
        return sp.csr_matrix((self.hessian.ravel(), (rows.ravel(), cols.ravel())), shape=(n_dofs, n_dofs))


def project_psd(matrix: np.ndarray) -> np.ndarray:
    """
    Clamp negative eigenvalues of a symmetric matrix to zero.
    """
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (matrix + matrix.T))
    if eigenvalues.min() >= 0:
        return matrix
    return (eigenvectors * np.maximum(eigenvalues, 0.0)) @ eigenvectors.T


def barrier_energy(constraints: ConstraintSet, kappa: float) -> float:
    return kappa * sum(barrier(d, constraints.d0) for d in constraints.distances)


def _pair_stencils(surface: EmbeddedSurface, constraints: ConstraintSet):
    for vertex, triangle in constraints.vt_pairs:
        yield np.concatenate(([vertex], surface.triangles[triangle])), point_triangle_derivatives
    for first, second in constraints.ee_pairs:
        yield np.concatenate((surface.edges[first], surface.edges[second])), edge_edge_derivatives


def barrier_terms(
    surface: EmbeddedSurface, x: np.ndarray, constraints: ConstraintSet, kappa: float
) -> BarrierBlocks:
    """
    kappa * sum_k b(d_k) with its gradient and PSD-projected Hessian, pulled back through W.
    """
    s = surface.positions(x)
    n_dofs = np.asarray(x).size
    d0 = constraints.d0
    surface_gradient = np.zeros(3 * surface.n_vertices)
    rows, cols, values = [], [], []
    touched = []
    energy = 0.0
    for stencil, derivatives in _pair_stencils(surface, constraints):
        d, grad_d, hess_d = derivatives(s[stencil])
        if d <= 0:
            raise BarrierDomainError(d)
        b1 = barrier_derivative(d, d0)
        b2 = barrier_second_derivative(d, d0)
        energy += kappa * barrier(d, d0)
        local_dofs = (3 * stencil[:, None] + np.arange(3)).reshape(-1)
        np.add.at(surface_gradient, local_dofs, kappa * b1 * grad_d)
        hessian = project_psd(kappa * (b2 * np.outer(grad_d, grad_d) + b1 * hess_d))
        r, c = np.meshgrid(local_dofs, local_dofs, indexing="ij")
        rows.append(r.ravel())
        cols.append(c.ravel())
        values.append(hessian.ravel())
        touched.append(stencil)

    if not touched:
        return BarrierBlocks(
            energy=0.0,
            gradient=np.zeros(n_dofs),
            vertices=np.empty(0, dtype=np.int64),
            hessian=np.zeros((0, 0)),
            kappa=kappa,
        )

    W = surface.expanded_weights()
    surface_hessian = sp.csr_matrix(
        (np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))),
        shape=(3 * surface.n_vertices, 3 * surface.n_vertices),
    )
    pulled = (W.T @ surface_hessian @ W).tocsr()

    weights = surface.weights[np.unique(np.concatenate(touched))]
    vertices = np.unique(weights.indices[weights.data != 0])
    dofs = (3 * vertices[:, None] + np.arange(3)).reshape(-1)
    block = pulled[dofs][:, dofs].toarray()
    return BarrierBlocks(
        energy=energy,
        gradient=surface.pull_back(surface_gradient),
        vertices=vertices,
        hessian=0.5 * (block + block.T),
        kappa=kappa,
    )
