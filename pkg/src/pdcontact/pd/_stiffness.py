#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np
import scipy.sparse as sp

from ..actuation import ElementProjection, ElementProjections
from ..common.errors import FactorizationError
from ..mesh import TetMesh
from ._cholesky import CholeskyFactor


class StiffnessSystem:
    """
    Constant PD system H = mu * sum_i w_i G_i^T G_i on the free dofs, prefactorized once.

    Fixed dofs are eliminated; they keep their rest positions and their coupling to
    the free dofs moves to the right-hand side.
    """

    mesh: TetMesh
    mu: float
    free: np.ndarray
    fixed: np.ndarray
    full: sp.csr_matrix
    H: sp.csr_matrix
    coupling: sp.csr_matrix
    factor: CholeskyFactor

    def __init__(self, mesh: TetMesh, mu: float = 1.0) -> None:
        if mesh.fixed.size == 0:
            raise FactorizationError("H is singular without fixed vertices (rigid translations are free)")
        G = mesh.gradient_operator()
        self.weights = mu * np.repeat(mesh.volumes, 9)
        full = (G.T @ sp.diags(self.weights) @ G).tocsr()
        self.full = ((full + full.T) * 0.5).tocsr()
        self.mesh = mesh
        self.mu = mu
        self.free = mesh.free_dofs
        self.fixed = mesh.fixed_dofs
        self.H = self.full[self.free][:, self.free].tocsr()
        self.coupling = self.full[self.free][:, self.fixed].tocsr()
        self.fixed_values = mesh.rest_state[self.fixed]
        self.factor = CholeskyFactor(self.H, name="H")

    @property
    def n_free(self) -> int:
        return self.free.size

    def restrict(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x)[self.free]

    def expand(self, x_free: np.ndarray) -> np.ndarray:
        """
        Full state from free dofs, with fixed dofs at their prescribed positions.
        """
        x = np.empty(3 * self.mesh.n_vertices)
        x[self.free] = x_free
        x[self.fixed] = self.fixed_values
        return x

    def expand_step(self, delta_free: np.ndarray) -> np.ndarray:
        step = np.zeros(3 * self.mesh.n_vertices)
        step[self.free] = delta_free
        return step

    def weighted_targets(self, projections: ElementProjections | list[ElementProjection]) -> np.ndarray:
        """
        Full-space sum_i w_i G_i^T p_i.
        """
        p = ElementProjections.from_list(projections).p.reshape(-1)
        return self.mesh.gradient_operator().T @ (self.weights * p)

    def unit_diagonal_mean(self) -> float:
        """
        Mean diagonal of sum_i w_i G_i^T G_i on the free dofs, without mu.
        """
        return float(self.H.diagonal().mean() / self.mu)


def assemble_H(mesh: TetMesh, mu: float = 1.0) -> StiffnessSystem:
    return StiffnessSystem(mesh, mu)


def pd_rhs(system: StiffnessSystem, projections: ElementProjections | list[ElementProjection]) -> np.ndarray:
    """
    Right-hand side of the global step on the free dofs, Dirichlet terms moved across.
    """
    return system.restrict(system.weighted_targets(projections)) - system.coupling @ system.fixed_values


def pd_gradient(
    system: StiffnessSystem, x: np.ndarray, projections: ElementProjections | list[ElementProjection]
) -> np.ndarray:
    """
    Elastic gradient sum_i w_i G_i^T (G_i x - p_i) on the free dofs.
    """
    return system.restrict(system.full @ np.asarray(x) - system.weighted_targets(projections))


def solve_collision_free(system: StiffnessSystem, rhs: np.ndarray) -> np.ndarray:
    """
    Collision-free global step H x = rhs by forward/backward substitution.
    """
    return system.factor.solve(rhs)
