#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import time
from collections.abc import Callable

import numpy as np
import scipy.sparse as sp
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..common import config, utils
from ..common.errors import BarrierSupportError, FactorizationError, NotSPDError
from ..ipc import BarrierBlocks
from ..mesh import Permutation
from ..pd import CholeskyFactor, StiffnessSystem
from ._types import GlobalStepResult, SolverBackend, SolveStats, reduce_barrier, relative_residual

log = utils.get_logger(name="solvers", log_level=config.LOG_LEVEL, log_file_path=config.log_file("solvers"))


class SchurWorkspace:
    """
    Precomputed block elimination of H under the agnostic/aware permutation.

    Index sets are free-dof indices: ``idx1`` the collision-agnostic block,
    ``idx2`` the collision-aware block. ``sigma`` is the Schur complement
    H22 - H21 H11^-1 H12 and ``sigma_inv`` its explicit inverse.
    """

    system: StiffnessSystem
    permutation: Permutation
    idx1: np.ndarray
    idx2: np.ndarray
    aware_position: np.ndarray
    factor1: CholeskyFactor | None
    H12: sp.csc_matrix
    H21: sp.csr_matrix
    sigma: np.ndarray
    sigma_inv: np.ndarray

    def __init__(self, system: StiffnessSystem, permutation: Permutation) -> None:
        start = time.perf_counter()
        free_index = np.full(3 * system.mesh.n_vertices, -1, dtype=np.int64)
        free_index[system.free] = np.arange(system.n_free)
        ordered = free_index[permutation.dof_order]
        split = 3 * permutation.n1
        self.idx1 = ordered[:split][ordered[:split] >= 0]
        self.idx2 = ordered[split:][ordered[split:] >= 0]
        self.aware_position = np.full(system.n_free, -1, dtype=np.int64)
        self.aware_position[self.idx2] = np.arange(self.idx2.size)
        self.system = system
        self.permutation = permutation

        H = system.H
        rows1 = H[self.idx1]
        self.H12 = rows1[:, self.idx2].tocsc()
        self.H21 = self.H12.T.tocsr()
        self.factor1 = CholeskyFactor(rows1[:, self.idx1], name="H11") if self.idx1.size else None

        k = self.idx2.size
        sigma = H[self.idx2][:, self.idx2].toarray()
        if self.factor1 is not None:
            for lo in range(0, k, config.SCHUR_BLOCK_COLUMNS):
                hi = min(lo + config.SCHUR_BLOCK_COLUMNS, k)
                sigma[:, lo:hi] -= self.H21 @ self.factor1.solve(self.H12[:, lo:hi].toarray())
        self.sigma = 0.5 * (sigma + sigma.T)
        if k:
            try:
                chol = cho_factor(self.sigma)
            except LinAlgError as e:
                raise FactorizationError(f"Schur complement is not positive definite: {e}") from e
            sigma_inv = cho_solve(chol, np.eye(k))
            self.sigma_inv = 0.5 * (sigma_inv + sigma_inv.T)
        else:
            self.sigma_inv = np.zeros((0, 0))
        log.info(
            "schur workspace: %d agnostic dofs, %d aware dofs, built in %.1f ms",
            self.idx1.size,
            k,
            (time.perf_counter() - start) * 1e3,
        )

    @property
    def n_aware(self) -> int:
        return self.idx2.size

    def aware_support(self, dofs: np.ndarray) -> np.ndarray:
        """
        Positions of free dofs inside the aware block.
        """
        positions = self.aware_position[dofs]
        if np.any(positions < 0):
            raise BarrierSupportError(int(np.count_nonzero(positions < 0)))
        return positions

    def staged_solve(self, rhs: np.ndarray, apply_inverse: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """
        Solve with the block factorization [L1 0; H21 L1^-T I] diag(I, S) [L1^T L1^-1 H12; 0 I],
        where ``apply_inverse`` applies the inverse of the aware block S.
        """
        if self.n_aware == 0:
            return self.system.factor.solve(rhs)
        delta = np.empty_like(rhs)
        b1 = rhs[self.idx1]
        t1 = self.factor1.solve(b1) if self.factor1 is not None else b1
        x2 = apply_inverse(rhs[self.idx2] - self.H21 @ t1)
        delta[self.idx2] = x2
        if self.factor1 is not None:
            delta[self.idx1] = t1 - self.factor1.solve(self.H12 @ x2)
        return delta


def build_schur(system: StiffnessSystem, permutation: Permutation) -> SchurWorkspace:
    return SchurWorkspace(system, permutation)


def solve_schur(workspace: SchurWorkspace, barrier: BarrierBlocks | None, g: np.ndarray) -> GlobalStepResult:
    """
    Global step by refactorizing the dense aware block Sigma + B each iteration.
    """
    start = time.perf_counter()
    system = workspace.system
    dofs, block = reduce_barrier(system, barrier)
    positions = workspace.aware_support(dofs)
    sigma_hat = workspace.sigma.copy()
    sigma_hat[np.ix_(positions, positions)] += block
    if workspace.n_aware:
        try:
            chol = cho_factor(sigma_hat)
        except LinAlgError as e:
            raise NotSPDError(f"Sigma + B is not positive definite: {e}") from e
    delta_x = workspace.staged_solve(-np.asarray(g, dtype=np.float64), lambda y: cho_solve(chol, y))
    return GlobalStepResult(
        delta_x=delta_x,
        residual=relative_residual(system, dofs, block, g, delta_x),
        stats=SolveStats(
            backend=SolverBackend.SCHUR.value,
            wall_ms=(time.perf_counter() - start) * 1e3,
            n_c=0 if barrier is None else barrier.n_c,
        ),
    )
