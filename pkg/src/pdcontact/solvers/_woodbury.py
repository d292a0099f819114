#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import time
from collections.abc import Callable

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..common import config, utils
from ..common.errors import SingularUpdateError
from ..ipc import BarrierBlocks
from ._schur import SchurWorkspace
from ._types import GlobalStepResult, SolverBackend, SolveStats, reduce_barrier, relative_residual

log = utils.get_logger(name="solvers", log_level=config.LOG_LEVEL, log_file_path=config.log_file("solvers"))


def _spd_inverse(matrix: np.ndarray) -> np.ndarray:
    inverse = cho_solve(cho_factor(matrix), np.eye(matrix.shape[0]))
    return 0.5 * (inverse + inverse.T)


def _invert_update(block: np.ndarray) -> tuple[np.ndarray, float]:
    """
    Inverse of the barrier block, shifted by epsilon * mean diagonal when it is numerically singular.
    """
    k = block.shape[0]
    scale = float(np.trace(block)) / k
    floor = config.WOODBURY_EPSILON * scale
    if float(np.linalg.eigvalsh(block)[0]) > floor:
        try:
            return _spd_inverse(block), 0.0
        except LinAlgError:
            pass
    if not scale > 0:
        raise SingularUpdateError(f"barrier block of size {k} has non-positive trace {scale * k:.3e}")
    log.debug("barrier block of size %d is singular, shifting by %.3e", k, floor)
    try:
        return _spd_inverse(block + floor * np.eye(k)), floor
    except LinAlgError as e:
        raise SingularUpdateError(f"regularized barrier block of size {k} is still singular: {e}") from e


def woodbury_operator(
    sigma_inv: np.ndarray, positions: np.ndarray, block: np.ndarray
) -> tuple[Callable[[np.ndarray], np.ndarray], float]:
    """
    Apply (Sigma + U B U^T)^-1 = Sigma^-1 - Sigma^-1 U (B^-1 + U^T Sigma^-1 U)^-1 U^T Sigma^-1,
    U selecting `positions`. Returns the operator and the shift added to B, if any.
    """
    if positions.size == 0:
        return (lambda y: sigma_inv @ y), 0.0
    block_inv, regularization = _invert_update(block)
    try:
        capacitance_inv = _spd_inverse(block_inv + sigma_inv[np.ix_(positions, positions)])
    except LinAlgError as e:
        raise SingularUpdateError(f"capacitance matrix of size {positions.size} is singular: {e}") from e
    columns = sigma_inv[:, positions]

    def apply_inverse(y: np.ndarray) -> np.ndarray:
        u = sigma_inv @ y
        return u - columns @ (capacitance_inv @ u[positions])

    return apply_inverse, regularization


def solve_woodbury(workspace: SchurWorkspace, barrier: BarrierBlocks | None, g: np.ndarray) -> GlobalStepResult:
    """
    Global step reusing the precomputed Sigma^-1; only the small capacitance matrix is inverted.
    """
    start = time.perf_counter()
    system = workspace.system
    dofs, block = reduce_barrier(system, barrier)
    positions = workspace.aware_support(dofs)
    apply_inverse, regularization = woodbury_operator(workspace.sigma_inv, positions, block)
    delta_x = workspace.staged_solve(-np.asarray(g, dtype=np.float64), apply_inverse)
    return GlobalStepResult(
        delta_x=delta_x,
        residual=relative_residual(system, dofs, block, g, delta_x),
        stats=SolveStats(
            backend=SolverBackend.WOODBURY.value,
            wall_ms=(time.perf_counter() - start) * 1e3,
            n_c=0 if barrier is None else barrier.n_c,
            rank=int(positions.size),
            regularization=regularization,
        ),
    )
