#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import time

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..common import config
from ..common.errors import DimensionGuardError, NotSPDError
from ..ipc import BarrierBlocks
from ..pd import StiffnessSystem
from ._types import GlobalStepResult, SolverBackend, SolveStats, reduce_barrier, relative_residual


def assemble_dense(system: StiffnessSystem, barrier: BarrierBlocks | None) -> np.ndarray:
    """
    Dense H + B on the free dofs.
    """
    dofs, block = reduce_barrier(system, barrier)
    dense = system.H.toarray()
    dense[np.ix_(dofs, dofs)] += block
    return dense


def solve_dense_reference(system: StiffnessSystem, barrier: BarrierBlocks | None, g: np.ndarray) -> GlobalStepResult:
    start = time.perf_counter()
    if system.n_free > config.DENSE_GUARD_DOFS:
        raise DimensionGuardError(system.n_free, config.DENSE_GUARD_DOFS)
    dofs, block = reduce_barrier(system, barrier)
    try:
        factor = cho_factor(assemble_dense(system, barrier))
    except LinAlgError as e:
        raise NotSPDError(f"dense system is not positive definite: {e}") from e
    delta_x = -cho_solve(factor, g)
    return GlobalStepResult(
        delta_x=delta_x,
        residual=relative_residual(system, dofs, block, g, delta_x),
        stats=SolveStats(
            backend=SolverBackend.DENSE.value,
            wall_ms=(time.perf_counter() - start) * 1e3,
            n_c=0 if barrier is None else barrier.n_c,
        ),
    )
