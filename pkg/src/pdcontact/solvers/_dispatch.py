#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import time

import numpy as np

from ..ipc import BarrierBlocks
from ..pd import StiffnessSystem, solve_collision_free
from ._cg import solve_cg
from ._dense import solve_dense_reference
from ._schur import SchurWorkspace, solve_schur
from ._types import GlobalStepResult, SolverBackend, SolveStats, reduce_barrier, relative_residual
from ._woodbury import solve_woodbury


def solve_global_step(
    backend: SolverBackend,
    system: StiffnessSystem,
    workspace: SchurWorkspace | None,
    barrier: BarrierBlocks | None,
    g: np.ndarray,
) -> GlobalStepResult:
    """
    Solve (H + B) delta_x = -g on the free dofs with the chosen backend.

    The ``none`` backend ignores the barrier and returns the collision-free step;
    ``penalty`` solves its spring system through the Schur workspace.
    """
    match backend:
        case SolverBackend.NONE:
            start = time.perf_counter()
            delta_x = solve_collision_free(system, -np.asarray(g, dtype=np.float64))
            dofs, block = reduce_barrier(system, None)
            return GlobalStepResult(
                delta_x=delta_x,
                residual=relative_residual(system, dofs, block, g, delta_x),
                stats=SolveStats(backend=backend.value, wall_ms=(time.perf_counter() - start) * 1e3),
            )
        case SolverBackend.DENSE:
            return solve_dense_reference(system, barrier, g)
        case SolverBackend.CG:
            return solve_cg(system, barrier, g)
        case SolverBackend.SCHUR | SolverBackend.WOODBURY | SolverBackend.PENALTY if workspace is None:
            raise ValueError(f"backend {backend.value} needs a Schur workspace")
        case SolverBackend.SCHUR | SolverBackend.PENALTY:
            return solve_schur(workspace, barrier, g)
        case SolverBackend.WOODBURY:
            return solve_woodbury(workspace, barrier, g)
        case _:
            raise ValueError(f"unknown backend {backend}")
