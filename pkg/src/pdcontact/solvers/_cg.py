#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import math
import time

import numpy as np

from ..common import config, utils
from ..ipc import BarrierBlocks
from ..pd import StiffnessSystem
from ._types import GlobalStepResult, SolverBackend, SolveStats, apply_system, reduce_barrier, relative_residual

log = utils.get_logger(name="solvers", log_level=config.LOG_LEVEL, log_file_path=config.log_file("solvers"))


def solve_cg(
    system: StiffnessSystem,
    barrier: BarrierBlocks | None,
    g: np.ndarray,
    tol: float = 1e-8,
    max_iter: int | None = None,
) -> GlobalStepResult:
    """
    Conjugate gradient on L^-1 (H + B) L^-T y = -L^-1 g with the prefactorized H = L L^T.

    The split system is iterated in the original variables: z = H^-1 r applies both
    triangular factors at once, and sqrt(r^T z) is the split residual ||L^-1 r||.
    """
    start = time.perf_counter()
    dofs, block = reduce_barrier(system, barrier)
    max_iter = max(1, int(10 * math.sqrt(system.n_free))) if max_iter is None else max_iter
    b = -np.asarray(g, dtype=np.float64)
    delta_x = np.zeros_like(b)
    r = b.copy()
    z = system.factor.solve(r)
    rz = float(r @ z)
    initial = math.sqrt(max(rz, 0.0))
    iterations = 0
    converged = initial == 0.0
    p = z.copy()
    while not converged and iterations < max_iter:
        Ap = apply_system(system, dofs, block, p)
        alpha = rz / float(p @ Ap)
        delta_x += alpha * p
        r -= alpha * Ap
        z = system.factor.solve(r)
        rz_next = float(r @ z)
        iterations += 1
        if math.sqrt(max(rz_next, 0.0)) <= tol * initial:
            converged = True
            break
        p = z + (rz_next / rz) * p
        rz = rz_next
    if not converged:
        log.warning("cg stopped after %d iterations without reaching tolerance %.1e", iterations, tol)
    return GlobalStepResult(
        delta_x=delta_x,
        residual=relative_residual(system, dofs, block, g, delta_x),
        stats=SolveStats(
            backend=SolverBackend.CG.value,
            wall_ms=(time.perf_counter() - start) * 1e3,
            n_c=0 if barrier is None else barrier.n_c,
            iterations=iterations,
            converged=converged,
        ),
    )
