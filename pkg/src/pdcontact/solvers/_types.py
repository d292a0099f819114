#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..ipc import BarrierBlocks
from ..pd import StiffnessSystem


class SolverBackend(Enum):
    NONE = "none"
    CG = "cg"
    SCHUR = "schur"
    WOODBURY = "woodbury"
    DENSE = "dense"
    PENALTY = "penalty"


@dataclass(frozen=True)
class SolveStats:
    backend: str
    wall_ms: float
    n_c: int = 0
    iterations: int = 0
    rank: int = 0
    regularization: float = 0.0
    converged: bool = True


@dataclass(frozen=True)
class GlobalStepResult:
    delta_x: np.ndarray
    residual: float
    stats: SolveStats


def reduce_barrier(system: StiffnessSystem, barrier: BarrierBlocks | None) -> tuple[np.ndarray, np.ndarray]:
    """
    Barrier Hessian block restricted to free dofs, as (free dof indices, dense block).
    """
    if barrier is None or barrier.n_c == 0:
        return np.empty(0, dtype=np.int64), np.zeros((0, 0))
    free_index = np.full(3 * system.mesh.n_vertices, -1, dtype=np.int64)
    free_index[system.free] = np.arange(system.n_free)
    local = free_index[barrier.dofs]
    keep = local >= 0
    return local[keep], barrier.hessian[np.ix_(keep, keep)]


def apply_system(system: StiffnessSystem, dofs: np.ndarray, block: np.ndarray, v: np.ndarray) -> np.ndarray:
    """
    (H + B) v without forming H + B.
    """
    out = system.H @ v
    if dofs.size:
        out[dofs] += block @ v[dofs]
    return out


def relative_residual(
    system: StiffnessSystem, dofs: np.ndarray, block: np.ndarray, g: np.ndarray, delta_x: np.ndarray
) -> float:
    """
    ||(H + B) delta_x + g|| / ||g||, or the absolute residual when g vanishes.
    """
    residual = float(np.linalg.norm(apply_system(system, dofs, block, delta_x) + g))
    scale = float(np.linalg.norm(g))
    return residual / scale if scale > 0 else residual
