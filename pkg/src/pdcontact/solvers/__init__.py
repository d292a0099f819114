#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from ._cg import solve_cg
from ._dense import assemble_dense, solve_dense_reference
from ._dispatch import solve_global_step
from ._schur import SchurWorkspace, build_schur, solve_schur
from ._types import GlobalStepResult, SolverBackend, SolveStats, reduce_barrier, relative_residual
from ._woodbury import solve_woodbury, woodbury_operator

__all__ = [
    "SolverBackend",
    "SolveStats",
    "GlobalStepResult",
    "reduce_barrier",
    "relative_residual",
    "assemble_dense",
    "solve_dense_reference",
    "solve_cg",
    "SchurWorkspace",
    "build_schur",
    "solve_schur",
    "solve_woodbury",
    "woodbury_operator",
    "solve_global_step",
]
