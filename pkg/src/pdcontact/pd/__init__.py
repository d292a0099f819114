#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from ._cholesky import CholeskyFactor
from ._stiffness import (
    StiffnessSystem,
    assemble_H,
    pd_gradient,
    pd_rhs,
    solve_collision_free,
)

__all__ = [
    "CholeskyFactor",
    "StiffnessSystem",
    "assemble_H",
    "pd_rhs",
    "pd_gradient",
    "solve_collision_free",
]
