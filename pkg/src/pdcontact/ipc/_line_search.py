#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ..common import config
from ..common.errors import LineSearchStallError, NotDescentError


@dataclass(frozen=True)
class LineSearchResult:
    alpha: float
    energy: float
    halvings: int


def line_search(
    x: np.ndarray,
    delta_x: np.ndarray,
    alpha_max: float,
    energy: Callable[[np.ndarray], float],
    gradient: np.ndarray,
    start_energy: float | None = None,
) -> LineSearchResult:
    """
    Backtracking from alpha_max by halving until the energy decreases.
    """
    slope = float(np.dot(gradient, delta_x))
    if not slope < 0:
        raise NotDescentError(slope)
    current = energy(x) if start_energy is None else start_energy
    alpha = alpha_max
    for halvings in range(config.LINE_SEARCH_MAX_HALVINGS + 1):
        trial = energy(x + alpha * delta_x)
        if trial < current:
            return LineSearchResult(alpha=alpha, energy=trial, halvings=halvings)
        alpha *= 0.5
    raise LineSearchStallError(config.LINE_SEARCH_MAX_HALVINGS, current)
