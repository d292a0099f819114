#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import math

from ..common.errors import BarrierDomainError


def barrier(d: float, d0: float) -> float:
    """
    Clamped log barrier b(d) = -(d - d0)^2 ln(d / d0) on (0, d0), zero beyond.
    """
    if d <= 0:
        raise BarrierDomainError(d)
    if d >= d0:
        return 0.0
    return -((d - d0) ** 2) * math.log(d / d0)


def barrier_derivative(d: float, d0: float) -> float:
    if d <= 0:
        raise BarrierDomainError(d)
    if d >= d0:
        return 0.0
    return -2.0 * (d - d0) * math.log(d / d0) - (d - d0) ** 2 / d


def barrier_second_derivative(d: float, d0: float) -> float:
    if d <= 0:
        raise BarrierDomainError(d)
    if d >= d0:
        return 0.0
    return -2.0 * math.log(d / d0) - 4.0 * (d - d0) / d + (d - d0) ** 2 / d**2
