#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from collections.abc import Iterable

import numpy as np

from ..common import config
from ..mesh import TetMesh


def init_kappa(mesh: TetMesh, mu: float, d0: float, scale: float | None = None) -> float:
    """
    kappa = c * mu * mean(diag(sum_i w_i G_i^T G_i)) * d0^2 over the free dofs.
    """
    scale = config.KAPPA_SCALE if scale is None else scale
    per_vertex = np.zeros(mesh.n_vertices)
    np.add.at(
        per_vertex,
        mesh.tets.ravel(),
        (mesh.volumes[:, None] * (mesh.grad_coeffs**2).sum(axis=2)).ravel(),
    )
    free = np.ones(mesh.n_vertices, dtype=bool)
    free[mesh.fixed] = False
    return scale * mu * float(per_vertex[free].mean()) * d0**2


def adapt_kappa(kappa: float, min_distances: Iterable[float], d0: float, kappa_initial: float) -> float:
    """
    Grow kappa once for every recorded minimum distance below the trigger, up to the cap.
    """
    trigger = config.KAPPA_TRIGGER * d0
    cap = config.KAPPA_CAP * kappa_initial
    for distance in min_distances:
        if distance < trigger:
            kappa = min(kappa * config.KAPPA_GROWTH, cap)
    return kappa
