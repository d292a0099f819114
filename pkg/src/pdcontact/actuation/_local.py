#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np

from ..common.errors import ActuationError, NonFiniteError
from ..mesh import TetMesh
from ._frame import ActuationFrame, ElementProjections


def extract_rotations(F: np.ndarray, A: np.ndarray) -> np.ndarray:
    """
    Rotation factors of the polar decompositions of the stacked products F_i A_i.

    A reflection is turned into a rotation by flipping the axis of the smallest
    singular value, which keeps det(R) = +1.
    """
    F = np.asarray(F, dtype=np.float64)
    if not np.all(np.isfinite(F)):
        raise NonFiniteError("deformation gradient")
    U, _, Vt = np.linalg.svd(F @ A)
    flip = np.linalg.det(U @ Vt) < 0
    U[flip, :, 2] *= -1.0
    return U @ Vt


def extract_rotation(F: np.ndarray, A: np.ndarray) -> np.ndarray:
    return extract_rotations(np.asarray(F)[None], np.asarray(A)[None])[0]


def local_step(mesh: TetMesh, x: np.ndarray, frame: ActuationFrame) -> ElementProjections:
    """
    Per-element projections p_i = flatten(R_i A_i) for the current state.
    """
    if frame.n_elements != mesh.n_elements:
        raise ActuationError(f"frame has {frame.n_elements} matrices for {mesh.n_elements} elements")
    rotations = extract_rotations(mesh.deformation_gradients(x), frame.matrices)
    targets = rotations @ frame.matrices
    return ElementProjections(targets.reshape(-1, 9), rotations)


def element_energies(mesh: TetMesh, x: np.ndarray, frame: ActuationFrame) -> np.ndarray:
    """
    Unweighted shape-targeting energies ||F_i - R_i A_i||_F^2.
    """
    F = mesh.deformation_gradients(x)
    projections = local_step(mesh, x, frame)
    return ((F.reshape(-1, 9) - projections.p) ** 2).sum(axis=1)


def elastic_energy(mesh: TetMesh, x: np.ndarray, frame: ActuationFrame, mu: float = 1.0) -> float:
    """
    E(x) = 1/2 mu sum_i w_i ||F_i - R_i A_i||_F^2, whose gradient is H x - pd_rhs.
    """
    return 0.5 * mu * float(mesh.volumes @ element_energies(mesh, x, frame))
