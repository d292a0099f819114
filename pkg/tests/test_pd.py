#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import numpy as np
import pytest
import scipy.sparse.linalg as spla

from pdcontact.actuation import ActuationFrame, elastic_energy, local_step
from pdcontact.common.errors import FactorizationError
from pdcontact.pd import CholeskyFactor, assemble_H, pd_gradient, pd_rhs, solve_collision_free

from .conftest import box_mesh


def _random_frame(n_elements: int, rng: np.random.Generator) -> ActuationFrame:
    S = rng.normal(scale=0.1, size=(n_elements, 3, 3))
    return ActuationFrame(np.eye(3) + 0.5 * (S + S.transpose(0, 2, 1)))


def test_H_is_symmetric_positive_definite(box):
    system = assemble_H(box, mu=2.0)
    H = system.H.toarray()
    np.testing.assert_allclose(H, H.T, atol=1e-12)
    assert np.linalg.eigvalsh(H).min() > 0
    assert system.n_free == 3 * (box.n_vertices - box.fixed.size)


def test_H_is_factorized_once_per_mesh(box):
    before = CholeskyFactor.factorizations
    system = assemble_H(box)
    rng = np.random.default_rng(5)
    for _ in range(3):
        solve_collision_free(system, rng.normal(size=system.n_free))
    assert CholeskyFactor.factorizations == before + 1


def test_collision_free_solve_matches_sparse_solve(box):
    system = assemble_H(box)
    rhs = np.random.default_rng(6).normal(size=system.n_free)
    np.testing.assert_allclose(
        solve_collision_free(system, rhs), spla.spsolve(system.H.tocsc(), rhs), rtol=1e-10, atol=1e-12
    )


def test_block_solve(box):
    system = assemble_H(box)
    rhs = np.random.default_rng(7).normal(size=(system.n_free, 4))
    solved = system.factor.solve(rhs)
    np.testing.assert_allclose(system.H @ solved, rhs, atol=1e-9)


def test_missing_dirichlet_set_is_singular():
    with pytest.raises(FactorizationError):
        assemble_H(box_mesh(fixed_face=False))


def test_identity_actuation_rest_is_a_fixed_point(box):
    system = assemble_H(box)
    frame = ActuationFrame.identity(box.n_elements)
    projections = local_step(box, box.rest_state, frame)
    x_free = solve_collision_free(system, pd_rhs(system, projections))
    np.testing.assert_allclose(system.expand(x_free), box.rest_state, atol=1e-12)
    np.testing.assert_allclose(pd_gradient(system, box.rest_state, projections), 0.0, atol=1e-12)


def test_global_step_minimizes_quadratic(box):
    rng = np.random.default_rng(8)
    system = assemble_H(box)
    frame = _random_frame(box.n_elements, rng)
    x = box.rest_state + system.expand_step(rng.normal(scale=0.05, size=system.n_free))
    projections = local_step(box, x, frame)
    x_next = system.expand(solve_collision_free(system, pd_rhs(system, projections)))
    np.testing.assert_allclose(pd_gradient(system, x_next, projections), 0.0, atol=1e-9)


def test_elastic_gradient_matches_finite_differences(box):
    rng = np.random.default_rng(9)
    system = assemble_H(box, mu=1.5)
    frame = _random_frame(box.n_elements, rng)
    eps = 1e-6
    for _ in range(10):
        x = box.rest_state + system.expand_step(rng.normal(scale=0.05, size=system.n_free))
        gradient = pd_gradient(system, x, local_step(box, x, frame))
        fd = np.empty(system.n_free)
        for k, dof in enumerate(system.free):
            step = np.zeros_like(x)
            step[dof] = eps
            fd[k] = (elastic_energy(box, x + step, frame, 1.5) - elastic_energy(box, x - step, frame, 1.5)) / (2 * eps)
        assert np.linalg.norm(fd - gradient) / np.linalg.norm(gradient) < 1e-4
