#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import csv
import json

import numpy as np
import pytest

from pdcontact import main
from pdcontact.actuation import ActuationFrame, save_actuation
from pdcontact.common import config
from pdcontact.common.errors import ActuationError, SceneConfigError
from pdcontact.driver import SceneConfig, Simulator, generate_scene, load_scene_config, run_sequence, save_scene_config
from pdcontact.driver._report import FRAME_COLUMNS
from pdcontact.ipc import count_crossings, minimum_distance
from pdcontact.mesh import load_surface
from pdcontact.solvers import SolverBackend


def _identity_scene(cfg: SceneConfig, tmp_path, **update) -> SceneConfig:
    simulator = Simulator(cfg)
    path = tmp_path / "identity.txt"
    save_actuation([ActuationFrame.identity(simulator.mesh.n_elements)], path)
    return cfg.model_copy(update={"actuation": path, "out": tmp_path / "out", **update})


@pytest.mark.parametrize("backend", list(SolverBackend))
def test_rest_state_is_quiescent(slab_scene, backend):
    simulator = Simulator(slab_scene.model_copy(update={"backend": backend}))
    rest = simulator.mesh.rest_state
    x, report = simulator.simulate_frame(rest, ActuationFrame.identity(simulator.mesh.n_elements))
    assert report.iterations == 1
    assert np.abs(x - rest).max() < 1e-10
    assert not report.stalled


def _run_frames(simulator: Simulator, on_iterate=None) -> list:
    x = simulator.mesh.rest_state
    reports = []
    for index in range(len(simulator.frames)):
        x, report = simulator.simulate_frame(x, simulator.frame(index), index, on_iterate=on_iterate)
        reports.append(report)
    return reports


def test_contact_frames_converge_intersection_free(slab_scene):
    simulator = Simulator(slab_scene.model_copy(update={"backend": SolverBackend.WOODBURY}))
    surface = simulator.surface

    def check(x: np.ndarray) -> None:
        s = surface.positions(x)
        assert count_crossings(surface, s) == 0
        assert minimum_distance(surface, s, simulator.d0) > 0

    reports = _run_frames(simulator, on_iterate=check)
    for report in reports:
        assert report.iterations < simulator.cfg.max_iters
        assert not report.stalled
        assert report.min_distance > 0
    assert max(report.n_c_peak for report in reports) > 0


def test_squeeze_closes_the_gap_monotonically(slab_scene, monkeypatch):
    monkeypatch.setattr(config, "KAPPA_TRIGGER", 0.0)
    simulator = Simulator(slab_scene.model_copy(update={"backend": SolverBackend.WOODBURY}))
    distances = [report.min_distance for report in _run_frames(simulator)]
    assert all(distance > 0 for distance in distances)
    assert np.isfinite(distances[-1])
    assert all(later <= earlier for earlier, later in zip(distances, distances[1:]))


def test_without_collision_handling_surfaces_cross(slab_scene):
    simulator = Simulator(slab_scene.model_copy(update={"backend": SolverBackend.NONE, "max_iters": 200}))
    x, _ = simulator.simulate_frame(simulator.mesh.rest_state, simulator.frame(len(simulator.frames) - 1))
    assert count_crossings(simulator.surface, simulator.surface.positions(x)) >= 1


def test_penalty_springs_reduce_crossings(slab_scene):
    crossings = {}
    for backend in (SolverBackend.NONE, SolverBackend.PENALTY):
        simulator = Simulator(slab_scene.model_copy(update={"backend": backend, "max_iters": 200}))
        x, _ = simulator.simulate_frame(simulator.mesh.rest_state, simulator.frame(len(simulator.frames) - 1))
        crossings[backend] = count_crossings(simulator.surface, simulator.surface.positions(x))
    assert crossings[SolverBackend.PENALTY] < crossings[SolverBackend.NONE]


def test_timings_add_up(slab_scene):
    simulator = Simulator(slab_scene.model_copy(update={"backend": SolverBackend.CG, "max_iters": 3}))
    _, report = simulator.simulate_frame(simulator.mesh.rest_state, simulator.frame(0))
    parts = report.ipc_ms + report.gstep_ms + report.ccd_ms + report.ls_ms + report.misc_ms
    assert parts == pytest.approx(report.total_ms)
    assert report.gstep_ms > 0


def test_frames_past_the_end_hold_the_last(bar_scene):
    simulator = Simulator(bar_scene)
    assert simulator.frame(len(simulator.frames) + 5) is simulator.frames[-1]


def test_sequence_writes_frames_and_report(bar_scene, tmp_path):
    cfg = _identity_scene(bar_scene, tmp_path, backend=SolverBackend.CG, frames=3)
    reports = run_sequence(cfg)
    assert [report.frame for report in reports] == [0, 1, 2]

    out = tmp_path / "out"
    rest_vertices, rest_triangles = load_surface(bar_scene.surface)
    for index in range(3):
        vertices, triangles = load_surface(out / f"frame_{index:04d}.obj")
        np.testing.assert_allclose(vertices, rest_vertices, atol=1e-10)
        np.testing.assert_array_equal(triangles, rest_triangles)
    with open(out / "frames.csv", encoding="utf-8") as fp:
        rows = list(csv.DictReader(fp))
    assert tuple(rows[0]) == FRAME_COLUMNS
    assert [int(row["iters"]) for row in rows] == [1, 1, 1]


def test_sequence_is_deterministic(bar_scene, tmp_path):
    outputs = []
    for run in ("a", "b"):
        cfg = bar_scene.model_copy(update={"backend": SolverBackend.WOODBURY, "frames": 1, "max_iters": 5})
        cfg = cfg.model_copy(update={"out": tmp_path / run})
        run_sequence(cfg)
        outputs.append((tmp_path / run / "frame_0000.obj").read_text(encoding="utf-8"))
    assert outputs[0] == outputs[1]


def test_actuation_must_match_elements(bar_scene, tmp_path):
    path = tmp_path / "short.txt"
    save_actuation([ActuationFrame.identity(3)], path)
    with pytest.raises(ActuationError, match="3 matrices"):
        Simulator(bar_scene.model_copy(update={"actuation": path}))


def test_scene_config_round_trip(bar_scene, tmp_path):
    cfg = bar_scene.model_copy(update={"kappa_scale": 0.01, "backend": SolverBackend.SCHUR})
    save_scene_config(cfg, tmp_path / "scene.json")
    assert load_scene_config(tmp_path / "scene.json") == cfg


def test_scene_config_resolves_relative_paths(tmp_path):
    (tmp_path / "scene.json").write_text(
        json.dumps({"mesh": "m.tet", "surface": "s.obj", "actuation": "a.txt", "d0": 0.001}), encoding="utf-8"
    )
    cfg = load_scene_config(tmp_path / "scene.json")
    assert cfg.mesh == tmp_path / "m.tet"
    assert cfg.out == tmp_path / "out"
    assert cfg.backend is SolverBackend.WOODBURY
    assert cfg.tol_x is None


@pytest.mark.parametrize(
    "content",
    [
        {"mesh": "m.tet", "surface": "s.obj", "actuation": "a.txt", "d0": 0.001, "unknown": 1},
        {"mesh": "m.tet", "surface": "s.obj", "actuation": "a.txt", "d0": -0.001},
        {"mesh": "m.tet", "surface": "s.obj", "actuation": "a.txt", "d0": 0.001, "max_iters": 0},
        {"mesh": "m.tet", "surface": "s.obj", "actuation": "a.txt", "d0": 0.001, "backend": "lu"},
        {"mesh": "m.tet", "surface": "s.obj", "d0": 0.001},
    ],
)
def test_invalid_scene_config(tmp_path, content):
    (tmp_path / "scene.json").write_text(json.dumps(content), encoding="utf-8")
    with pytest.raises(SceneConfigError):
        load_scene_config(tmp_path / "scene.json")


def test_slab_pinch_scene(slab_scene):
    simulator = Simulator(slab_scene)
    assert simulator.mesh.n_vertices <= 600
    assert simulator.surface.n2 <= 0.15 * simulator.surface.n1
    assert slab_scene.d0 == pytest.approx(1e-3)
    assert len(simulator.frames) == 4
    s = simulator.surface.positions(simulator.mesh.rest_state)
    assert minimum_distance(simulator.surface, s, slab_scene.d0) == np.inf
    assert count_crossings(simulator.surface, s) == 0


def test_bar_bend_scene(bar_scene):
    simulator = Simulator(bar_scene)
    s = simulator.surface.positions(simulator.mesh.rest_state)
    assert minimum_distance(simulator.surface, s, bar_scene.d0) > bar_scene.d0
    assert simulator.mesh.fixed.size > 0
    assert np.allclose(simulator.mesh.rest_positions[simulator.mesh.fixed, 0], 0.06)


@pytest.mark.parametrize("resolution", [0, 9])
def test_generate_scene_rejects_resolution(tmp_path, resolution):
    with pytest.raises(ValueError):
        generate_scene("bar_bend", resolution, tmp_path)


def test_cli(tmp_path):
    scene = tmp_path / "scene"
    assert main(["gen-scene", "--kind", "bar_bend", "--out", str(scene), "--frames", "2"]) == 0
    assert (scene / "scene.json").exists()
    out = tmp_path / "run"
    argv = ["simulate", "--scene", str(scene / "scene.json"), "--solver", "cg", "--frames", "1"]
    assert main([*argv, "--max-iters", "3", "--out", str(out)]) == 0
    assert (out / "frame_0000.obj").exists()
    assert (out / "frames.csv").exists()


def test_cli_failures(tmp_path):
    assert main(["simulate", "--scene", str(tmp_path / "missing.json")]) == 1
    scene = tmp_path / "scene"
    assert main(["gen-scene", "--kind", "bar_bend", "--out", str(scene)]) == 0
    assert main(["simulate", "--scene", str(scene / "scene.json"), "--d0", "-1"]) == 1
