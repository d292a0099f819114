#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import time
from collections.abc import Callable
from pathlib import Path

import numpy as np

from ..actuation import ActuationFrame, elastic_energy, load_actuation, local_step
from ..common import config, utils
from ..common.errors import ActuationError, IntersectionError, LineSearchStallError
from ..ipc import (
    BarrierBlocks,
    adapt_kappa,
    barrier_energy,
    barrier_terms,
    build_constraint_set,
    ccd_max_step,
    count_crossings,
    init_kappa,
    line_search,
    minimum_distance,
    penalty_contacts,
    penalty_terms,
)
from ..mesh import build_embedding, load_surface, load_tet_mesh, partition_permutation, save_surface
from ..pd import assemble_H, pd_gradient
from ..solvers import SolverBackend, build_schur, solve_global_step
from ._report import BenchmarkRow, FrameReport, frame_writer, write_benchmark
from ._scene import SceneConfig

log = utils.get_logger(name="driver", log_level=config.LOG_LEVEL, log_file_path=config.log_file("driver"))

TIMING_CATEGORIES = ("ipc", "gstep", "ccd", "ls")


class Simulator:
    """
    Quasi-static PD solver with barrier contact for one scene.

    Everything that depends only on the rest configuration (H and its factor, the
    embedding, the permutation and the Schur workspace) is built once here.
    """

    def __init__(self, cfg: SceneConfig) -> None:
        self.cfg = cfg
        self.backend = cfg.backend
        self.mesh = load_tet_mesh(cfg.mesh)
        vertices, triangles = load_surface(cfg.surface)
        self.surface = build_embedding(self.mesh, vertices, triangles)
        self.frames = load_actuation(cfg.actuation)
        for index, frame in enumerate(self.frames):
            if frame.n_elements != self.mesh.n_elements:
                raise ActuationError(
                    f"frame {index} has {frame.n_elements} matrices for {self.mesh.n_elements} elements"
                )
        self.system = assemble_H(self.mesh, cfg.mu)
        self.permutation = partition_permutation(self.mesh, self.surface)
        self.workspace = (
            build_schur(self.system, self.permutation)
            if self.backend in (SolverBackend.SCHUR, SolverBackend.WOODBURY, SolverBackend.PENALTY)
            else None
        )
        self.d0 = cfg.d0
        self.tol_x = cfg.tol_x if cfg.tol_x is not None else 1e-4 * self.mesh.bbox_diagonal
        self.kappa_initial = init_kappa(self.mesh, cfg.mu, cfg.d0, cfg.kappa_scale)
        self.kappa = self.kappa_initial
        self.penalty_stiffness = config.PENALTY_SCALE * cfg.mu * self.system.unit_diagonal_mean()
        rest_edges = self.surface.rest_vertices[self.surface.edges]
        self.penalty_radius = config.PENALTY_SEARCH_SCALE * float(
            np.linalg.norm(rest_edges[:, 1] - rest_edges[:, 0], axis=1).mean()
        )
        log.info(
            "scene ready: backend=%s n=%d n1=%d n2=%d surface=%d triangles, d0=%.3e tol_x=%.3e kappa=%.3e",
            self.backend.value,
            self.mesh.n_vertices,
            self.surface.n1,
            self.surface.n2,
            self.surface.triangles.shape[0],
            self.d0,
            self.tol_x,
            self.kappa,
        )

    @property
    def collision_aware(self) -> bool:
        """
        Whether contact goes through the barrier with CCD and line search.
        """
        return self.backend not in (SolverBackend.NONE, SolverBackend.PENALTY)

    @property
    def penalty(self) -> bool:
        return self.backend is SolverBackend.PENALTY

    def penalty_blocks(self, x: np.ndarray) -> BarrierBlocks:
        contacts = penalty_contacts(self.surface, self.surface.positions(x), self.d0, self.penalty_radius)
        return penalty_terms(self.surface, x, contacts, self.penalty_stiffness)

    def frame(self, index: int) -> ActuationFrame:
        """
        Actuation of frame `index`; indices past the end hold the last frame.
        """
        return self.frames[min(index, len(self.frames) - 1)]

    def total_energy(self, x: np.ndarray, frame: ActuationFrame, kappa: float | None = None) -> float:
        """
        Elastic energy plus the barrier (or penalty spring) energy of freshly detected contacts.
        """
        energy = elastic_energy(self.mesh, x, frame, self.cfg.mu)
        if self.penalty:
            return energy + self.penalty_blocks(x).energy
        if not self.collision_aware:
            return energy
        constraints = build_constraint_set(self.surface, self.surface.positions(x), self.d0)
        return energy + barrier_energy(constraints, self.kappa if kappa is None else kappa)

    def check_intersection_free(self, x: np.ndarray) -> float:
        s = self.surface.positions(x)
        distance = minimum_distance(self.surface, s, self.d0)
        if distance <= 0 or count_crossings(self.surface, s):
            raise IntersectionError(min(distance, 0.0))
        return distance

    def simulate_frame(
        self,
        x: np.ndarray,
        frame: ActuationFrame,
        index: int = 0,
        on_iterate: Callable[[np.ndarray], None] | None = None,
    ) -> tuple[np.ndarray, FrameReport]:
        """
        Iterate local step, barrier assembly, global solve, CCD and line search until
        the step drops below tol_x or max_iters is reached. Starts from `x`.

        `on_iterate` receives every accepted state.
        """
        stopwatch = utils.Stopwatch()
        start = time.perf_counter()
        x = np.array(x, dtype=np.float64)
        if self.collision_aware:
            with stopwatch.measure("ipc"):
                self.check_intersection_free(x)

        iterations = 0
        n_c_peak = 0
        cg_iterations = 0
        stalled = False
        barrier = None
        while iterations < self.cfg.max_iters:
            iterations += 1
            projections = local_step(self.mesh, x, frame)
            g = pd_gradient(self.system, x, projections)
            if self.collision_aware:
                with stopwatch.measure("ipc"):
                    constraints = build_constraint_set(self.surface, self.surface.positions(x), self.d0)
                    barrier = barrier_terms(self.surface, x, constraints, self.kappa)
                    g = g + self.system.restrict(barrier.gradient)
            elif self.penalty:
                with stopwatch.measure("ipc"):
                    barrier = self.penalty_blocks(x)
                    g = g + self.system.restrict(barrier.gradient)

            with stopwatch.measure("gstep"):
                result = solve_global_step(self.backend, self.system, self.workspace, barrier, g)
            cg_iterations += result.stats.iterations
            n_c_peak = max(n_c_peak, result.stats.n_c)
            step_size = float(np.abs(result.delta_x).max(initial=0.0))
            if step_size < self.tol_x:
                log.debug("frame %d iteration %d: converged, |dx|=%.3e", index, iterations, step_size)
                break

            delta_x = self.system.expand_step(result.delta_x)
            if not self.collision_aware:
                x = x + delta_x
                log.debug("frame %d iteration %d: |dx|=%.3e", index, iterations, step_size)
                if on_iterate is not None:
                    on_iterate(x)
                continue

            with stopwatch.measure("ccd"):
                alpha_max = ccd_max_step(self.surface, x, delta_x)
            with stopwatch.measure("ls"):
                try:
                    searched = line_search(
                        x,
                        delta_x,
                        alpha_max,
                        lambda y: self.total_energy(y, frame),
                        self.system.expand_step(g),
                        start_energy=elastic_energy(self.mesh, x, frame, self.cfg.mu) + barrier.energy,
                    )
                except LineSearchStallError as e:
                    log.warning("frame %d iteration %d: %s, keeping the last accepted state", index, iterations, e)
                    stalled = True
                    break
            x = x + searched.alpha * delta_x
            if on_iterate is not None:
                on_iterate(x)

            with stopwatch.measure("ipc"):
                distance = minimum_distance(self.surface, self.surface.positions(x), self.d0)
            kappa = adapt_kappa(self.kappa, [distance], self.d0, self.kappa_initial)
            if kappa != self.kappa:
                log.info("frame %d: min distance %.3e, kappa %.3e -> %.3e", index, distance, self.kappa, kappa)
                self.kappa = kappa
            log.debug(
                "frame %d iteration %d: |C|=%d n_c=%d alpha_max=%.3e alpha=%.3e |alpha dx|=%.3e",
                index,
                iterations,
                len(constraints),
                result.stats.n_c,
                alpha_max,
                searched.alpha,
                searched.alpha * step_size,
            )
            if searched.alpha * step_size < self.tol_x:
                log.debug("frame %d iteration %d: converged", index, iterations)
                break
        else:
            log.warning("frame %d stopped at max_iters=%d", index, self.cfg.max_iters)

        s = self.surface.positions(x)
        distance = minimum_distance(self.surface, s, self.d0)
        energy = self.total_energy(x, frame)
        if not self.collision_aware:
            crossings = count_crossings(self.surface, s)
            if crossings:
                log.info("frame %d: %d crossing triangle pairs without collision handling", index, crossings)

        total = (time.perf_counter() - start) * 1e3
        timings = {category: stopwatch.get(category) for category in TIMING_CATEGORIES}
        report = FrameReport(
            frame=index,
            iterations=iterations,
            ipc_ms=timings["ipc"],
            gstep_ms=timings["gstep"],
            ccd_ms=timings["ccd"],
            ls_ms=timings["ls"],
            misc_ms=max(total - sum(timings.values()), 0.0),
            total_ms=total,
            energy=energy,
            min_distance=distance,
            n_c_peak=n_c_peak,
            kappa=self.kappa,
            cg_iterations=cg_iterations,
            stalled=stalled,
        )
        log.info(
            "frame %d: %d iterations, energy %.6e, min distance %.3e, n_c peak %d, %.1f ms",
            index,
            iterations,
            energy,
            distance,
            n_c_peak,
            total,
        )
        return x, report


def run_sequence(cfg: SceneConfig, simulator: Simulator | None = None) -> list[FrameReport]:
    """
    Simulate every frame, warm-starting each from the previous equilibrium, and write
    one OBJ per frame plus ``frames.csv`` into the output directory.
    """
    simulator = Simulator(cfg) if simulator is None else simulator
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    n_frames = cfg.frames or len(simulator.frames)
    x = simulator.mesh.rest_state
    reports: list[FrameReport] = []
    with open(out / "frames.csv", "w", encoding="utf-8", newline="") as fp:
        writer = frame_writer(fp)
        for index in range(n_frames):
            x, report = simulator.simulate_frame(x, simulator.frame(index), index)
            save_surface(simulator.surface.positions(x), simulator.surface.triangles, out / f"frame_{index:04d}.obj")
            writer.writerow(report.row())
            fp.flush()
            reports.append(report)
    log.info("sequence of %d frames written to %s", n_frames, out)
    return reports


def run_benchmark(cfg: SceneConfig) -> list[BenchmarkRow]:
    """
    Run the sequence once per configuration (no collision, CG, Schur, Woodbury) and
    write per-frame means to ``benchmark.csv``.
    """
    rows = []
    out = Path(cfg.out)
    for backend in (SolverBackend.NONE, SolverBackend.CG, SolverBackend.SCHUR, SolverBackend.WOODBURY):
        run_cfg = cfg.model_copy(update={"backend": backend, "out": out / backend.value, "bench": False})
        simulator = Simulator(run_cfg)
        reports = run_sequence(run_cfg, simulator)
        row = BenchmarkRow.summarize(backend.value, simulator.surface.n1, simulator.surface.n2, reports)
        log.info(
            "benchmark %s: gstep %.1f ms, total %.1f ms, cg iterations %.1f, n_c peak %d",
            backend.value,
            row.gstep_ms,
            row.total_ms,
            row.mean_cg_iters,
            row.n_c_peak,
        )
        rows.append(row)
    out.mkdir(parents=True, exist_ok=True)
    write_benchmark(rows, out / "benchmark.csv")
    return rows
