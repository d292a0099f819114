#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import argparse
import sys
from pathlib import Path

from .common import config, utils
from .common.errors import PdContactError
from .driver import SceneConfig, SceneKind, generate_scene, load_scene_config, run_benchmark, run_sequence
from .solvers import SolverBackend

log = utils.get_logger(name="pdcontact", log_level=config.LOG_LEVEL, log_file_path=config.log_file("pdcontact"))


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdcontact", description="Quasi-static projective dynamics with IPC contact")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="run a scene")
    simulate.add_argument("--scene", type=Path, required=True, help="scene config JSON")
    simulate.add_argument("--solver", choices=[backend.value for backend in SolverBackend], help="global step backend")
    simulate.add_argument("--frames", type=int, help="number of frames, the last actuation frame is held")
    simulate.add_argument("--out", type=Path, help="output directory")
    simulate.add_argument("--bench", action="store_true", help="run every backend and write benchmark.csv")
    simulate.add_argument("--d0", type=float, help="barrier activation distance")
    simulate.add_argument("--kappa-scale", type=float, help="barrier stiffness scale c")
    simulate.add_argument("--tol", type=float, help="convergence tolerance on max |dx|")
    simulate.add_argument("--max-iters", type=int, help="outer iterations per frame")

    gen_scene = commands.add_parser("gen-scene", help="write a procedural scene")
    gen_scene.add_argument("--kind", choices=[kind.value for kind in SceneKind], required=True)
    gen_scene.add_argument("--res", type=int, default=1, help="cells per unit length")
    gen_scene.add_argument("--out", type=Path, required=True)
    gen_scene.add_argument("--frames", type=int, default=6)
    return parser


def simulate(args: argparse.Namespace) -> None:
    cfg = load_scene_config(args.scene)
    overrides = {
        "backend": SolverBackend(args.solver) if args.solver else None,
        "frames": args.frames,
        "out": args.out,
        "d0": args.d0,
        "kappa_scale": args.kappa_scale,
        "tol_x": args.tol,
        "max_iters": args.max_iters,
    }
    update = {key: value for key, value in overrides.items() if value is not None}
    if args.bench:
        update["bench"] = True
    cfg = SceneConfig.model_validate(cfg.model_copy(update=update).model_dump())
    if cfg.bench:
        run_benchmark(cfg)
        return
    reports = run_sequence(cfg)
    stalled = sum(report.stalled for report in reports)
    if stalled:
        log.warning("%d of %d frames stalled in the line search", stalled, len(reports))


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        match args.command:
            case "simulate":
                simulate(args)
            case "gen-scene":
                generate_scene(args.kind, args.res, args.out, args.frames)
    except (PdContactError, ValueError, OSError):
        log.error("%s failed", args.command, exc_info=True)
        return 1
    return 0


def run() -> None:
    sys.exit(main())
