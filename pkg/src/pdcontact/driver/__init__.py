#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from ._generate import SceneKind, generate_scene
from ._report import BenchmarkRow, FrameReport
from ._scene import SceneConfig, load_scene_config, save_scene_config
from ._simulator import Simulator, run_benchmark, run_sequence

__all__ = [
    "SceneConfig",
    "load_scene_config",
    "save_scene_config",
    "FrameReport",
    "BenchmarkRow",
    "Simulator",
    "run_sequence",
    "run_benchmark",
    "SceneKind",
    "generate_scene",
]
