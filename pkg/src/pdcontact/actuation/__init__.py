#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from ._frame import ActuationFrame, ElementProjection, ElementProjections, load_actuation, save_actuation
from ._local import elastic_energy, element_energies, extract_rotation, extract_rotations, local_step

__all__ = [
    "ActuationFrame",
    "ElementProjection",
    "ElementProjections",
    "load_actuation",
    "save_actuation",
    "extract_rotation",
    "extract_rotations",
    "local_step",
    "element_energies",
    "elastic_energy",
]
