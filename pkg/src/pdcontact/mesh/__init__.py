#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from ._partition import Permutation, partition_permutation
from ._surface import EmbeddedSurface, build_embedding, load_surface, save_surface
from ._tetmesh import TetMesh, load_tet_mesh, save_tet_mesh

__all__ = [
    "TetMesh",
    "EmbeddedSurface",
    "Permutation",
    "load_tet_mesh",
    "save_tet_mesh",
    "build_embedding",
    "load_surface",
    "save_surface",
    "partition_permutation",
]
