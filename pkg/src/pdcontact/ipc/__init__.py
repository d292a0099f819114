#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from ._barrier import barrier, barrier_derivative, barrier_second_derivative
from ._broad_phase import SpatialHash
from ._ccd import ccd_max_step
from ._constraints import ConstraintSet, build_constraint_set, minimum_distance
from ._distance import (
    EdgeEdgeRegion,
    PointTriangleRegion,
    edge_edge_derivatives,
    edge_edge_distance,
    point_triangle_derivatives,
    point_triangle_distance,
)
from ._intersection import count_crossings, crossing_pairs, triangles_intersect
from ._kappa import adapt_kappa, init_kappa
from ._line_search import LineSearchResult, line_search
from ._penalty import PenaltyContacts, penalty_contacts, penalty_terms
from ._terms import BarrierBlocks, barrier_energy, barrier_terms, project_psd

__all__ = [
    "barrier",
    "barrier_derivative",
    "barrier_second_derivative",
    "SpatialHash",
    "PointTriangleRegion",
    "EdgeEdgeRegion",
    "point_triangle_distance",
    "edge_edge_distance",
    "point_triangle_derivatives",
    "edge_edge_derivatives",
    "ConstraintSet",
    "build_constraint_set",
    "minimum_distance",
    "BarrierBlocks",
    "barrier_terms",
    "barrier_energy",
    "project_psd",
    "ccd_max_step",
    "LineSearchResult",
    "line_search",
    "init_kappa",
    "adapt_kappa",
    "triangles_intersect",
    "crossing_pairs",
    "count_crossings",
    "PenaltyContacts",
    "penalty_contacts",
    "penalty_terms",
]
