#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import logging

from . import utils

# ipc stiffness
KAPPA_SCALE = utils.get_env_float("KAPPA_SCALE", 1e-3)
KAPPA_TRIGGER = utils.get_env_float("KAPPA_TRIGGER", 1e-2)
KAPPA_GROWTH = utils.get_env_float("KAPPA_GROWTH", 2.0)
KAPPA_CAP = utils.get_env_float("KAPPA_CAP", 1e6)

# ccd
CCD_SLACK = utils.get_env_float("CCD_SLACK", 0.9)
CCD_MAX_ADVANCEMENTS = utils.get_env_int("CCD_MAX_ADVANCEMENTS", 64)
CCD_MIN_SEPARATION = utils.get_env_float("CCD_MIN_SEPARATION", 0.1)

# penalty springs
PENALTY_SCALE = utils.get_env_float("PENALTY_SCALE", 1e3)
PENALTY_SEARCH_SCALE = utils.get_env_float("PENALTY_SEARCH_SCALE", 4.0)

# line search
LINE_SEARCH_MAX_HALVINGS = utils.get_env_int("LINE_SEARCH_MAX_HALVINGS", 30)

# solvers
DENSE_GUARD_DOFS = utils.get_env_int("DENSE_GUARD_DOFS", 5000)
WOODBURY_EPSILON = utils.get_env_float("WOODBURY_EPSILON", 1e-8)
SCHUR_BLOCK_COLUMNS = utils.get_env_int("SCHUR_BLOCK_COLUMNS", 256)

# basic config
LOG_DIR = utils.get_env("LOG_DIR")
LOG_LEVEL = utils.get_env("LOG_LEVEL", logging.INFO)


def log_file(name: str) -> str | None:
    """
    Log file path for a logger, None when file logging is disabled.
    """
    return f"{LOG_DIR}/{name}.log" if LOG_DIR else None
