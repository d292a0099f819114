#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import logging
import os
import time
from collections.abc import Iterator
from contextlib import contextmanager
from logging.handlers import RotatingFileHandler
from typing import TypeVar

_T = TypeVar("_T")


def get_env(key: str, default: _T = "") -> _T | str:
    """
    Get an environment variable, return empty str if it doesn't exist.
    The optional second argument can specify an alternate default.
    """
    return os.getenv(key) or default


def get_env_float(key: str, default: float) -> float:
    """
    Get an environment variable as float, fall back to default if it doesn't exist.
    """
    value = get_env(key)
    return float(value) if value else default


def get_env_int(key: str, default: int) -> int:
    """
    Get an environment variable as int, fall back to default if it doesn't exist.
    """
    value = get_env(key)
    return int(value) if value else default


class Stopwatch:
    """
    Accumulates wall time per category, in milliseconds.
    """

    totals: dict[str, float]

    def __init__(self) -> None:
        self.totals = {}

    @contextmanager
    def measure(self, category: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.totals[category] = self.totals.get(category, 0.0) + (time.perf_counter() - start) * 1e3

    def get(self, category: str) -> float:
        return self.totals.get(category, 0.0)


def get_logger(name: str, log_level: int | str = logging.INFO, log_file_path: str | None = None) -> logging.Logger:
    logger = logging.getLogger(name)
    # There is already a handler, return directly to prevent adding duplicate handlers,
    # it will cause duplicate log output
    if logger.handlers:
        return logger
    logger.setLevel(log_level)
    # Console handler output formatter
    formatter = (
        "%(asctime)s.%(msecs)d 【%(name)s】 %(levelname)s %(process)d --- [%(threadName)s-%(thread)d] "
        "<%(pathname)s-line:%(lineno)d>: %(message)s"
    )
    date_format = "%Y-%m-%d %H:%M:%S"
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(logging.Formatter(fmt=formatter, datefmt=date_format))
    logger.addHandler(console_handler)
    # Close handler
    console_handler.close()

    # No need to create a file handler
    if log_file_path is None:
        return logger

    # Create directory first if it doesn't exist
    log_dir = os.path.dirname(log_file_path)
    if log_dir and not os.path.exists(log_dir):
        os.makedirs(log_dir, mode=0o700, exist_ok=True)
    # File handler settings
    file_handler = RotatingFileHandler(
        filename=log_file_path,
        mode="a+",
        maxBytes=64 * 1024 * 1024,
        backupCount=3,
        encoding="utf-8",
    )
    # File handler output formatter
    file_handler.setFormatter(logging.Formatter(fmt=formatter, datefmt=date_format))
    logger.addHandler(file_handler)
    # Close handler
    file_handler.close()
    return logger
