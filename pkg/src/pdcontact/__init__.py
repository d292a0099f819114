#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from .main import main, run

__all__ = [
    "run",
    "main",
]
