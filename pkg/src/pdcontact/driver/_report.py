#!/usr/bin/env python
# -*- coding: UTF-8 -*-

import csv
from collections.abc import Iterable
from pathlib import Path
from typing import IO

from pydantic import BaseModel

FRAME_COLUMNS = (
    "frame",
    "iters",
    "ipc_ms",
    "gstep_ms",
    "ccd_ms",
    "ls_ms",
    "misc_ms",
    "total_ms",
    "n_c_peak",
    "min_dist",
    "energy",
    "kappa",
    "cg_iters",
    "stalled",
)

BENCHMARK_COLUMNS = (
    "backend",
    "n1",
    "n2",
    "ipc_ms",
    "gstep_ms",
    "ccd_ms",
    "ls_ms",
    "misc_ms",
    "total_ms",
    "mean_cg_iters",
    "n_c_peak",
)


class FrameReport(BaseModel):
    frame: int
    iterations: int
    ipc_ms: float
    gstep_ms: float
    ccd_ms: float
    ls_ms: float
    misc_ms: float
    total_ms: float
    energy: float
    min_distance: float
    n_c_peak: int
    kappa: float
    cg_iterations: int = 0
    stalled: bool = False

    def row(self) -> dict[str, object]:
        return {
            "frame": self.frame,
            "iters": self.iterations,
            "ipc_ms": f"{self.ipc_ms:.3f}",
            "gstep_ms": f"{self.gstep_ms:.3f}",
            "ccd_ms": f"{self.ccd_ms:.3f}",
            "ls_ms": f"{self.ls_ms:.3f}",
            "misc_ms": f"{self.misc_ms:.3f}",
            "total_ms": f"{self.total_ms:.3f}",
            "n_c_peak": self.n_c_peak,
            "min_dist": f"{self.min_distance:.9g}",
            "energy": f"{self.energy:.12g}",
            "kappa": f"{self.kappa:.6g}",
            "cg_iters": self.cg_iterations,
            "stalled": int(self.stalled),
        }


class BenchmarkRow(BaseModel):
    backend: str
    n1: int
    n2: int
    ipc_ms: float
    gstep_ms: float
    ccd_ms: float
    ls_ms: float
    misc_ms: float
    total_ms: float
    mean_cg_iters: float
    n_c_peak: int

    @staticmethod
    def summarize(backend: str, n1: int, n2: int, reports: list[FrameReport]) -> "BenchmarkRow":
        """
        Per-frame means of the timing categories over a run.
        """
        count = max(len(reports), 1)

        def mean(name: str) -> float:
            return sum(getattr(report, name) for report in reports) / count

        return BenchmarkRow(
            backend=backend,
            n1=n1,
            n2=n2,
            ipc_ms=mean("ipc_ms"),
            gstep_ms=mean("gstep_ms"),
            ccd_ms=mean("ccd_ms"),
            ls_ms=mean("ls_ms"),
            misc_ms=mean("misc_ms"),
            total_ms=mean("total_ms"),
            mean_cg_iters=mean("cg_iterations"),
            n_c_peak=max((report.n_c_peak for report in reports), default=0),
        )


def frame_writer(fp: IO[str]) -> csv.DictWriter:
    writer = csv.DictWriter(fp, fieldnames=FRAME_COLUMNS)
    writer.writeheader()
    return writer


def write_benchmark(rows: Iterable[BenchmarkRow], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=BENCHMARK_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.model_dump())
