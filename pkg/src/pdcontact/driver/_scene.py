#!/usr/bin/env python
# -*- coding: UTF-8 -*-

from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from ..common.errors import SceneConfigError
from ..solvers import SolverBackend


class SceneConfig(BaseModel):
    """
    Inputs of one simulation run. Unknown keys are rejected.
    """

    model_config = ConfigDict(extra="forbid")

    mesh: Path
    surface: Path
    actuation: Path
    backend: SolverBackend = SolverBackend.WOODBURY
    d0: float
    kappa_scale: float | None = None
    mu: float = 1.0
    # None means 1e-4 of the rest bounding-box diagonal
    tol_x: float | None = None
    max_iters: int = 100
    out: Path = Path("out")
    frames: int | None = None
    bench: bool = False

    @field_validator("d0", "mu")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("must be positive")
        return value

    @field_validator("tol_x", "kappa_scale")
    @classmethod
    def _positive_or_unset(cls, value: float | None) -> float | None:
        if value is not None and not value > 0:
            raise ValueError("must be positive")
        return value

    @field_validator("max_iters", "frames")
    @classmethod
    def _at_least_one(cls, value: int | None) -> int | None:
        if value is not None and value < 1:
            raise ValueError("must be at least 1")
        return value

    def resolved(self, base: Path) -> "SceneConfig":
        """
        Copy with relative paths taken against `base`.
        """
        update = {
            name: base / getattr(self, name)
            for name in ("mesh", "surface", "actuation", "out")
            if not getattr(self, name).is_absolute()
        }
        return self.model_copy(update=update)


def load_scene_config(path: str | Path) -> SceneConfig:
    path = Path(path)
    try:
        cfg = SceneConfig.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise SceneConfigError(str(path), f"invalid scene config: {e}") from e
    return cfg.resolved(path.parent)


def save_scene_config(cfg: SceneConfig, path: str | Path) -> None:
    Path(path).write_text(cfg.model_dump_json(indent=2, exclude_none=True), encoding="utf-8")
