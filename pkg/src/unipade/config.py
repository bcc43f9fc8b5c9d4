"""Tolerances and run configuration shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace

from .errors import PreconditionError

__all__ = ["Tolerances", "RunConfig", "DEFAULT_TOLERANCES"]


@dataclass(frozen=True)
class Tolerances:
    tau_hankel: float = 1e-10
    tau_E: float = 1e-12
    tau_pole: float = 1e-12
    tau_root: float = 1e-7
    tau_verify: float = 1e-8
    # None means half the grid resolution of the sample in question
    tau_inclusion: float | None = None

    def __post_init__(self):
        for k, v in asdict(self).items():
            if v is not None and not v > 0:
                raise PreconditionError(f"tolerance {k} must be positive, got {v}")

    def to_json(self) -> dict:
        return asdict(self)

    def with_overrides(self, **kw) -> "Tolerances":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)
    fmt: str = "json"
    mode: str = "exact"

    def __post_init__(self):
        if self.seed < 0:
            raise PreconditionError("seed must be nonnegative")
        if self.fmt not in ("json", "csv", "table"):
            raise PreconditionError(f"unknown output format {self.fmt!r}")
