"""The periodic fractional model and its season/time indexing.

Time ``t`` decomposes uniquely as ``t = i + p*m`` with season ``i`` in
``1..p``. Seasons are 1-based everywhere a caller can see them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

__all__ = [
    "ModelError",
    "PtvArfimaModel",
    "new_model",
    "season_of",
    "d_at_offset",
    "load_model",
]


class ModelError(ValueError):
    """Invalid model parameters."""


@dataclass(frozen=True)
class PtvArfimaModel:
    """Zero-mean process with ``(1 - B)^{d_i} X_{i+pm} = eps_{i+pm}``.

    Attributes:
        period: the period ``p >= 1``.
        d: memory parameter of each season, each in ``[0, 1/2)``.
        sigma2: noise variance of each season, each ``> 0``.
    """

    period: int
    d: tuple[float, ...]
    sigma2: tuple[float, ...]

    def __post_init__(self) -> None:
        p = self.period
        if isinstance(p, bool) or int(p) != p or p < 1:
            raise ModelError(f"period must be a positive integer, got {p!r}")
        object.__setattr__(self, "period", int(p))
        object.__setattr__(self, "d", tuple(float(v) for v in self.d))
        object.__setattr__(self, "sigma2", tuple(float(v) for v in self.sigma2))
        if len(self.d) != p or len(self.sigma2) != p:
            raise ModelError(
                f"dimension mismatch: period={p}, len(d)={len(self.d)}, "
                f"len(sigma2)={len(self.sigma2)}"
            )
        for i, di in enumerate(self.d, start=1):
            if not (math.isfinite(di) and 0.0 <= di < 0.5):
                raise ModelError(f"d[{i}]={di!r} outside [0, 1/2) (causality bound)")
        for i, s in enumerate(self.sigma2, start=1):
            if not (math.isfinite(s) and s > 0.0):
                raise ModelError(f"sigma2[{i}]={s!r} must be positive")

    def season_of(self, t: int) -> int:
        return season_of(t, self.period)

    def d_of(self, season: int) -> float:
        return self.d[self._slot(season)]

    def sigma2_of(self, season: int) -> float:
        return self.sigma2[self._slot(season)]

    def d_at_offset(self, season: int, offset: int) -> float:
        """Memory parameter of the season ``offset`` steps after ``season``."""
        return self.d_of(season_of(season + offset, self.period))

    def seasons(self) -> range:
        return range(1, self.period + 1)

    def _slot(self, season: int) -> int:
        if not 1 <= season <= self.period:
            raise ModelError(f"season {season} outside 1..{self.period}")
        return season - 1

    def to_dict(self) -> dict:
        return {"period": self.period, "d": list(self.d), "sigma2": list(self.sigma2)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "PtvArfimaModel":
        try:
            return cls(doc["period"], tuple(doc["d"]), tuple(doc["sigma2"]))
        except KeyError as exc:
            raise ModelError(f"model document lacks key {exc.args[0]!r}") from None
        except TypeError as exc:
            raise ModelError(f"malformed model document: {exc}") from None


def new_model(period: int, d: Sequence[float], sigma2: Sequence[float]) -> PtvArfimaModel:
    return PtvArfimaModel(period, tuple(d), tuple(sigma2))


def season_of(t: int, period: int) -> int:
    """The unique ``i`` in ``1..period`` with ``t == i (mod period)``; any integer ``t``."""
    return (int(t) - 1) % period + 1


def load_model(path: str | Path) -> PtvArfimaModel:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    return PtvArfimaModel.from_dict(doc)


def d_at_offset(model: PtvArfimaModel, season: int, offset: int) -> float:
    return model.d_at_offset(season, offset)
