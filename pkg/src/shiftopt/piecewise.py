"""Piecewise-linear envelopes of the reward and of squared deviations.

Both constructions use chords through consecutive integer supply values, so
the linearization is exact wherever the supply is integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .domain import RewardParams, reward

__all__ = [
    "ConcavePL",
    "ConvexPL",
    "LinearPiece",
    "concavify_reward",
    "convexify_sq_dev",
    "eval_pl",
]

# chords whose slopes differ by less than this are merged into one piece
_SLOPE_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class LinearPiece:
    slope: float
    intercept: float

    def __post_init__(self):
        if not (math.isfinite(self.slope) and math.isfinite(self.intercept)):
            raise ValueError("piece coefficients must be finite")

    def __call__(self, y: float) -> float:
        return self.slope * y + self.intercept


@dataclass(frozen=True)
class ConcavePL:
    """Concave piecewise-linear function: min over pieces, slopes decreasing."""

    pieces: tuple[LinearPiece, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("need at least one piece")
        slopes = [p.slope for p in self.pieces]
        for a, b in zip(slopes, slopes[1:]):
            if b >= a:
                raise ValueError("slopes must strictly decrease")

    def evaluate(self, y: float) -> float:
        return min(p(y) for p in self.pieces)


@dataclass(frozen=True)
class ConvexPL:
    """Convex piecewise-linear function: max over pieces, slopes increasing."""

    pieces: tuple[LinearPiece, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("need at least one piece")
        slopes = [p.slope for p in self.pieces]
        for a, b in zip(slopes, slopes[1:]):
            if b <= a:
                raise ValueError("slopes must strictly increase")

    def evaluate(self, y: float) -> float:
        return max(p(y) for p in self.pieces)


def _chords(values: list[float]) -> list[LinearPiece]:
    """Chords through the integer nodes (i, values[i]), merging equal slopes."""
    pieces: list[LinearPiece] = []
    for i in range(1, len(values)):
        slope = values[i] - values[i - 1]
        if pieces and abs(slope - pieces[-1].slope) < _SLOPE_MERGE_TOL:
            continue
        intercept = values[i - 1] - slope * (i - 1)
        pieces.append(LinearPiece(slope=slope, intercept=intercept))
    return pieces


def concavify_reward(p: RewardParams, y_max: int) -> ConcavePL:
    """Integer-exact concave chord envelope of the reward on [0, y_max]."""
    if y_max < 1:
        raise ValueError("y_max must be >= 1")
    if p.d == 0:
        return ConcavePL(pieces=(LinearPiece(slope=0.0, intercept=0.0),))
    values = [reward(float(y), p) for y in range(y_max + 1)]
    return ConcavePL(pieces=tuple(_chords(values)))


def convexify_sq_dev(target: float, y_max: int) -> ConvexPL:
    """Integer-exact convex chord envelope of (y - target)^2 on [0, y_max]."""
    if y_max < 1:
        raise ValueError("y_max must be >= 1")
    values = [(float(y) - target) ** 2 for y in range(y_max + 1)]
    return ConvexPL(pieces=tuple(_chords(values)))


def eval_pl(pl: ConcavePL | ConvexPL, y: float) -> float:
    """Evaluate a piecewise-linear envelope at y."""
    return pl.evaluate(y)
