"""The six lattice bearings of the floor-tag grid.

Tags sit on a triangular lattice, so every tag has at most six equidistant
neighbors. Bearings are compass-named with +y as north; the lattice is
oriented so that no neighbor ever lies due east or west.
"""
from __future__ import annotations

import math
from enum import Enum


class HexDirection(Enum):
    """One of the six neighbor bearings, indexed clockwise from north."""

    N = 0
    NE = 1
    SE = 2
    S = 3
    SW = 4
    NW = 5

    @property
    def index(self) -> int:
        return self.value

    @property
    def vector(self) -> tuple[float, float]:
        """Unit displacement of one hop along this bearing."""
        return _UNIT_VECTORS[self]

    def opposite(self) -> "HexDirection":
        return HexDirection((self.value + 3) % 6)

    def rotated(self, steps: int) -> "HexDirection":
        """Bearing `steps` sixths of a turn clockwise from this one."""
        return HexDirection((self.value + steps) % 6)


_HALF_SQRT3 = math.sqrt(3) / 2

_UNIT_VECTORS: dict[HexDirection, tuple[float, float]] = {
    HexDirection.N: (0.0, 1.0),
    HexDirection.NE: (_HALF_SQRT3, 0.5),
    HexDirection.SE: (_HALF_SQRT3, -0.5),
    HexDirection.S: (0.0, -1.0),
    HexDirection.SW: (-_HALF_SQRT3, -0.5),
    HexDirection.NW: (-_HALF_SQRT3, 0.5),
}


def angle_between_deg(ux: float, uy: float, vx: float, vy: float) -> float:
    """Unsigned angle in degrees between two nonzero planar vectors."""
    nu = math.hypot(ux, uy)
    nv = math.hypot(vx, vy)
    dot = (ux * vx + uy * vy) / (nu * nv)
    return math.degrees(math.acos(max(-1.0, min(1.0, dot))))


def bearing_of(dx: float, dy: float, tol_deg: float = 1.0) -> HexDirection | None:
    """Lattice bearing matching a displacement within tol_deg, else None."""
    if dx == 0.0 and dy == 0.0:
        return None
    best = min(HexDirection, key=lambda d: angle_between_deg(dx, dy, *d.vector))
    if angle_between_deg(dx, dy, *best.vector) <= tol_deg:
        return best
    return None
