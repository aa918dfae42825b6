"""One-hot grid encodings of bounded 2D Euclidean spaces.

A map of resolution N partitions its bounds into N x N mutually exclusive,
half-open rectangular receptive fields; exactly one cell contains any point.
Two modalities use the same machinery: PC maps encode allocentric position,
OVC maps encode the relative vector from self to an object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class Modality(str, Enum):
    PC = "PC"
    OVC = "OVC"


class Vec2(NamedTuple):
    x: float
    y: float


class CellIndex(NamedTuple):
    row: int
    col: int
    flat: int


def _check_finite(p) -> None:
    if not (math.isfinite(p[0]) and math.isfinite(p[1])):
        raise ValueError(f"invalid point: {p!r}")


@dataclass(frozen=True)
class Bounds:
    min: Vec2
    max: Vec2

    def __post_init__(self):
        _check_finite(self.min)
        _check_finite(self.max)
        if not (self.min.x < self.max.x and self.min.y < self.max.y):
            raise ValueError(f"degenerate bounds: {self}")

    @property
    def width(self) -> float:
        return self.max.x - self.min.x

    @property
    def height(self) -> float:
        return self.max.y - self.min.y


#: Arena for agent/object positions.
UNIT_SQUARE = Bounds(Vec2(0.0, 0.0), Vec2(1.0, 1.0))

#: Domain of self-to-object vectors over a unit arena (full relative range).
VECTOR_SQUARE = Bounds(Vec2(-1.0, -1.0), Vec2(1.0, 1.0))


@dataclass(frozen=True)
class NresMap:
    """An N x N one-hot layer over a bounded plane."""

    resolution: int
    bounds: Bounds
    modality: Modality

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError(f"resolution must be >= 2, got {self.resolution}")

    @property
    def n_cells(self) -> int:
        return self.resolution * self.resolution


@dataclass(frozen=True)
class ResolutionStack:
    """Ordered layers over one space, strictly increasing in resolution."""

    layers: tuple[NresMap, ...]

    def __post_init__(self):
        res = [m.resolution for m in self.layers]
        if any(b <= a for a, b in zip(res, res[1:])):
            raise ValueError(f"resolutions must strictly increase, got {res}")
        if len({(m.bounds.min, m.bounds.max, m.modality) for m in self.layers}) > 1:
            raise ValueError("stack layers must share bounds and modality")

    def __len__(self) -> int:
        return len(self.layers)


def make_stack(resolutions, bounds: Bounds, modality: Modality) -> ResolutionStack:
    return ResolutionStack(
        tuple(NresMap(n, bounds, modality) for n in sorted(resolutions))
    )


def axis_edge(lo: float, hi: float, n: int, k: int) -> float:
    """Canonical k-th gridline of an axis split into n intervals."""
    return lo + (hi - lo) * (k / n)


def _axis_index(v: float, lo: float, hi: float, n: int) -> int:
    i = int((v - lo) / (hi - lo) * n)
    if i >= n:
        i = n - 1
    elif i < 0:
        i = 0
    # Repair float rounding at gridlines so membership matches axis_edge exactly.
    if i > 0 and v < axis_edge(lo, hi, n, i):
        i -= 1
    elif i < n - 1 and v >= axis_edge(lo, hi, n, i + 1):
        i += 1
    return i


def cell_index(p: Vec2, nmap: NresMap) -> CellIndex:
    """The unique cell whose half-open receptive field contains p.

    Points on the max edge fold into the last row/col, keeping the
    partition total over the closed bounds.
    """
    _check_finite(p)
    n = nmap.resolution
    b = nmap.bounds
    col = _axis_index(p[0], b.min.x, b.max.x, n)
    row = _axis_index(p[1], b.min.y, b.max.y, n)
    return CellIndex(row, col, row * n + col)


def cell_from_flat(flat: int, nmap: NresMap) -> CellIndex:
    n = nmap.resolution
    if not 0 <= flat < n * n:
        raise ValueError(f"flat index {flat} out of range for N{n}")
    return CellIndex(flat // n, flat % n, flat)


def cell_center(cell: CellIndex, nmap: NresMap) -> Vec2:
    n = nmap.resolution
    b = nmap.bounds
    x = 0.5 * (axis_edge(b.min.x, b.max.x, n, cell.col) + axis_edge(b.min.x, b.max.x, n, cell.col + 1))
    y = 0.5 * (axis_edge(b.min.y, b.max.y, n, cell.row) + axis_edge(b.min.y, b.max.y, n, cell.row + 1))
    return Vec2(x, y)


def ovc_vector(obj: Vec2, self_pos: Vec2) -> Vec2:
    """Relative vector from self to object, componentwise subtraction."""
    _check_finite(obj)
    _check_finite(self_pos)
    return Vec2(obj[0] - self_pos[0], obj[1] - self_pos[1])


def clamp_to_bounds(p: Vec2, b: Bounds) -> Vec2:
    _check_finite(p)
    x = b.min.x if p[0] < b.min.x else (b.max.x if p[0] > b.max.x else p[0])
    y = b.min.y if p[1] < b.min.y else (b.max.y if p[1] > b.max.y else p[1])
    return Vec2(x, y)


def encode(obs_point: Vec2, stack: ResolutionStack) -> list[CellIndex]:
    """Per-layer cell of obs_point, one entry per stack layer."""
    if not stack.layers:
        raise ValueError("empty resolution stack")
    return [cell_index(obs_point, m) for m in stack.layers]
