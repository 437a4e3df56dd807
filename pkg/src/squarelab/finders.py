"""Exhaustive center finders for axis-parallel squares in finite sets.

Three problems, one coordinate convention.  Centers and radii are *doubled*
(2x, 2y, 2r) so the half-integer centers that arise from odd vertex spacings
stay exact integers:

* 1D: centers (x, y) such that some r > 0 puts x-r, x+r, y-r, y+r in A.
* 2D vertices: centers of squares with all four corners in B.
* 2D boundaries: lattice centers s and integer radii r >= 1 whose full
  discrete square boundary (the Chebyshev sphere of radius r, 8r points)
  lies in B.

The enumeration strategies are the straightforward quadratic ones — same-sum
pairs for 1D, same-row pairs for vertices, per-radius raster sweeps for
boundaries — each behind a cost estimator that refuses pathological inputs
instead of hanging.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

from .core_sets import (
    DEFAULT_FINDER_BUDGET,
    DEFAULT_PAIR_BUDGET,
    DoubledPoint,
    IntSet1D,
    OccupancyGrid,
    ParameterError,
    PointSet2D,
    require_budget,
)

__all__ = [
    "CenterWitness", "RadiiIndex",
    "find_centers_1d", "find_vertex_centers_2d", "find_boundary_centers_2d",
    "has_square_at",
]


class CenterWitness(NamedTuple):
    """A center together with one doubled radius that certifies it."""

    center: DoubledPoint
    radius: int  # doubled: the square has half-side radius/2

    def render(self) -> str:
        return f"{self.center.render()} r={self.radius}/2"


class RadiiIndex:
    """For a 1D set: every doubled midpoint with its doubled radii.

    A pair a < a' of elements is the horizontal (or vertical) vertex pair of
    a centered interval: doubled midpoint a+a' and doubled radius a'-a.  The
    index maps each midpoint to its sorted radii and, inversely, each radius
    to the midpoints realizing it.  Building it is the O(|A|^2) pair scan.
    """

    __slots__ = ("_by_mid", "_by_radius")

    def __init__(self, by_mid: dict[int, tuple[int, ...]],
                 by_radius: dict[int, tuple[int, ...]]):
        self._by_mid = by_mid
        self._by_radius = by_radius

    @classmethod
    def from_intset(cls, a: IntSet1D, *, budget: int | None = None) -> "RadiiIndex":
        require_budget(len(a), DEFAULT_FINDER_BUDGET, "a radii index", budget)
        elems = a.elems
        by_mid: dict[int, list[int]] = {}
        by_radius: dict[int, list[int]] = {}
        for j in range(1, len(elems)):
            aj = elems[j]
            for i in range(j):
                mid, rad = elems[i] + aj, aj - elems[i]
                by_mid.setdefault(mid, []).append(rad)
                by_radius.setdefault(rad, []).append(mid)
        return cls({m: tuple(sorted(r)) for m, r in by_mid.items()},
                   {r: tuple(sorted(m)) for r, m in by_radius.items()})

    def midpoints(self) -> tuple[int, ...]:
        return tuple(sorted(self._by_mid))

    def radii(self, mid: int) -> tuple[int, ...]:
        return self._by_mid.get(mid, ())

    def midpoints_with_radius(self, rad: int) -> tuple[int, ...]:
        return self._by_radius.get(rad, ())

    def match_cost(self) -> int:
        """Total work of the all-pairs common-radius sweep: sum of bucket^2."""
        return sum(len(m) ** 2 for m in self._by_radius.values())


def _centers_1d_rows(index: RadiiIndex) -> Iterator[tuple[int, set[int]]]:
    """Yield (X, all Y sharing a radius with X) one midpoint row at a time."""
    for x in index.midpoints():
        row: set[int] = set()
        for rad in index.radii(x):
            row.update(index.midpoints_with_radius(rad))
        yield x, row


def find_centers_1d(a: IntSet1D, mode: str = "enumerate", *,
                    budget: int | None = None) -> frozenset[DoubledPoint] | int:
    """All doubled centers (X, Y) admitting a common positive radius in A.

    mode='enumerate' returns the center set; mode='count' streams one midpoint
    row at a time and never holds the full center set in memory.
    """
    if mode not in ("enumerate", "count"):
        raise ParameterError(f"mode must be 'enumerate' or 'count', got {mode!r}")
    index = RadiiIndex.from_intset(a, budget=budget)
    require_budget(index.match_cost(), DEFAULT_PAIR_BUDGET,
                   "the common-radius pair sweep", budget)
    if mode == "count":
        return sum(len(row) for _, row in _centers_1d_rows(index))
    out = set()
    for x, row in _centers_1d_rows(index):
        out.update(DoubledPoint(x, y) for y in row)
    return frozenset(out)


def find_vertex_centers_2d(b: PointSet2D, mode: str = "enumerate", *,
                           budget: int | None = None) -> frozenset[DoubledPoint] | int:
    """Centers of axis-parallel squares with all four vertices in B.

    Scans same-row pairs: points (a, y) and (c, y) with a < c are the bottom
    edge of exactly one square, whose top corners (a, y + (c-a)) and
    (c, y + (c-a)) are two membership probes; every square is discovered once,
    through its bottom edge.  Doubled center: (a+c, 2y + (c-a)).
    """
    if mode not in ("enumerate", "count"):
        raise ParameterError(f"mode must be 'enumerate' or 'count', got {mode!r}")
    require_budget(len(b), DEFAULT_FINDER_BUDGET, "a vertex-center scan", budget)
    rows: dict[int, list[int]] = {}
    for x, y in b.points:
        rows.setdefault(y, []).append(x)
    require_budget(sum(len(xs) ** 2 for xs in rows.values()), DEFAULT_PAIR_BUDGET,
                   "the same-row pair scan", budget)
    bbox = b.bbox()
    ymax = bbox[3] if bbox else 0
    members = b.points
    centers: set[DoubledPoint] = set()
    for y, xs in rows.items():
        xs.sort()
        reach = ymax - y  # tallest square whose top row is still in the box
        for i, a in enumerate(xs):
            for c in xs[i + 1:]:
                w = c - a
                if w > reach:
                    break
                if (a, y + w) in members and (c, y + w) in members:
                    centers.add(DoubledPoint(a + c, 2 * y + w))
    return len(centers) if mode == "count" else frozenset(centers)


def find_boundary_centers_2d(b: PointSet2D, r_max: int, mode: str = "enumerate", *,
                             budget: int | None = None
                             ) -> frozenset[CenterWitness] | int:
    """All (lattice center, radius) pairs whose full square boundary lies in B.

    One vectorized pass per radius: four prefix-sum differences over the
    occupancy grid decide "row/column segment completely occupied" for every
    in-range center simultaneously.
    """
    if mode not in ("enumerate", "count"):
        raise ParameterError(f"mode must be 'enumerate' or 'count', got {mode!r}")
    if not isinstance(r_max, int) or r_max < 1:
        raise ParameterError(f"r_max must be an integer >= 1, got {r_max!r}")
    require_budget(len(b), DEFAULT_FINDER_BUDGET, "a boundary-center scan", budget)
    if not len(b):
        return 0 if mode == "count" else frozenset()
    grid = OccupancyGrid.from_points(b, budget=budget)
    w, h = grid.width, grid.height
    r_eff = min(r_max, (w - 1) // 2, (h - 1) // 2)
    require_budget(w * h * max(r_eff, 0), DEFAULT_PAIR_BUDGET,
                   "the per-radius boundary sweep", budget)
    px, py = grid._px, grid._py
    found: set[CenterWitness] = set()
    count = 0
    for r in range(1, r_eff + 1):
        n = 2 * r + 1
        top = px[n:w + 1, 2 * r:h] - px[0:w - 2 * r, 2 * r:h]
        bottom = px[n:w + 1, 0:h - 2 * r] - px[0:w - 2 * r, 0:h - 2 * r]
        left = py[0:w - 2 * r, n:h + 1] - py[0:w - 2 * r, 0:h - 2 * r]
        right = py[2 * r:w, n:h + 1] - py[2 * r:w, 0:h - 2 * r]
        full = (top == n) & (bottom == n) & (left == n) & (right == n)
        if mode == "count":
            count += int(np.count_nonzero(full))
            continue
        for u, v in zip(*np.nonzero(full)):
            sx, sy = grid.x0 + int(u) + r, grid.y0 + int(v) + r
            found.add(CenterWitness(DoubledPoint(2 * sx, 2 * sy), 2 * r))
    return count if mode == "count" else frozenset(found)


def has_square_at(b: PointSet2D, center: DoubledPoint, mode: str, *,
                  r_max: int | None = None, grid: OccupancyGrid | None = None,
                  budget: int | None = None) -> int | None:
    """Smallest doubled radius of a square at `center`, or None.

    mode='vertices' wants the four corners in B; corners must land on the
    lattice, so the doubled radius shares the (necessarily common) parity of
    X and Y.  mode='boundary' wants the whole discrete boundary in B; those
    centers are lattice points with integer radius, searched up to r_max.
    Centers outside B's bounding box have no square, never an error.
    """
    bbox = b.bbox() if grid is None else (grid.x0, grid.y0,
                                          grid.x0 + grid.width - 1,
                                          grid.y0 + grid.height - 1)
    if bbox is None:
        return None
    xmin, ymin, xmax, ymax = bbox
    x2, y2 = center
    if not (2 * xmin <= x2 <= 2 * xmax and 2 * ymin <= y2 <= 2 * ymax):
        return None

    if mode == "vertices":
        if (x2 - y2) % 2:
            return None  # corners (X+-rho)/2 can't be integral for both axes
        reach = min(x2 - 2 * xmin, 2 * xmax - x2, y2 - 2 * ymin, 2 * ymax - y2)
        if r_max is not None:
            reach = min(reach, 2 * r_max)
        members = b.points
        start = 2 if x2 % 2 == 0 else 1
        for rho in range(start, reach + 1, 2):
            xs = ((x2 - rho) // 2, (x2 + rho) // 2)
            ys = ((y2 - rho) // 2, (y2 + rho) // 2)
            if all((x, y) in members for x in xs for y in ys):
                return rho
        return None

    if mode == "boundary":
        if x2 % 2 or y2 % 2:
            return None
        sx, sy = x2 // 2, y2 // 2
        if grid is None:
            grid = OccupancyGrid.from_points(b, budget=budget)
        reach = min(sx - xmin, xmax - sx, sy - ymin, ymax - sy)
        if r_max is not None:
            reach = min(reach, r_max)
        for r in range(1, reach + 1):
            if (grid.segment_full("horizontal", sy + r, sx - r, sx + r)
                    and grid.segment_full("horizontal", sy - r, sx - r, sx + r)
                    and grid.segment_full("vertical", sx - r, sy - r, sy + r)
                    and grid.segment_full("vertical", sx + r, sy - r, sy + r)):
                return 2 * r
        return None

    raise ParameterError(f"mode must be 'vertices' or 'boundary', got {mode!r}")
