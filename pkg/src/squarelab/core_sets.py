"""Exact integer ground types for finite lattice sets.

Everything downstream (constructions, finders, dimension estimates) works over
plain integers: 1D sets are strictly increasing tuples, 2D sets are deduplicated
lattice-point collections, and square centers/radii travel in *doubled*
coordinates (2x, 2y, 2r) so half-integer centers stay exact.  Real-valued
constructions are scaled into integers before they reach this layer.

The :class:`OccupancyGrid` is a dense 0/1 raster with prefix sums along both
axes, giving O(1) "is this whole row/column segment occupied" answers.  That
query is the inner loop of boundary-square detection, which is why it earns the
memory it spends.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator, NamedTuple

import numpy as np

# Coordinates are capped well inside int64 so doubling, prefix sums, and numpy
# fast paths can never overflow.  Anything bigger is a usage error at the scales
# this library targets.
COORD_LIMIT = 2**62

# Default guards, each scaled by the SQUARELAB_BUDGET environment factor.
DEFAULT_FINDER_BUDGET = 5_000        # max |A| or |B| accepted by a finder
DEFAULT_ELEMENT_BUDGET = 2_000_000   # max elements/points materialized by a generator
DEFAULT_GRID_CELLS = 4_500_000       # max occupancy-grid area (~2000 x 2000)
DEFAULT_PAIR_BUDGET = 20_000_000     # max same-row pairs scanned by the vertex finder

_BUDGET_ENV = "SQUARELAB_BUDGET"


class SquareLabError(Exception):
    """Base class for every error this package raises on purpose."""


class ParameterError(SquareLabError, ValueError):
    """A parameter is outside the supported domain (bad k, p, mode string, ...)."""


class RangeError(SquareLabError, ValueError):
    """A coordinate or index falls outside the representable / declared range."""


class ModeError(SquareLabError, ValueError):
    """The requested operation is incompatible with the object's mode."""


class BudgetError(SquareLabError):
    """A size guard refused to materialize something.

    Carries the estimated cost and the limit it tripped, so callers (and error
    messages) can say precisely how far over budget the request was.
    """

    def __init__(self, message: str, *, estimate: int, limit: int):
        super().__init__(f"{message} (estimated {estimate:,}, budget {limit:,}; "
                         f"raise via {_BUDGET_ENV} or an explicit budget= override)")
        self.estimate = estimate
        self.limit = limit


class FormatError(SquareLabError, ValueError):
    """A text file violated the set-file format.  Knows where."""

    def __init__(self, message: str, *, source: str = "<string>", lineno: int | None = None):
        where = source if lineno is None else f"{source}:{lineno}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.lineno = lineno


def budget_scale() -> float:
    """Scale factor applied to every default guard (SQUARELAB_BUDGET, default 1)."""
    raw = os.environ.get(_BUDGET_ENV)
    if raw is None:
        return 1.0
    try:
        scale = float(raw)
    except ValueError:
        raise ParameterError(f"{_BUDGET_ENV} must be a positive number, got {raw!r}") from None
    if scale <= 0 or scale != scale:  # NaN guard
        raise ParameterError(f"{_BUDGET_ENV} must be a positive number, got {raw!r}")
    return scale


def effective_budget(default: int, override: int | None = None) -> int:
    """Resolve a guard: explicit override wins, else default times the env scale."""
    if override is not None:
        if override <= 0:
            raise ParameterError(f"budget override must be positive, got {override}")
        return override
    return int(default * budget_scale())


def require_budget(estimate: int, default: int, what: str,
                   override: int | None = None) -> None:
    """Raise BudgetError if `estimate` exceeds the effective guard."""
    limit = effective_budget(default, override)
    if estimate > limit:
        raise BudgetError(f"refusing to materialize {what}", estimate=estimate, limit=limit)


def _check_coord(v: int) -> int:
    if not isinstance(v, (int, np.integer)):
        raise ParameterError(f"expected an integer coordinate, got {type(v).__name__}")
    v = int(v)
    if abs(v) > COORD_LIMIT:
        raise RangeError(f"coordinate {v} exceeds the supported magnitude 2**62")
    return v


class IntSet1D:
    """A finite set of integers, stored sorted ascending and hash-indexed.

    Construct through :func:`make_intset` (which sorts and deduplicates) or the
    trusted fast path :meth:`from_sorted_array` used by the generators.
    """

    __slots__ = ("_elems", "_members", "_arr")

    def __init__(self, elems: Iterable[int]):
        elems = tuple(_check_coord(v) for v in elems)
        for a, b in zip(elems, elems[1:]):
            if a >= b:
                raise ParameterError(
                    "IntSet1D requires strictly increasing elements; "
                    "use make_intset() to sort and deduplicate")
        self._elems = elems
        self._members = frozenset(elems)
        self._arr: np.ndarray | None = None

    @classmethod
    def from_sorted_array(cls, arr: np.ndarray) -> "IntSet1D":
        """Build from a strictly increasing int64 array without re-sorting."""
        arr = np.asarray(arr, dtype=np.int64)
        if arr.size and not np.all(np.diff(arr) > 0):
            raise ParameterError("array is not strictly increasing")
        if arr.size and max(abs(int(arr[0])), abs(int(arr[-1]))) > COORD_LIMIT:
            raise RangeError("array values exceed the supported magnitude 2**62")
        out = cls.__new__(cls)
        out._elems = tuple(int(v) for v in arr)
        out._members = frozenset(out._elems)
        out._arr = arr
        return out

    @property
    def elems(self) -> tuple[int, ...]:
        return self._elems

    def as_array(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.array(self._elems, dtype=np.int64)
        return self._arr

    def min(self) -> int:
        if not self._elems:
            raise RangeError("empty set has no minimum")
        return self._elems[0]

    def max(self) -> int:
        if not self._elems:
            raise RangeError("empty set has no maximum")
        return self._elems[-1]

    def translate(self, offset: int) -> "IntSet1D":
        offset = _check_coord(offset)
        return IntSet1D(v + offset for v in self._elems)

    def __len__(self) -> int:
        return len(self._elems)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elems)

    def __contains__(self, v: object) -> bool:
        return v in self._members

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntSet1D):
            return self._elems == other._elems
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elems)

    def __repr__(self) -> str:
        if len(self._elems) <= 8:
            return f"IntSet1D({list(self._elems)})"
        return (f"IntSet1D(<{len(self._elems)} elements, "
                f"{self._elems[0]}..{self._elems[-1]}>)")


def make_intset(values: Iterable[int]) -> IntSet1D:
    """Sort, deduplicate, and validate integers into an :class:`IntSet1D`."""
    return IntSet1D(sorted({_check_coord(v) for v in values}))


class PointSet2D:
    """A finite set of lattice points, canonically ordered by (x, y).

    Duplicates in the input collapse silently; emptiness is legal.
    """

    __slots__ = ("_pts", "_sorted")

    def __init__(self, points: Iterable[tuple[int, int]]):
        cleaned = set()
        for p in points:
            x, y = p
            cleaned.add((_check_coord(x), _check_coord(y)))
        self._pts = frozenset(cleaned)
        self._sorted: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def product(cls, xs: IntSet1D, ys: IntSet1D) -> "PointSet2D":
        out = cls.__new__(cls)
        out._pts = frozenset((x, y) for x in xs.elems for y in ys.elems)
        out._sorted = None
        return out

    @property
    def points(self) -> frozenset[tuple[int, int]]:
        return self._pts

    def sorted_points(self) -> tuple[tuple[int, int], ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._pts))
        return self._sorted

    def bbox(self) -> tuple[int, int, int, int] | None:
        """(xmin, ymin, xmax, ymax), or None for the empty set."""
        if not self._pts:
            return None
        xs = [p[0] for p in self._pts]
        ys = [p[1] for p in self._pts]
        return min(xs), min(ys), max(xs), max(ys)

    def translate(self, dx: int, dy: int) -> "PointSet2D":
        dx, dy = _check_coord(dx), _check_coord(dy)
        return PointSet2D((x + dx, y + dy) for x, y in self._pts)

    def transpose(self) -> "PointSet2D":
        return PointSet2D((y, x) for x, y in self._pts)

    def __len__(self) -> int:
        return len(self._pts)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.sorted_points())

    def __contains__(self, p: object) -> bool:
        return p in self._pts

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PointSet2D):
            return self._pts == other._pts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._pts)

    def __repr__(self) -> str:
        return f"PointSet2D(<{len(self._pts)} points>)"


def doubled_str(v: int) -> str:
    """Render a doubled coordinate as an exact decimal half-integer.

    >>> doubled_str(4), doubled_str(-3)
    ('2.0', '-1.5')
    """
    sign = "-" if v < 0 else ""
    a = abs(v)
    return f"{sign}{a // 2}.{'5' if a % 2 else '0'}"


class DoubledPoint(NamedTuple):
    """A point in doubled coordinates: (X, Y) encodes (X/2, Y/2)."""

    X: int
    Y: int

    def is_lattice(self) -> bool:
        return self.X % 2 == 0 and self.Y % 2 == 0

    def render(self) -> str:
        return f"{doubled_str(self.X)} {doubled_str(self.Y)}"


class OccupancyGrid:
    """Dense membership raster over a bounding box with O(1) segment queries.

    ``cells[i, j]`` covers the lattice point ``(x0 + i, y0 + j)``.  Two prefix
    tables (cumulative along x and along y) turn "is every point of this
    horizontal/vertical segment occupied" into a subtraction and a comparison.
    Queries that leave the stored box are simply unoccupied — never an error.
    """

    __slots__ = ("x0", "y0", "width", "height", "cells", "_px", "_py")

    def __init__(self, x0: int, y0: int, cells: np.ndarray):
        if cells.ndim != 2 or cells.dtype != np.uint8:
            raise ParameterError("cells must be a 2D uint8 array")
        self.x0 = x0
        self.y0 = y0
        self.width, self.height = cells.shape
        self.cells = cells
        # int32 is enough: a prefix never exceeds the grid-cell budget.
        px = np.zeros((self.width + 1, self.height), dtype=np.int32)
        np.cumsum(cells, axis=0, dtype=np.int32, out=px[1:, :])
        py = np.zeros((self.width, self.height + 1), dtype=np.int32)
        np.cumsum(cells, axis=1, dtype=np.int32, out=py[:, 1:])
        self._px = px
        self._py = py

    @classmethod
    def from_points(cls, points: PointSet2D | Iterable[tuple[int, int]], *,
                    bbox: tuple[int, int, int, int] | None = None,
                    budget: int | None = None) -> "OccupancyGrid":
        if not isinstance(points, PointSet2D):
            points = PointSet2D(points)
        if bbox is None:
            bbox = points.bbox()
        if bbox is None:
            raise ParameterError("cannot build a grid from an empty point set "
                                 "without an explicit bbox")
        xmin, ymin, xmax, ymax = bbox
        if xmin > xmax or ymin > ymax:
            raise RangeError(f"degenerate bbox {bbox}")
        width, height = xmax - xmin + 1, ymax - ymin + 1
        require_budget(width * height, DEFAULT_GRID_CELLS,
                       f"a {width} x {height} occupancy grid", budget)
        cells = np.zeros((width, height), dtype=np.uint8)
        for x, y in points.points:
            if xmin <= x <= xmax and ymin <= y <= ymax:
                cells[x - xmin, y - ymin] = 1
        return cls(xmin, ymin, cells)

    def is_occupied(self, x: int, y: int) -> bool:
        i, j = x - self.x0, y - self.y0
        if 0 <= i < self.width and 0 <= j < self.height:
            return bool(self.cells[i, j])
        return False

    def occupied_count(self) -> int:
        return int(self._px[-1, :].sum())

    def segment_full(self, axis: str, line: int, lo: int, hi: int) -> bool:
        """True iff every lattice point of the segment is occupied.

        axis='horizontal': points (lo..hi, line); axis='vertical': (line, lo..hi).
        A segment poking outside the stored box is not full (OOB is empty space).
        """
        if axis not in ("horizontal", "vertical"):
            raise ParameterError(f"axis must be 'horizontal' or 'vertical', got {axis!r}")
        if lo > hi:
            raise RangeError(f"segment endpoints out of order: lo={lo} > hi={hi}")
        n = hi - lo + 1
        if axis == "horizontal":
            j = line - self.y0
            a, b = lo - self.x0, hi - self.x0
            if j < 0 or j >= self.height or a < 0 or b >= self.width:
                return False
            return int(self._px[b + 1, j] - self._px[a, j]) == n
        i = line - self.x0
        a, b = lo - self.y0, hi - self.y0
        if i < 0 or i >= self.width or a < 0 or b >= self.height:
            return False
        return int(self._py[i, b + 1] - self._py[i, a]) == n


def segment_full(grid: OccupancyGrid, axis: str, line: int, lo: int, hi: int) -> bool:
    """Module-level form of :meth:`OccupancyGrid.segment_full`."""
    return grid.segment_full(axis, line, lo, hi)


# ---------------------------------------------------------------------------
# Plain-text set files: one decimal integer per line (1D) or "x y" (2D),
# '#' starts a comment, blank lines ignored, LF newlines, ascending output.

def _data_lines(text: str, source: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_intset_text(text: str, *, source: str = "<string>") -> IntSet1D:
    values = []
    for lineno, line in _data_lines(text, source):
        if len(line.split()) != 1:
            raise FormatError(f"expected one integer, got {line!r}",
                              source=source, lineno=lineno)
        try:
            values.append(int(line))
        except ValueError:
            raise FormatError(f"not an integer: {line!r}",
                              source=source, lineno=lineno) from None
    try:
        return make_intset(values)
    except RangeError as exc:
        raise FormatError(str(exc), source=source) from None


def format_intset_text(s: IntSet1D, *, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines.extend(str(v) for v in s.elems)
    return "\n".join(lines) + "\n"


def parse_pointset_text(text: str, *, source: str = "<string>") -> PointSet2D:
    points = []
    for lineno, line in _data_lines(text, source):
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'x y', got {line!r}",
                              source=source, lineno=lineno)
        try:
            points.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"not an integer pair: {line!r}",
                              source=source, lineno=lineno) from None
    try:
        return PointSet2D(points)
    except RangeError as exc:
        raise FormatError(str(exc), source=source) from None


def format_pointset_text(ps: PointSet2D, *, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines.extend(f"{x} {y}" for x, y in ps.sorted_points())
    return "\n".join(lines) + "\n"
