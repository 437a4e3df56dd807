"""Extremal set constructions for discrete axis-parallel square problems.

The root object is a family of integer sets D_k built from base-k expansions
a + b*k + c*k**2 + d*k**3 with digits in {-k+1, ..., 2k-2} and at least one
digit zero.  D_k sits inside [-k**4, 2*k**4], has size Theta(k**3), and absorbs
every base-k digit pattern in the following sense: for any x, y in [0, k**4)
there is a radius r >= 1 with x-r, x+r, y-r, y+r all in D_k.  Products and
strips of D_k then give point sets where *every* center in a huge grid spans an
axis-parallel square (all four vertices, or the entire discrete boundary),
while the point set itself stays small — the sharpness side of the counting
bounds checked in :mod:`squarelab.bounds_report`.

Summing scaled copies of the D_k across levels produces one-dimensional sets
(`gen_AN`, `gen_cantor_truncation`) with the same radius-absorption property at
every scale, and `gen_countable_truncation` stacks scaled blocks of those into
a single planar configuration.  `splice_En` is the generic dyadic-cell
concatenation those limit constructions quotient through.

Everything here is exact integer arithmetic; the only floats are the optional
float mode of the Cantor-type truncation, which reports its own error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Iterable, Sequence

import numpy as np

from .core_sets import (
    COORD_LIMIT,
    DEFAULT_ELEMENT_BUDGET,
    BudgetError,
    IntSet1D,
    ModeError,
    ParameterError,
    PointSet2D,
    RangeError,
    require_budget,
)

__all__ = [
    "gen_Dk", "dk_size_cap", "witness_r",
    "gen_vertex_example", "vertex_example_sizes",
    "gen_boundary_example", "boundary_example_sizes",
    "gen_AN", "an_modulus", "witness_r_AN",
    "gen_AN_general", "interpolation_level",
    "CantorTruncation", "gen_cantor_truncation",
    "CountableBlock", "CountableTruncation", "gen_countable_truncation",
    "splice_En", "default_a_sequence",
]


# ---------------------------------------------------------------------------
# The digit sets D_k

def dk_size_cap(k: int) -> int:
    """Upper bound (3k-2)**4 - (3k-3)**4 on |D_k| (digit tuples minus the
    all-nonzero ones, before collisions)."""
    return (3 * k - 2) ** 4 - (3 * k - 3) ** 4


def gen_Dk(k: int, *, budget: int | None = None) -> IntSet1D:
    """All values a + b*k + c*k**2 + d*k**3 with digits in {-k+1..2k-2}, abcd = 0.

    Enumerated as four unions (one per vanishing digit) over the remaining
    three digits, which keeps the working set at 4*(3k-2)**3 values instead of
    (3k-2)**4 tuples.
    """
    if not isinstance(k, int) or k < 2:
        raise ParameterError(f"digit-set level must be an integer >= 2, got {k!r}")
    require_budget(dk_size_cap(k), DEFAULT_ELEMENT_BUDGET, f"digit set at level {k}", budget)
    dig = np.arange(-k + 1, 2 * k - 1, dtype=np.int64)
    b, c, d = np.meshgrid(dig, dig, dig, indexing="ij")
    b, c, d = b.ravel(), c.ravel(), d.ravel()
    parts = [
        b * k + c * k**2 + d * k**3,   # a = 0
        b + c * k**2 + d * k**3,       # b = 0
        b + c * k + d * k**3,          # c = 0
        b + c * k + d * k**2,          # d = 0
    ]
    values = np.unique(np.concatenate(parts))
    out = IntSet1D.from_sorted_array(values)
    # Containment in the ambient interval is a theorem; cheap to keep honest.
    assert -k**4 <= out.min() and out.max() <= 2 * k**4
    return out


def _digits4(v: int, k: int) -> tuple[int, int, int, int]:
    """Base-k digits (v0, v1, v2, v3) of v in [0, k**4)."""
    v0 = v % k
    v //= k
    v1 = v % k
    v //= k
    v2 = v % k
    return v0, v1, v2, v % k


def witness_r(x: int, y: int, k: int) -> int:
    """A radius r with x-r, x+r, y-r, y+r all in D_k, for any x, y in [0, k**4).

    Writing x and y in base k, r0 = x0 - x1*k + y2*k**2 - y3*k**3 works because
    each of the four shifted values expands with one digit forced to zero
    (e.g. x - r0 = x1*(k+1)*k + x2*k**2 + x3*k**3 re-digits with a = 0), and
    digits stay in {-k+1..2k-2}.  The sign of r0 is irrelevant: the four
    membership conditions only see {x-r, x+r} and {y-r, y+r} as pairs.  When
    r0 = 0 (all four contributing digits zero) r = 1 works directly.
    """
    if not isinstance(k, int) or k < 2:
        raise ParameterError(f"digit-set level must be an integer >= 2, got {k!r}")
    n = k**4
    if not (0 <= x < n and 0 <= y < n):
        raise RangeError(f"center ({x}, {y}) outside [0, {n})**2 at level {k}")
    x0, x1, _, _ = _digits4(x, k)
    _, _, y2, y3 = _digits4(y, k)
    r0 = x0 - x1 * k + y2 * k**2 - y3 * k**3
    return abs(r0) if r0 else 1


# ---------------------------------------------------------------------------
# Planar examples built from D_k

def vertex_example_sizes(k: int) -> tuple[int, int]:
    """Exact (|B|, |S|) for the vertex example, without materializing it."""
    d = len(gen_Dk(k))
    return d * d, (k**4 - 1) ** 2


def gen_vertex_example(k: int, *, budget: int | None = None) -> tuple[PointSet2D, PointSet2D]:
    """B = D_k x D_k together with its center grid S = {1..k**4-1}**2.

    Every (x, y) in S is the center of an axis-parallel square with all four
    vertices in B (radius from :func:`witness_r`), so |S| grows like |B|**(4/3)
    while B stays a product set.
    """
    dset = gen_Dk(k, budget=budget)
    b_size, s_size = len(dset) ** 2, (k**4 - 1) ** 2
    require_budget(b_size + s_size, DEFAULT_ELEMENT_BUDGET,
                   f"vertex example at level {k}", budget)
    grid = IntSet1D(range(1, k**4))
    return PointSet2D.product(dset, dset), PointSet2D.product(grid, grid)


def boundary_example_sizes(k: int) -> tuple[int, int]:
    """Exact (|B|, |S|) for the boundary example.

    B is the union of vertical strips over D_k and horizontal strips over D_k
    inside the box [-k**4, 2*k**4]**2; since D_k lies inside that interval the
    two strip families overlap in exactly D_k x D_k, so inclusion-exclusion
    gives |B| = 2|D_k|(3k**4+1) - |D_k|**2 exactly.
    """
    d = len(gen_Dk(k))
    width = 3 * k**4 + 1
    return 2 * d * width - d * d, (k**4 - 1) ** 2


def gen_boundary_example(k: int, *, budget: int | None = None) -> tuple[PointSet2D, PointSet2D]:
    """B = (D_k x I) ∪ (I x D_k) with I = [-k**4, 2k**4], S = {1..k**4-1}**2.

    Every center in S carries a full discrete square boundary inside B: the
    witness radius puts the two vertical sides on lines of D_k x I and the two
    horizontal sides on lines of I x D_k, and the sides stay inside the box.
    """
    b_size, s_size = boundary_example_sizes(k)
    require_budget(b_size + s_size, DEFAULT_ELEMENT_BUDGET,
                   f"boundary example at level {k}", budget)
    dset = gen_Dk(k, budget=budget)
    lo, hi = -k**4, 2 * k**4
    points = set()
    for v in dset:
        for i in range(lo, hi + 1):
            points.add((v, i))
            points.add((i, v))
    b = PointSet2D(points)
    assert len(b) == b_size
    grid = IntSet1D(range(1, k**4))
    return b, PointSet2D.product(grid, grid)


# ---------------------------------------------------------------------------
# Multi-level 1D sums of D_k

def _sumset_levels(levels: Sequence[tuple[int, IntSet1D]],
                   what: str, budget: int | None) -> IntSet1D:
    """Exact sumset sum_k mult_k * S_k over the given (multiplier, set) levels.

    Estimates min(prod |S_k|, span + 1) first and refuses over-budget requests
    before allocating anything.  Chunked so intermediate outer-sum arrays stay
    below ~3e7 entries.
    """
    prod = 1
    span = 0
    peak = 0
    for mult, s in levels:
        prod = min(prod * len(s), 2**63)  # clamp: only compared against budgets
        span += mult * (s.max() - s.min())
        peak += mult * max(abs(s.min()), abs(s.max()))
    if peak > COORD_LIMIT:
        raise RangeError(f"{what}: values would exceed the supported magnitude 2**62")
    require_budget(min(prod, span + 1), DEFAULT_ELEMENT_BUDGET, what, budget)

    acc = np.zeros(1, dtype=np.int64)
    for mult, s in levels:
        vals = mult * s.as_array()
        if acc.size * vals.size <= 30_000_000:
            acc = np.unique(acc[:, None] + vals[None, :])
        else:
            step = max(1, 30_000_000 // max(vals.size, 1))
            pieces = [np.unique(acc[i:i + step, None] + vals[None, :])
                      for i in range(0, acc.size, step)]
            acc = np.unique(np.concatenate(pieces))
    return IntSet1D.from_sorted_array(acc)


def an_modulus(p: int) -> int:
    """The period N = (p!)**4 of the depth-p interpolating set."""
    return math.factorial(p) ** 4


def _an_scales(p: int) -> dict[int, int]:
    """Level multipliers (p!/k!)**4 for k = 2..p (the k = 1 level is {0})."""
    pf = math.factorial(p)
    return {k: (pf // math.factorial(k)) ** 4 for k in range(2, p + 1)}


def gen_AN(p: int, *, budget: int | None = None) -> IntSet1D:
    """The depth-p set A = sum over k<=p of (p!/k!)**4 * D_k.

    Element counts grow fast: p = 2, 3, 4 give 42, 3543 and roughly 9e5
    elements, while p = 5 would exceed 5e8 — so 5 and 6 are refused under the
    default element budget (pass budget= or raise SQUARELAB_BUDGET to insist).
    """
    if not isinstance(p, int) or not 2 <= p <= 6:
        raise ParameterError(f"depth must be an integer in 2..6, got {p!r}")
    levels = [(mult, gen_Dk(k, budget=budget)) for k, mult in _an_scales(p).items()]
    return _sumset_levels(levels, f"depth-{p} interpolating set", budget)


def witness_r_AN(x: int, y: int, p: int) -> int:
    """A radius r in [1, 3*(p!)**4] with x-r, x+r, y-r, y+r all in gen_AN(p).

    Decomposes x and y in the mixed radix (p!/k!)**4 (digit at level k ranges
    over [0, k**4)) and sums the per-level witness radii back with the same
    multipliers.  The level radii are at most k**4 with the r = 1 fallback, so
    r <= (p!)**4 * sum of 1/(m!)**4 over m < p, which is < 1.07 * (p!)**4.
    """
    n = an_modulus(p)
    if not (0 <= x < n and 0 <= y < n):
        raise RangeError(f"center ({x}, {y}) outside [0, {n})**2 at depth {p}")
    r = 0
    for k, mult in _an_scales(p).items():
        u, x = divmod(x, mult)
        v, y = divmod(y, mult)
        r += mult * witness_r(u, v, k)
    assert x == 0 and y == 0  # the level-p multiplier is 1, digits exhaust
    return r


def interpolation_level(n: int) -> int:
    """Smallest p with (p!)**4 >= n, the depth used for a count-n request."""
    if not isinstance(n, int) or n < 2:
        raise ParameterError(f"count must be an integer >= 2, got {n!r}")
    p = 2
    while an_modulus(p) < n:
        p += 1
    return p


def gen_AN_general(n: int, *, budget: int | None = None) -> IntSet1D:
    """Interpolating set for an arbitrary count n >= 2.

    Returns the full depth-p set for the smallest p with (p!)**4 >= n; only
    the guaranteed center range shrinks to {0..n-1}, the set itself does not.
    """
    return gen_AN(interpolation_level(n), budget=budget)


# ---------------------------------------------------------------------------
# Cantor-type truncations

def _as_fraction(s: object) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise ParameterError(f"cannot parse {s!r} as an exact fraction") from None
    if isinstance(s, tuple) and len(s) == 2:
        return Fraction(s[0], s[1])
    raise ParameterError(f"expected a fraction, got {type(s).__name__}")


@dataclass(frozen=True)
class CantorTruncation:
    """Depth-p truncation of the Cantor-type pair (A, T) at dimension s.

    The level weights are w_k = ((k-1)!)**(-8/s) / k**4; level k contributes
    w_k * D_k to A and w_k * {0..k**4-1} to T.  When 8/s is an integer every
    weight is rational and both sets are materialized exactly on a common
    integer scale (`scale`, the lcm of the weight denominators); otherwise
    float mode stores double-precision elements plus a per-element absolute
    error bound.
    """

    s: Fraction
    depth: int
    mode: str                       # "exact" | "float"
    scale: int | None = None
    a_set: IntSet1D | None = None
    t_set: IntSet1D | None = None
    a_floats: tuple[float, ...] | None = None
    t_floats: tuple[float, ...] | None = None
    error_bound: float | None = None

    @property
    def scaled_set(self) -> IntSet1D:
        """The scaled A side (alias kept for the one-set view of the type)."""
        if self.a_set is None:
            raise ModeError("float-mode truncation has no exact scaled set")
        return self.a_set

    def level_multipliers(self) -> tuple[int, ...]:
        """Exact integer weights scale * w_k for k = 1..depth (exact mode only)."""
        if self.mode != "exact":
            raise ModeError("level multipliers are exact-mode only")
        m = 8 / self.s
        assert m.denominator == 1
        return tuple(int(self.scale * Fraction(1, math.factorial(k - 1) ** int(m) * k**4))
                     for k in range(1, self.depth + 1))


def _level_index_set(k: int) -> IntSet1D:
    return IntSet1D(range(k**4))


def gen_cantor_truncation(s: object, p: int, *,
                          budget: int | None = None) -> CantorTruncation:
    """Build the depth-p truncation at dimension parameter s in (0, 2].

    Exact mode needs 8/s to be a positive integer (s = 2 gives exponent 4,
    s = 8/5 gives 5, ...); anything else falls back to float mode.
    """
    s = _as_fraction(s)
    if not 0 < s <= 2:
        raise ParameterError(f"dimension parameter must lie in (0, 2], got {s}")
    if not isinstance(p, int) or not 1 <= p <= 8:
        raise ParameterError(f"depth must be an integer in 1..8, got {p!r}")
    m8 = 8 / s

    if m8.denominator == 1:
        m = int(m8)
        weights = {k: Fraction(1, math.factorial(k - 1) ** m * k**4)
                   for k in range(1, p + 1)}
        scale = math.lcm(*(w.denominator for w in weights.values()))
        mults = {k: int(w * scale) for k, w in weights.items()}
        # Level 1 is {0} on both sides; it only matters through the lcm above.
        a_levels = [(mults[k], gen_Dk(k, budget=budget)) for k in range(2, p + 1)]
        t_levels = [(mults[k], _level_index_set(k)) for k in range(2, p + 1)]
        if p == 1:
            zero = IntSet1D([0])
            return CantorTruncation(s=s, depth=p, mode="exact", scale=scale,
                                    a_set=zero, t_set=zero)
        a_set = _sumset_levels(a_levels, f"depth-{p} scaled Cantor A side", budget)
        t_set = _sumset_levels(t_levels, f"depth-{p} scaled Cantor T side", budget)
        return CantorTruncation(s=s, depth=p, mode="exact", scale=scale,
                                a_set=a_set, t_set=t_set)

    # Float mode: weights are irrational; materialize double-precision sums.
    exp = float(8 / s)
    prod_a = prod_t = 1
    for k in range(2, p + 1):
        dk = len(gen_Dk(k, budget=budget))
        prod_a *= dk
        prod_t *= k**4
    require_budget(prod_a + prod_t, DEFAULT_ELEMENT_BUDGET,
                   f"depth-{p} float Cantor truncation", budget)
    a_vals = np.zeros(1)
    t_vals = np.zeros(1)
    weight_reach = 0.0
    for k in range(2, p + 1):
        w = math.exp(-exp * math.lgamma(k)) / k**4
        dk = gen_Dk(k).as_array().astype(np.float64)
        ek = np.arange(k**4, dtype=np.float64)
        a_vals = np.unique(a_vals[:, None] + (w * dk)[None, :])
        t_vals = np.unique(t_vals[:, None] + (w * ek)[None, :])
        weight_reach += w * max(abs(int(dk[0])), abs(int(dk[-1])))
    # Each element is a p-term dot product of values carrying a few ulp of
    # relative error; (p + 3) rounding steps against the largest reachable
    # magnitude is a conservative absolute bound.
    err = (p + 3) * np.finfo(np.float64).eps * max(weight_reach, 1.0)
    return CantorTruncation(s=s, depth=p, mode="float",
                            a_floats=tuple(float(v) for v in a_vals),
                            t_floats=tuple(float(v) for v in t_vals),
                            error_bound=float(err))


# ---------------------------------------------------------------------------
# Countable union of scaled blocks

@dataclass(frozen=True)
class CountableBlock:
    """One scaled block: a center grid and the strip set that serves it.

    Coordinates are integers in the global frame (everything multiplied by
    2**((1+alpha)*K)); `factor` is this block's unit, `offset` its translation.
    """

    k: int
    n: int
    factor: int
    offset: tuple[int, int]
    centers: PointSet2D
    boundary_set: PointSet2D


@dataclass(frozen=True)
class CountableTruncation:
    alpha: int
    K: int
    scale: int
    blocks: tuple[CountableBlock, ...]


def gen_countable_truncation(alpha: int, K: int, *,
                             budget: int | None = None) -> CountableTruncation:
    """First K blocks of the countable square-boundary configuration.

    Block k holds the center grid {0..N_k-1}**2 with N_k = 2**(alpha*k),
    shrunk by eps_k = 2**(-(1+alpha)*k) and shifted to x = 2**(-k); its strip
    set is A x [-3N_k, 4N_k] union [-3N_k, 4N_k] x A for the interpolating set
    A of count N_k.  Scaling the whole picture by 2**((1+alpha)*K) clears every
    denominator, so block k lives at integer unit factor 2**((1+alpha)*(K-k)).
    The interval factors of the strips materialize as full integer segments in
    the global frame.
    """
    if not isinstance(alpha, int) or alpha < 1:
        raise ParameterError(f"alpha must be an integer >= 1, got {alpha!r}")
    if not isinstance(K, int) or not 1 <= K <= 12:
        raise ParameterError(f"block count must be an integer in 1..12, got {K!r}")
    scale = 2 ** ((1 + alpha) * K)

    level_sets: list[tuple[int, int, int, IntSet1D]] = []
    estimate = 0
    for k in range(1, K + 1):
        n = 2 ** (alpha * k)
        factor = 2 ** ((1 + alpha) * (K - k))
        a = gen_AN_general(n, budget=budget)
        estimate += 2 * len(a) * (7 * n * factor + 1) + n * n
        level_sets.append((k, n, factor, a))
    require_budget(estimate, DEFAULT_ELEMENT_BUDGET,
                   f"countable truncation with {K} blocks", budget)

    blocks = []
    for k, n, factor, a in level_sets:
        off_x = 2 ** ((1 + alpha) * K - k)
        lo, hi = -3 * n * factor, 4 * n * factor
        pts = set()
        for v in a:
            xv = off_x + factor * v
            yv = factor * v
            for t in range(lo, hi + 1):
                pts.add((xv, t))
                pts.add((off_x + t, yv))
        centers = PointSet2D((off_x + factor * i, factor * j)
                             for i in range(n) for j in range(n))
        blocks.append(CountableBlock(k=k, n=n, factor=factor, offset=(off_x, 0),
                                     centers=centers, boundary_set=PointSet2D(pts)))
    return CountableTruncation(alpha=alpha, K=K, scale=scale, blocks=tuple(blocks))


# ---------------------------------------------------------------------------
# Dyadic splicing

def default_a_sequence(n: int) -> tuple[int, ...]:
    """The doubly exponential depth sequence 0, 3, 15, 255, ... (2**2**j - 1).

    Only the first couple of levels fit under the 40-bit index guard; deeper
    splices want a custom (slower-growing) sequence.
    """
    if not isinstance(n, int) or not 0 <= n <= 5:
        raise ParameterError(f"level count must be an integer in 0..5, got {n!r}")
    return (0,) + tuple(2 ** (2**j) - 1 for j in range(1, n + 1))


def splice_En(patterns: Sequence[Collection], a: Sequence[int],
              n: int | None = None, d: int = 1, *,
              budget: int | None = None) -> frozenset:
    """Concatenate per-level dyadic cell patterns into depth-a_n cell indices.

    Level j (1-based) contributes a set of cells at depth a_j - a_{j-1}: plain
    ints for d = 1, (ix, iy) pairs for d = 2, each coordinate in
    [0, 2**(a_j - a_{j-1})).  A choice of one cell per level concatenates to
    the depth-a_n cell whose per-axis index is sum_j idx_j * 2**(a_n - a_j);
    the result is the set of all such choices.  Cartesian products pass
    through exactly: splicing the per-axis pairing of two d = 1 pattern
    sequences yields the product of their splices.
    """
    if d not in (1, 2):
        raise ParameterError(f"dimension must be 1 or 2, got {d!r}")
    if n is None:
        n = len(patterns)
    elif n != len(patterns):
        raise ParameterError(f"n = {n} but {len(patterns)} pattern levels given")
    a = tuple(int(v) for v in a)
    if len(a) < n + 1:
        raise ParameterError(f"need {n + 1} depth checkpoints, got {len(a)}")
    a = a[:n + 1]
    if a[0] != 0 or any(u >= v for u, v in zip(a, a[1:])):
        raise ParameterError(f"depth checkpoints must increase strictly from 0, got {a}")
    if a[-1] > 40:
        raise RangeError(f"total depth {a[-1]} exceeds the 40-bit index guard")

    size = 1
    for level in patterns:
        size *= len(level)
    require_budget(size, DEFAULT_ELEMENT_BUDGET, "spliced cell set", budget)

    def cell_axes(cell, width: int, j: int) -> tuple[int, ...]:
        axes = (cell,) if d == 1 else tuple(cell)
        if len(axes) != d:
            raise ParameterError(f"level {j}: cell {cell!r} is not {d}-dimensional")
        for v in axes:
            if not isinstance(v, (int, np.integer)) or not 0 <= v < width:
                raise RangeError(f"level {j}: cell index {cell!r} outside [0, {width})")
        return axes

    current: set[tuple[int, ...]] = {(0,) * d}
    for j, level in enumerate(patterns, start=1):
        t = a[j] - a[j - 1]
        width = 2**t
        checked = [cell_axes(cell, width, j) for cell in level]
        current = {tuple((prev << t) | ax for prev, ax in zip(acc, axes))
                   for acc in current for axes in checked}
    if d == 1:
        return frozenset(v[0] for v in current)
    return frozenset(current)
