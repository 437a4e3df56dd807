"""Exact bound checks, size-law scans, and construction verification.

The counting theorems this package exercises are all of the shape
"center count is polynomially bounded by point count".  Both directions are
kept exact: upper bounds are compared as cross-multiplied integers (never
floats — |S|^3 <= 16|B|^4 rather than |S| <= (2|B|)^(4/3)), and sharpness is
probed by finite-difference slopes of log-size against log-size across the
generated families.

`verify_construction` replays the defining property of each generator over
its full advertised center range (or a seeded sample where the range is
astronomically large) and returns machine-checkable :class:`BoundCheck`
records; `build_report` wraps any collection of those into the JSON report
shape shared by the command-line tools.
"""

from __future__ import annotations

import datetime as _dt
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import constructions as cons
from .core_sets import (
    DoubledPoint,
    IntSet1D,
    OccupancyGrid,
    ParameterError,
    PointSet2D,
)
from .dimension_lab import SlopeStep, covering_count_1d, exponent_finite_diff
from .finders import find_centers_1d, find_vertex_centers_2d, has_square_at

__all__ = [
    "DEFAULT_SEED", "BoundCheck", "ExponentReport",
    "check_main_lemma_2d", "check_main_lemma_1d",
    "family_scan", "verify_construction", "build_report",
]

DEFAULT_SEED = 20260816


@dataclass(frozen=True)
class BoundCheck:
    """One exact comparison: ok if and only if lhs <= rhs."""

    name: str
    lhs: int
    rhs: int
    ok: bool
    sizes: dict[str, int] = field(default_factory=dict)

    @classmethod
    def compare(cls, name: str, lhs: int, rhs: int, **sizes: int) -> "BoundCheck":
        return cls(name=name, lhs=lhs, rhs=rhs, ok=lhs <= rhs, sizes=dict(sizes))

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "ok": self.ok, "sizes": dict(self.sizes)}


@dataclass(frozen=True)
class ExponentReport:
    """Size-law samples for one family plus their finite-difference slopes."""

    family: str
    rows: tuple[tuple[int, int, int], ...]   # (param, n1, n2)
    slopes: tuple[SlopeStep, ...]
    target: float

    def as_dicts(self) -> list[dict]:
        return [{"family": self.family, "lo": s.lo, "hi": s.hi,
                 "slope": None if not s.ok or math.isnan(s.slope) else s.slope,
                 "target": self.target}
                for s in self.slopes]


def check_main_lemma_2d(b: PointSet2D, *, s_count: int | None = None,
                        budget: int | None = None) -> BoundCheck:
    """Exact form of the planar bound: |S|^3 <= 16 |B|^4.

    S is the set of centers of axis-parallel squares with all four vertices
    in B; pass s_count if it is already known to skip the finder run.
    """
    if s_count is None:
        s_count = find_vertex_centers_2d(b, mode="count", budget=budget)
    return BoundCheck.compare("vertex_centers_cubed_vs_16_points_fourth",
                              s_count**3, 16 * len(b) ** 4,
                              points=len(b), centers=s_count)


def check_main_lemma_1d(a: IntSet1D, *, s_count: int | None = None,
                        budget: int | None = None) -> BoundCheck:
    """Exact form of the two-interval bound: |S|^3 <= 16 |A|^8."""
    if s_count is None:
        s_count = find_centers_1d(a, mode="count", budget=budget)
    return BoundCheck.compare("common_radius_pairs_cubed_vs_16_elems_eighth",
                              s_count**3, 16 * len(a) ** 8,
                              elems=len(a), centers=s_count)


# ---------------------------------------------------------------------------
# Size-law scans

_FAMILIES = ("dk_vertex", "dk_boundary", "dk_size", "an_cover")


def family_scan(family: str, k_range: Iterable[int],
                jobs: int | None = None) -> ExponentReport:
    """Exact sizes and log-log slopes across one generated family.

    dk_vertex:   (k, |B|, |S|) of the vertex example, slope of log|S| against
                 log|B|, target 4/3.
    dk_boundary: (k, |S|, |B|) of the boundary example, target 7/8.
    dk_size:     (k, k, |D_k|), target 3.
    an_cover:    (j, R_j, covering count of the depth-max(k_range) set at
                 scale R_j = 200*(p!/j!)**4); counts shrink as the scale
                 grows, so the slope targets -3/4.

    Sizes come from the exact closed forms / digit-set enumeration — nothing
    planar is materialized — so slopes are bit-reproducible for a given range.
    Rows are independent per parameter; `jobs` > 1 computes them in a thread
    pool and reassembles in parameter order, so output never depends on jobs.
    """
    if family not in _FAMILIES:
        raise ParameterError(f"unknown family {family!r}; choose from {_FAMILIES}")
    ks = sorted(set(k_range))
    if len(ks) < 2:
        raise ParameterError("a scan needs at least two parameter values")
    lo_k, hi_cap = (1, 10) if family == "an_cover" else (2, 16)
    if ks[0] < lo_k or ks[-1] > hi_cap:
        raise ParameterError(f"{family} scan supports parameters in "
                             f"{lo_k}..{hi_cap}, got {ks[0]}..{ks[-1]}")

    if family == "dk_size":
        target = 3.0
        def row(k: int) -> tuple[int, int, int]:
            return k, k, len(cons.gen_Dk(k))
    elif family == "dk_vertex":
        target = 4.0 / 3.0
        def row(k: int) -> tuple[int, int, int]:
            b_size, s_size = cons.vertex_example_sizes(k)
            return k, b_size, s_size
    elif family == "dk_boundary":
        target = 7.0 / 8.0
        def row(k: int) -> tuple[int, int, int]:
            b_size, s_size = cons.boundary_example_sizes(k)
            return k, s_size, b_size
    else:  # an_cover
        target = -0.75
        p = ks[-1]
        if not 2 <= p <= 6:
            raise ParameterError(f"covering scan depth must be in 2..6, got {p}")
        a = cons.gen_AN(p)
        pf = math.factorial(p)
        def row(j: int) -> tuple[int, int, int]:
            r_j = 200 * (pf // math.factorial(j)) ** 4
            return j, r_j, covering_count_1d(a, r_j)

    if jobs is not None and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, ks))
    else:
        rows = [row(k) for k in ks]
    return ExponentReport(family=family, rows=tuple(rows),
                          slopes=tuple(exponent_finite_diff(rows)), target=target)


# ---------------------------------------------------------------------------
# Construction verification (replay of the defining properties)

def _verify_dk(k: int) -> list[BoundCheck]:
    """Exhaustive witness replay over all of {0..k**4-1}**2, vectorized.

    Builds the radius table r(x, y) digit-by-digit and checks the four
    shifted memberships through a boolean lookup over [-k**4, 2k**4].
    """
    dset = cons.gen_Dk(k)
    n = k**4
    mem = np.zeros(3 * n + 1, dtype=bool)
    mem[dset.as_array() + n] = True

    v = np.arange(n, dtype=np.int64)
    x0, x1 = v % k, (v // k) % k
    y2, y3 = (v // k**2) % k, v // k**3
    r = np.abs((x0 - k * x1)[:, None] + (k**2 * y2 - k**3 * y3)[None, :])
    np.maximum(r, 1, out=r)  # the fallback radius where the formula gives 0

    xs = v[:, None]
    ys = v[None, :]
    good = (mem[xs - r + n] & mem[xs + r + n] & mem[ys - r + n] & mem[ys + r + n])
    misses = int(good.size - np.count_nonzero(good))
    radius_misses = int(np.count_nonzero(r > n))
    sizes = {"k": k, "elems": len(dset), "centers": n * n}
    return [
        BoundCheck.compare(f"dk{k}_witness_misses", misses, 0, **sizes),
        BoundCheck.compare(f"dk{k}_radius_over_cap", radius_misses, 0, **sizes),
        BoundCheck.compare(f"dk{k}_size_cap", len(dset), cons.dk_size_cap(k), **sizes),
        BoundCheck.compare(f"dk{k}_range_lo", -n, dset.min(), **sizes),
        BoundCheck.compare(f"dk{k}_range_hi", dset.max(), 2 * n, **sizes),
    ]


def _verify_an(p: int, seed: int | None, samples: int,
               budget: int | None) -> list[BoundCheck]:
    a = cons.gen_AN(p, budget=budget)
    members = frozenset(a.elems)
    n = cons.an_modulus(p)

    if n * n <= samples:
        pairs: Iterable[tuple[int, int]] = ((x, y) for x in range(n) for y in range(n))
        tested = n * n
        exhaustive = True
    else:
        rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
        xs = rng.integers(0, n, size=samples)
        ys = rng.integers(0, n, size=samples)
        pairs = zip(xs.tolist(), ys.tolist())
        tested = samples
        exhaustive = False

    misses = 0
    r_misses = 0
    for x, y in pairs:
        r = cons.witness_r_AN(x, y, p)
        if not (1 <= r <= 3 * n):
            r_misses += 1
        if not (x - r in members and x + r in members
                and y - r in members and y + r in members):
            misses += 1
    sizes = {"p": p, "elems": len(a), "tested": tested, "exhaustive": int(exhaustive)}
    checks = [
        BoundCheck.compare(f"an{p}_witness_misses", misses, 0, **sizes),
        BoundCheck.compare(f"an{p}_radius_out_of_band", r_misses, 0, **sizes),
    ]
    pf = math.factorial(p)
    cap = 1
    for j in range(1, p + 1):
        if j > 1:
            cap *= len(cons.gen_Dk(j))
        r_j = 200 * (pf // math.factorial(j)) ** 4
        checks.append(BoundCheck.compare(
            f"an{p}_cover_scale{j}", covering_count_1d(a, r_j), cap,
            p=p, elems=len(a), length=r_j))
    return checks


def _verify_boundary(k: int, budget: int | None) -> list[BoundCheck]:
    """Vectorized witness replay for the strip example: every center of the
    open grid carries a full square boundary, sides landing on strip lines."""
    b, s = cons.gen_boundary_example(k, budget=budget)
    grid = OccupancyGrid.from_points(b, budget=budget)
    n = k**4

    v = np.arange(1, n, dtype=np.int64)
    x0, x1 = v % k, (v // k) % k
    y2, y3 = (v // k**2) % k, v // k**3
    r = np.abs((x0 - k * x1)[:, None] + (k**2 * y2 - k**3 * y3)[None, :])
    np.maximum(r, 1, out=r)

    # Four full sides per center, each a prefix-sum difference on the grid.
    px, py = grid._px, grid._py
    sx = (v - grid.x0)[:, None]
    sy = (v - grid.y0)[None, :]
    length = 2 * r + 1
    top = px[sx + r + 1, sy + r] - px[sx - r, sy + r]
    bot = px[sx + r + 1, sy - r] - px[sx - r, sy - r]
    lef = py[sx - r, sy + r + 1] - py[sx - r, sy - r]
    rig = py[sx + r, sy + r + 1] - py[sx + r, sy - r]
    good = (top == length) & (bot == length) & (lef == length) & (rig == length)
    misses = int(good.size - np.count_nonzero(good))

    b_formula, s_formula = cons.boundary_example_sizes(k)
    sizes = {"k": k, "points": len(b), "centers": len(s)}
    return [
        BoundCheck.compare(f"boundary{k}_witness_misses", misses, 0, **sizes),
        BoundCheck.compare(f"boundary{k}_size_formula_gap",
                           abs(len(b) - b_formula) + abs(len(s) - s_formula), 0,
                           **sizes),
    ]


def _verify_countable(alpha: int, big_k: int, budget: int | None) -> list[BoundCheck]:
    trunc = cons.gen_countable_truncation(alpha, big_k, budget=budget)
    checks = []
    for block in trunc.blocks:
        grid = OccupancyGrid.from_points(block.boundary_set, budget=budget)
        r_cap = 3 * block.n * block.factor
        misses = 0
        for x, y in block.centers:
            rho = has_square_at(block.boundary_set, DoubledPoint(2 * x, 2 * y),
                                "boundary", r_max=r_cap, grid=grid)
            if rho is None or rho > 2 * r_cap:
                misses += 1
        checks.append(BoundCheck.compare(
            f"countable_block{block.k}_missing_boundaries", misses, 0,
            alpha=alpha, K=big_k, block=block.k, n=block.n,
            centers=len(block.centers), points=len(block.boundary_set)))
    return checks


def verify_construction(name: str, *, k: int | None = None, p: int | None = None,
                        alpha: int | None = None, K: int | None = None,
                        seed: int | None = None, samples: int = 100_000,
                        budget: int | None = None) -> list[BoundCheck]:
    """Replay the defining property of a generated construction.

    name='dk'        needs k: exhaustive witness check over {0..k**4-1}**2.
    name='an'        needs p: witness + radius band + covering caps
                     (exhaustive when (p!)**8 <= samples, else seeded sample).
    name='boundary'  needs k: full-boundary witness replay on the strip example.
    name='countable' needs alpha, K: per-block boundary search for every
                     scaled center, radius capped at 3*N_k in block units.
    """
    if name == "dk":
        if k is None:
            raise ParameterError("verify dk needs k")
        return _verify_dk(k)
    if name == "an":
        if p is None:
            raise ParameterError("verify an needs p")
        return _verify_an(p, seed, samples, budget)
    if name == "boundary":
        if k is None:
            raise ParameterError("verify boundary needs k")
        return _verify_boundary(k, budget)
    if name == "countable":
        if alpha is None or K is None:
            raise ParameterError("verify countable needs alpha and K")
        return _verify_countable(alpha, K, budget)
    raise ParameterError(f"unknown construction {name!r}; "
                         "choose dk, an, boundary, or countable")


def build_report(suite: str, checks: Sequence[BoundCheck],
                 reports: Sequence[ExponentReport] = (),
                 seed: int | None = None) -> dict:
    """The shared JSON report object for the command-line tools."""
    slopes: list[dict] = []
    for rep in reports:
        slopes.extend(rep.as_dicts())
    return {
        "suite": suite,
        "timestamp": _dt.datetime.now(_dt.timezone.utc)
                        .strftime("%Y-%m-%dT%H:%M:%SZ"),
        "seed": seed,
        "checks": [c.as_dict() for c in checks],
        "slopes": slopes,
    }
