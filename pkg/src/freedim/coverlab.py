"""Finite cover-refinement calculus and the separated-grid counting argument.

Covers are finite families of nonempty subsets of ``range(ground_size)``
whose union is the whole ground set (or a designated support, after
restriction); cells may overlap. All function values
and thresholds are exact :class:`fractions.Fraction` values.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .setsys import SetFamily, atoms

HALF = Fraction(1, 2)
GOOD_OSCILLATION = Fraction(1, 3)


@dataclass(frozen=True)
class Cover:
    """Cells covering ``support`` (default: the whole of ``range(ground_size)``).

    A restricted cover keeps the original point labels and records the subset
    it covers in ``support``.
    """

    ground_size: int
    cells: tuple[frozenset[int], ...]
    support: frozenset[int] | None = None

    def __post_init__(self):
        cells = tuple(frozenset(c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        target = set(range(self.ground_size)) if self.support is None else set(self.support)
        if self.support is not None:
            object.__setattr__(self, "support", frozenset(self.support))
            if any(not 0 <= x < self.ground_size for x in target):
                raise ValueError("support is not inside the ground set")
        seen: set[int] = set()
        for i, c in enumerate(cells):
            if not c:
                raise ValueError(f"cell {i} is empty")
            bad = c - target
            if bad:
                raise ValueError(f"cell {i} has points outside the covered set: {sorted(bad)}")
            seen |= c
        if seen != target:
            missing = sorted(target - seen)
            raise ValueError(f"cells do not cover points {missing[:10]}")

    @property
    def points(self) -> frozenset[int]:
        if self.support is None:
            return frozenset(range(self.ground_size))
        return self.support

    @classmethod
    def of(cls, ground_size: int, cells: Iterable[Iterable[int]]) -> "Cover":
        return cls(ground_size, tuple(frozenset(c) for c in cells))

    @classmethod
    def from_intervals(cls, length: int, intervals: Iterable[tuple[int, int]]) -> "Cover":
        """Cover of the chain ``0..length-1`` by closed intervals ``[a, b]``."""
        return cls(length, tuple(frozenset(range(a, b + 1)) for a, b in intervals))

    @classmethod
    def singletons(cls, ground_size: int) -> "Cover":
        return cls(ground_size, tuple(frozenset([x]) for x in range(ground_size)))

    @classmethod
    def trivial(cls, ground_size: int) -> "Cover":
        return cls(ground_size, (frozenset(range(ground_size)),) if ground_size else ())

    def __len__(self) -> int:
        return len(self.cells)

    def cell_set(self) -> frozenset[frozenset[int]]:
        return frozenset(self.cells)

    def intervals(self) -> list[tuple[int, int]]:
        """Cells as ``(min, max)`` pairs; raises if a cell is not contiguous."""
        out = []
        for c in self.cells:
            a, b = min(c), max(c)
            if len(c) != b - a + 1:
                raise ValueError(f"cell {sorted(c)} is not an interval")
            out.append((a, b))
        return out


def _same_ground(covers: Sequence[Cover]) -> int:
    grounds = {(c.ground_size, c.points) for c in covers}
    if len(grounds) > 1:
        raise ValueError("covers live on different ground sets")
    return covers[0].ground_size


def is_refinement(fine: Cover, coarse: Cover) -> bool:
    """Every cell of ``fine`` sits inside some cell of ``coarse``."""
    _same_ground([fine, coarse])
    return all(any(c <= d for d in coarse.cells) for c in fine.cells)


def atoms_refinement(covers: Sequence[Cover]) -> Cover:
    """Coarsest partition refining all ``covers``: atoms of the pooled cells."""
    if not covers:
        raise ValueError("need at least one cover")
    n = _same_ground(covers)
    pooled = SetFamily.from_sets(n, [c for cov in covers for c in cov.cells])
    # the all-zero atom is the complement of a restricted cover's support
    cells = [c for c, sig in atoms(pooled) if any(sig)]
    return Cover(n, tuple(cells), covers[0].support)


def interval_joint_refinement(length: int, covers: Sequence[Cover]) -> Cover:
    """Joint refinement of interval covers of a chain built from their endpoints.

    Consecutive endpoints ``e < e'`` give the piece ``[e, e']``. On a discrete
    chain that piece can straddle two abutting input cells when ``e' = e + 1``;
    then ``e`` and ``e'`` fall back to singletons unless already covered. The
    result never has more pieces than there are distinct endpoints, so it
    stays within ``sum(2 * len(c))``.
    """
    if not covers:
        raise ValueError("need at least one cover")
    for cov in covers:
        if cov.ground_size != length:
            raise ValueError(f"cover ground size {cov.ground_size} != chain length {length}")
    if length == 0:
        return Cover(0, ())
    ivs = [cov.intervals() for cov in covers]
    ends = sorted({e for iv in ivs for ab in iv for e in ab})

    def fits(a: int, b: int) -> bool:
        return all(any(x <= a and b <= y for x, y in iv) for iv in ivs)

    pieces: list[tuple[int, int]] = []
    covered: set[int] = set()
    for e, f in zip(ends, ends[1:]):
        if fits(e, f):
            pieces.append((e, f))
            covered.update((e, f))
    for e in ends:
        if e not in covered:
            pieces.append((e, e))
    pieces.sort()
    return Cover.from_intervals(length, pieces)


def product_cover(c1: Cover, c2: Cover) -> Cover:
    """All rectangles ``A x B``; point ``(x, y)`` is encoded ``x * N2 + y``."""
    n2 = c2.ground_size
    cells = tuple(frozenset(x * n2 + y for x in a for y in b)
                  for a in c1.cells for b in c2.cells)
    return Cover(c1.ground_size * n2, cells)


def _dedupe(cells: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(dict.fromkeys(cells))


def push_cover(mapping: Sequence[int], target_size: int, cover: Cover) -> Cover:
    """Image cover ``{g[C]}`` under the surjection ``x -> mapping[x]``."""
    if len(mapping) != cover.ground_size:
        raise ValueError(f"map has {len(mapping)} entries, ground has {cover.ground_size}")
    if {mapping[x] for x in cover.points} != set(range(target_size)):
        raise ValueError("map is not a surjection onto the target")
    return Cover(target_size, _dedupe(frozenset(mapping[x] for x in c) for c in cover.cells))


def restrict_cover(cover: Cover, subset: Iterable[int]) -> Cover:
    """Traces ``C & L`` on a nonempty subset ``L``; empty traces are dropped.

    Point labels are kept, so the result covers ``L`` inside the same ground.
    """
    sub = frozenset(subset)
    if not sub:
        raise ValueError("cannot restrict to the empty set")
    if not sub <= cover.points:
        raise ValueError("subset is not inside the covered set")
    return Cover(cover.ground_size, _dedupe(c & sub for c in cover.cells if c & sub), sub)


@dataclass(frozen=True)
class GrowthWitness:
    """Candidate ``(family, chi, M, d)`` for the joint-refinement growth bound."""

    d: int
    M: Fraction
    chi: tuple[int, ...]
    family: tuple[Cover, ...]
    interval: bool = False

    def __post_init__(self):
        object.__setattr__(self, "M", Fraction(self.M))
        object.__setattr__(self, "chi", tuple(self.chi))
        object.__setattr__(self, "family", tuple(self.family))
        if self.d < 0:
            raise ValueError("d must be >= 0")
        if self.M <= 0:
            raise ValueError("M must be positive")
        if len(self.chi) != len(self.family):
            raise ValueError(f"chi has {len(self.chi)} values for {len(self.family)} covers")
        if any(c <= 0 for c in self.chi):
            raise ValueError("chi values must be positive")


@dataclass(frozen=True)
class WitnessRow:
    covers: tuple[int, ...]
    joint_size: int
    budget: Fraction
    passed: bool


def witness_check(w: GrowthWitness, tuples: Iterable[Sequence[int]]) -> list[WitnessRow]:
    """Compare each tuple's joint refinement size with ``M * (sum chi)^d``.

    A failing row only says this witness does not work on that tuple.
    """
    rows = []
    for t in tuples:
        t = tuple(t)
        if not t:
            raise ValueError("empty tuple of covers")
        for i in t:
            if not 0 <= i < len(w.family):
                raise IndexError(f"cover index {i} out of range")
        chosen = [w.family[i] for i in t]
        if w.interval:
            joint = interval_joint_refinement(chosen[0].ground_size, chosen)
        else:
            joint = atoms_refinement(chosen)
        budget = w.M * sum(w.chi[i] for i in t) ** w.d
        rows.append(WitnessRow(t, len(joint), budget, len(joint) <= budget))
    return rows


def oscillation(values: Sequence[Fraction], cell: Iterable[int]) -> Fraction:
    vals = [Fraction(values[x]) for x in cell]
    if not vals:
        raise ValueError("oscillation over an empty cell")
    return max(vals) - min(vals)


def is_good(cover: Cover, functions: Iterable[Sequence[Fraction]]) -> bool:
    """Each function oscillates by at most 1/3 on each cell."""
    return all(oscillation(f, c) <= GOOD_OSCILLATION
               for f in functions for c in cover.cells)


@dataclass(frozen=True)
class SeparatedInstance:
    """Points plus [0,1]-valued functions separating every pair by >= 1/2.

    ``functions[k][j]`` is the value of function ``k`` at ``points[j]``.
    """

    points: tuple
    functions: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        funcs = tuple(tuple(Fraction(v) for v in f) for f in self.functions)
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "functions", funcs)
        for k, f in enumerate(funcs):
            if len(f) != len(self.points):
                raise ValueError(f"function {k} has {len(f)} values for {len(self.points)} points")
            if any(not 0 <= v <= 1 for v in f):
                raise ValueError(f"function {k} leaves [0, 1]")
        pair = self.unseparated_pair()
        if pair is not None:
            raise ValueError(f"points {pair} are not separated by 1/2")

    def __len__(self) -> int:
        return len(self.points)

    def unseparated_pair(self) -> tuple[int, int] | None:
        n = len(self.points)
        if n < 2:
            return None
        if not self.functions:
            return (0, 1)
        den = math.lcm(*(v.denominator for f in self.functions for v in f))
        # 2|a - b| >= 1  <=>  2|A - B| >= den after scaling by den
        scaled = np.array([[int(v * den) for v in f] for f in self.functions], dtype=object)
        ok = np.zeros((n, n), dtype=bool)
        for row in scaled:
            r = row.astype(np.int64) if den < 2 ** 30 else row
            ok |= 2 * np.abs(r[:, None] - r[None, :]) >= den
        np.fill_diagonal(ok, True)
        bad = np.argwhere(~ok)
        if bad.size == 0:
            return None
        i, j = bad[0]
        return int(i), int(j)


def separated_family(n: int) -> SeparatedInstance:
    """``n + 1`` points, ``f_k`` the indicator of point ``k`` for ``k < n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    funcs = [[Fraction(int(j == k)) for j in range(n + 1)] for k in range(n)]
    return SeparatedInstance(tuple(range(n + 1)), funcs)


def build_grid_instance(d: int, n: int, p: int) -> SeparatedInstance:
    """Grid ``{0..n}^d x {0..p}`` with ``d*n`` coordinate indicators and ``p`` bumps.

    Points are coordinate tuples in lexicographic order. The first ``d * n``
    functions are ``separated_family(n)`` composed with each of the first
    ``d`` projections; the last ``p`` are indicators of ``y = 0..p-1`` on the
    last coordinate, which leave ``y = p`` at zero.
    """
    if min(d, n, p) < 1:
        raise ValueError("d, n and p must all be >= 1")
    points = tuple(itertools.product(*([range(n + 1)] * d), range(p + 1)))
    base = separated_family(n).functions
    funcs = []
    for i in range(d):
        for g in base:
            funcs.append([g[pt[i]] for pt in points])
    for i in range(p):
        funcs.append([Fraction(int(pt[d] == i)) for pt in points])
    return SeparatedInstance(points, funcs)


@dataclass(frozen=True)
class FloorCheck:
    good: bool
    floor_respected: bool
    cells: int
    points: int


def good_cover_floor(inst: SeparatedInstance, cover: Cover) -> FloorCheck:
    """If ``cover`` is good for every function, each cell holds at most one point."""
    if cover.ground_size != len(inst):
        raise ValueError("cover is not over the instance's points")
    good = is_good(cover, inst.functions)
    respected = not good or (all(len(c) <= 1 for c in cover.cells) and len(cover) >= len(inst))
    return FloorCheck(good, respected, len(cover), len(inst))


@dataclass(frozen=True)
class CountingParams:
    d: int
    m: int
    m1: int
    p: int
    n: int = 1

    def __post_init__(self):
        for name in ("d", "m", "m1", "p"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.n < 0:
            raise ValueError("n must be >= 0")


@dataclass(frozen=True)
class CountingResult:
    lhs: int
    rhs: int
    holds: bool


def counting_check(params: CountingParams) -> CountingResult:
    """``(n*d*m + p*m1)^d < (n+1)^d * (p+1)``, in exact integers."""
    d, m, m1, p, n = params.d, params.m, params.m1, params.p, params.n
    lhs = (n * d * m + p * m1) ** d
    rhs = (n + 1) ** d * (p + 1)
    return CountingResult(lhs, rhs, lhs < rhs)


def find_min_n(d: int, m: int, m1: int, p: int, limit: int) -> int | None:
    """Smallest ``n`` in ``1..limit`` where the counting inequality holds."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    CountingParams(d, m, m1, p)
    a, b = d * m, p * m1
    for n in range(1, limit + 1):
        if (n * a + b) ** d < (n + 1) ** d * (p + 1):
            return n
    return None


def exponent_fit(samples: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of ``log(joint)`` against ``log(budget)``."""
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    budgets = np.array([float(b) for b, _ in samples])
    joints = np.array([float(j) for _, j in samples])
    if np.any(budgets < 2) or np.any(joints <= 0):
        raise ValueError("budgets must be >= 2 and joint sizes positive")
    if np.all(budgets == budgets[0]):
        raise ValueError("all budgets equal; slope undefined")
    slope, _ = np.polyfit(np.log(budgets), np.log(joints), 1)
    return float(slope)
