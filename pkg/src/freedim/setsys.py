"""Finite set families and the Boolean subalgebras they generate.

Points of a ground set of size ``N`` are the integers ``0..N-1``. A family is
stored as a read-only boolean matrix with one row per member (its
characteristic vector), so member order is stable and duplicates are allowed.

A *signature* is a tuple of 0/1 values, one per member, recording which
members contain a given point. Points sharing a signature form an atom of the
generated subalgebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

Signature = tuple[int, ...]


class SetFamily:
    """An indexed list of subsets of ``range(ground_size)``."""

    __slots__ = ("ground_size", "matrix")

    def __init__(self, ground_size: int, matrix: np.ndarray):
        if ground_size < 0:
            raise ValueError(f"ground size must be >= 0, got {ground_size}")
        matrix = np.array(matrix, dtype=bool)
        if matrix.size == 0 and matrix.ndim < 2:
            matrix = matrix.reshape(0, ground_size)
        if matrix.ndim != 2 or matrix.shape[1] != ground_size:
            raise ValueError(f"expected a (members, {ground_size}) matrix, got {matrix.shape}")
        matrix.setflags(write=False)
        self.ground_size = int(ground_size)
        self.matrix = matrix

    @classmethod
    def from_sets(cls, ground_size: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        sets = [list(s) for s in sets]
        matrix = np.zeros((len(sets), ground_size), dtype=bool)
        for i, s in enumerate(sets):
            for x in s:
                if not 0 <= x < ground_size:
                    raise IndexError(f"member {i}: point {x} outside 0..{ground_size - 1}")
                matrix[i, x] = True
        return cls(ground_size, matrix)

    def __len__(self) -> int:
        return self.matrix.shape[0]

    def __iter__(self) -> Iterator[frozenset[int]]:
        return (self.member(i) for i in range(len(self)))

    def member(self, i: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.matrix[i]).tolist())

    @property
    def members(self) -> list[frozenset[int]]:
        return list(self)

    def subfamily(self, indices: Sequence[int]) -> "SetFamily":
        return SetFamily(self.ground_size, self.matrix[list(indices)])

    def extended(self, other: "SetFamily") -> "SetFamily":
        if other.ground_size != self.ground_size:
            raise ValueError("ground size mismatch")
        return SetFamily(self.ground_size, np.vstack([self.matrix, other.matrix]))

    def duplicates(self) -> list[tuple[int, int]]:
        """Pairs ``(i, j)``, ``i < j``, of members that are equal as sets."""
        seen: dict[bytes, int] = {}
        out = []
        for j, row in enumerate(self.matrix):
            key = np.packbits(row).tobytes()
            if key in seen:
                out.append((seen[key], j))
            else:
                seen[key] = j
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return (self.ground_size == other.ground_size
                and self.matrix.shape == other.matrix.shape
                and bool(np.array_equal(self.matrix, other.matrix)))

    def __hash__(self) -> int:
        return hash((self.ground_size, self.matrix.shape, self.matrix.tobytes()))

    def __repr__(self) -> str:
        sets = [sorted(s) for s in self]
        return f"SetFamily({self.ground_size}, {sets})"


@dataclass(frozen=True)
class AtomPartition:
    """Atoms of a generated subalgebra, each tagged with its signature.

    Cells are ordered by ascending signature (lexicographic, member 0 first).
    """

    ground_size: int
    cells: tuple[frozenset[int], ...]
    signatures: tuple[Signature, ...]

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(zip(self.cells, self.signatures))


@dataclass(frozen=True)
class TraceSet:
    """A set of 0/1 patterns of common length, i.e. a subset of ``2^T``."""

    length: int
    patterns: frozenset[Signature]

    def __post_init__(self):
        for p in self.patterns:
            if len(p) != self.length:
                raise ValueError(f"pattern {p} has length {len(p)}, expected {self.length}")
            if any(b not in (0, 1) for b in p):
                raise ValueError(f"pattern {p} is not a 0/1 vector")

    @classmethod
    def of(cls, length: int, patterns: Iterable[Sequence[int] | str]) -> "TraceSet":
        """Build from tuples or bit strings such as ``"0110"``."""
        out = set()
        for p in patterns:
            out.add(tuple(int(b) for b in p))
        return cls(length, frozenset(out))

    def __len__(self) -> int:
        return len(self.patterns)

    def restrict(self, coords: Sequence[int]) -> set[Signature]:
        return {tuple(p[i] for i in coords) for p in self.patterns}

    def shatters(self, coords: Sequence[int]) -> bool:
        return len(self.restrict(coords)) == 2 ** len(coords)

    def as_strings(self) -> list[str]:
        return sorted("".join(map(str, p)) for p in self.patterns)


def _labels(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Group the columns of ``rows`` (points) by their bit pattern.

    Returns the distinct patterns in ascending lexicographic order and, for
    every point, the index of its pattern.
    """
    k, n = rows.shape
    if k == 0:
        return np.zeros((1, 0), dtype=bool), np.zeros(n, dtype=np.intp)
    patterns, inverse = np.unique(rows.T, axis=0, return_inverse=True)
    return patterns, np.asarray(inverse).ravel()


def atoms(family: SetFamily) -> AtomPartition:
    """Partition the ground set into atoms of the subalgebra generated by ``family``."""
    n = family.ground_size
    if n == 0:
        return AtomPartition(0, (), ())
    patterns, inverse = _labels(family.matrix)
    order = np.argsort(inverse, kind="stable")
    bounds = np.cumsum(np.bincount(inverse, minlength=len(patterns)))[:-1]
    cells = tuple(frozenset(c.tolist()) for c in np.split(order, bounds))
    sigs = tuple(tuple(int(b) for b in p) for p in patterns)
    return AtomPartition(n, cells, sigs)


def realized_trace(family: SetFamily) -> TraceSet:
    """Signatures of the nonempty atoms."""
    return TraceSet(len(family), frozenset(atoms(family).signatures))


def _in_generated_algebra(row: np.ndarray, rest: np.ndarray) -> bool:
    # row is a union of atoms of `rest` iff it is constant on every atom
    _, labels = _labels(rest)
    if labels.size == 0:
        return True
    inside = np.zeros(labels.max() + 1, dtype=np.int8)
    outside = np.zeros_like(inside)
    np.maximum.at(inside, labels, row.astype(np.int8))
    np.maximum.at(outside, labels, (~row).astype(np.int8))
    return not np.any(inside & outside)


def is_irredundant(family: SetFamily) -> tuple[bool, int | None]:
    """Check that no member lies in the algebra generated by the others.

    Returns ``(True, None)`` or ``(False, i)`` with ``i`` the smallest
    offending member index.
    """
    m = family.matrix
    for i in range(len(family)):
        rest = np.delete(m, i, axis=0)
        if _in_generated_algebra(m[i], rest):
            return False, i
    return True, None


def _check_indices(family: SetFamily, indices: Iterable[int]) -> tuple[int, ...]:
    idx = tuple(sorted(set(indices)))
    for i in idx:
        if not 0 <= i < len(family):
            raise IndexError(f"member index {i} out of range for a family of {len(family)}")
    return idx


def _independent(matrix: np.ndarray, ground_size: int, idx: tuple[int, ...]) -> bool:
    if ground_size < 2 ** len(idx):
        return False
    if not idx:
        return True
    k = len(idx)
    if k <= 20:
        # pack each point's signature into an int and count distinct codes
        weights = 1 << np.arange(k, dtype=np.int64)
        codes = weights @ matrix[list(idx)]
        return bool(np.count_nonzero(np.bincount(codes, minlength=1 << k)) == 1 << k)
    patterns, _ = _labels(matrix[list(idx)])
    return len(patterns) == 2 ** k


def is_independent(family: SetFamily, indices: Iterable[int]) -> bool:
    """True iff every Boolean cell cut out by the chosen members is nonempty."""
    idx = _check_indices(family, indices)
    return _independent(family.matrix, family.ground_size, idx)


def independent_levels(family: SetFamily, max_size: int | None = None) -> Iterator[list[tuple[int, ...]]]:
    """Yield, for k = 1, 2, ..., the lex-sorted list of independent k-subsets.

    Subsets of independent sets are independent, so level k+1 is grown only
    from level k. Stops at the first empty level or at ``max_size``.
    """
    m, n = len(family), family.ground_size
    level = [(i,) for i in range(m) if _independent(family.matrix, n, (i,))]
    k = 1
    while level and (max_size is None or k <= max_size):
        yield level
        if max_size is not None and k == max_size:
            return
        known = set(level)
        nxt = []
        for s in level:
            for j in range(s[-1] + 1, m):
                t = s + (j,)
                if all(t[:r] + t[r + 1:] in known for r in range(k)) and \
                        _independent(family.matrix, n, t):
                    nxt.append(t)
        level = nxt
        k += 1


def independence_number(family: SetFamily) -> tuple[int, tuple[int, ...]]:
    """Largest number of independent members, with the lex-smallest witness.

    Exhaustive, so practical only for families of a couple dozen members.
    """
    best: tuple[int, ...] = ()
    for level in independent_levels(family):
        best = level[0]
    return len(best), best


def binomial_bound(n: int, d: int) -> int:
    """``C(n,0) + C(n,1) + ... + C(n,d)``; equals ``2**n`` once ``d >= n``."""
    if n < 0 or d < 0:
        raise ValueError("n and d must be natural numbers")
    return sum(comb(n, i) for i in range(min(d, n) + 1))


def sauer_shelah_find(trace: TraceSet, d: int) -> tuple[int, ...] | None:
    """Lex-smallest coordinate set of size ``d + 1`` shattered by ``trace``.

    Whenever ``len(trace) > binomial_bound(trace.length, d)`` such a set
    exists and is returned. Otherwise the result is a genuinely shattered set
    or ``None``. For ``d >= trace.length`` the answer is always ``None``.
    """
    n = trace.length
    if d < 0:
        raise ValueError("d must be >= 0")
    if d >= n or len(trace) < 2 ** (d + 1):
        return None
    for s in combinations(range(n), d + 1):
        if trace.shatters(s):
            return s
    return None
