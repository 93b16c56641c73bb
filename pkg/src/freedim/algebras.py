"""Structured generator families and their atom-growth bounds.

Covers initial segments of finite chains (interval algebras), pseudotrees
with their initial chain algebras, concrete free products realized as
cylinder families on a product ground set, and certification that a family
has no ``d + 1`` independent members.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .setsys import SetFamily, atoms, binomial_bound, independent_levels


@dataclass(frozen=True)
class ChainCuts:
    """Cuts ``c`` on the chain ``0 < 1 < ... < length-1``; cut ``c`` is ``[0, c]``."""

    length: int
    cuts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(self.cuts))
        if self.length < 0:
            raise ValueError("chain length must be >= 0")
        for c in self.cuts:
            if not 0 <= c < self.length:
                raise ValueError(f"cut {c} outside 0..{self.length - 1}")


def chain_initial_segments(chain: ChainCuts) -> SetFamily:
    points = np.arange(chain.length)
    matrix = points[None, :] <= np.asarray(chain.cuts, dtype=int).reshape(-1, 1)
    return SetFamily(chain.length, matrix)


def heindorf_check(family: SetFamily) -> tuple[bool, tuple[int, int] | None]:
    """Every two members comparable or disjoint? Else the lex-first bad pair."""
    m = family.matrix
    for i, j in combinations(range(len(family)), 2):
        a, b = m[i], m[j]
        meet = a & b
        if meet.any() and not (np.array_equal(meet, a) or np.array_equal(meet, b)):
            return False, (i, j)
    return True, None


@dataclass(frozen=True)
class Pseudotree:
    """A finite pseudotree encoded by a parent map.

    ``s <= t`` iff ``s`` lies on the parent path from ``t`` (inclusive). Every
    down-set is then a chain by construction.
    """

    parent: tuple[int | None, ...]

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        n = len(self.parent)
        for i, p in enumerate(self.parent):
            if p is not None and not 0 <= p < n:
                raise ValueError(f"parent of node {i} is {p}, outside 0..{n - 1}")
        cycle = self._find_cycle()
        if cycle:
            raise ValueError(f"parent map has a cycle: {' -> '.join(map(str, cycle))}")

    def _find_cycle(self) -> list[int] | None:
        state = [0] * len(self.parent)  # 0 new, 1 on stack, 2 done
        for start in range(len(self.parent)):
            path = []
            v = start
            while v is not None and state[v] == 0:
                state[v] = 1
                path.append(v)
                v = self.parent[v]
            if v is not None and state[v] == 1:
                return path[path.index(v):] + [v]
            for u in path:
                state[u] = 2
        return None

    def __len__(self) -> int:
        return len(self.parent)

    @property
    def roots(self) -> list[int]:
        return [i for i, p in enumerate(self.parent) if p is None]

    def down_set(self, t: int) -> list[int]:
        """Nodes ``s <= t``, from ``t`` down to its root."""
        out = []
        v: int | None = t
        while v is not None:
            out.append(v)
            v = self.parent[v]
        return out

    def leq(self, s: int, t: int) -> bool:
        return s in self.down_set(t)


def wellmet_closure(tree: Pseudotree) -> Pseudotree:
    """Adjoin one new minimum below all roots when there are several roots.

    In a finite pseudotree every two nodes with a common lower bound already
    have a greatest one, so lacking a common root is the only defect.
    """
    roots = tree.roots
    if len(roots) < 2:
        return tree
    new = len(tree)
    parent = [new if p is None else p for p in tree.parent] + [None]
    return Pseudotree(tuple(parent))


def initial_chains(tree: Pseudotree, picks: Sequence[int]) -> SetFamily:
    """Family whose i-th member is the down-set of ``picks[i]``."""
    n = len(tree)
    matrix = np.zeros((len(picks), n), dtype=bool)
    for i, t in enumerate(picks):
        if not 0 <= t < n:
            raise IndexError(f"pick {t} is not a node of a {n}-node pseudotree")
        matrix[i, tree.down_set(t)] = True
    return SetFamily(n, matrix)


@dataclass(frozen=True)
class ICAReport:
    atom_count: int
    bound: int
    holds: bool
    vacuous: bool = False


def ica_bound_report(tree: Pseudotree, picks: Sequence[int]) -> ICAReport:
    """Count atoms of the initial chains of ``picks`` against ``2 * len(picks)``.

    Computed on the well-met closure. With no picks the bound is vacuous and
    reported as holding.
    """
    closed = wellmet_closure(tree)
    count = len(atoms(initial_chains(closed, picks)))
    bound = 2 * len(picks)
    if not picks:
        return ICAReport(count, bound, True, vacuous=True)
    return ICAReport(count, bound, count <= bound)


@dataclass(frozen=True)
class ProductFamily:
    """Cylinder family over the product of the factors' ground sets.

    Product points are encoded in mixed radix, last coordinate fastest
    (``numpy.ravel_multi_index`` order). ``origin[k] = (i, j)`` says member
    ``k`` is the cylinder over member ``j`` of factor ``i``.
    """

    factors: tuple[SetFamily, ...]
    family: SetFamily
    origin: tuple[tuple[int, int], ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(f.ground_size for f in self.factors)

    def encode(self, coords: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(coords), self.shape))

    def decode(self, point: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.unravel_index(point, self.shape))


def free_product(factors: Sequence[SetFamily]) -> ProductFamily:
    factors = tuple(factors)
    if not factors:
        raise ValueError("free product needs at least one factor")
    shape = tuple(f.ground_size for f in factors)
    if any(n == 0 for n in shape):
        raise ValueError(f"factor ground sets must be nonempty, got sizes {shape}")
    total = prod(shape)
    rows, origin = [], []
    for i, f in enumerate(factors):
        view = [1] * len(shape)
        view[i] = shape[i]
        for j, row in enumerate(f.matrix):
            rows.append(np.broadcast_to(row.reshape(view), shape).reshape(total))
            origin.append((i, j))
    matrix = np.array(rows, dtype=bool).reshape(len(rows), total)
    return ProductFamily(factors, SetFamily(total, matrix), tuple(origin))


@dataclass(frozen=True)
class ClassDCertificate:
    family: SetFamily
    d: int
    verified: bool
    counterexample: tuple[int, ...] | None = None


def certify_class_d(family: SetFamily, d: int) -> ClassDCertificate:
    """Verify that no ``d + 1`` members are independent."""
    if d < 0:
        raise ValueError("d must be >= 0")
    top = None
    for k, level in enumerate(independent_levels(family, max_size=d + 1), start=1):
        if k == d + 1:
            top = level[0]
    if top is not None:
        return ClassDCertificate(family, d, False, top)
    return ClassDCertificate(family, d, True)


@dataclass(frozen=True)
class GrowthRow:
    subset: tuple[int, ...]
    size: int
    atoms: int
    binomial: int
    polynomial: int

    @property
    def holds(self) -> bool:
        return self.atoms <= self.binomial <= self.polynomial


@dataclass(frozen=True)
class GrowthReport:
    d: int
    certified: bool
    rows: list[GrowthRow] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.rows)


def growth_bound_report(family: SetFamily, d: int,
                        subsets: Iterable[Sequence[int]]) -> GrowthReport:
    """Tabulate ``|Atom(F)|`` against the binomial and ``(d+1)|F|^d`` bounds.

    The bounds are only claimed when ``family`` is certified in class ``d``;
    ``certified`` records whether it is.
    """
    cert = certify_class_d(family, d)
    rows = []
    for sub in subsets:
        sub = tuple(sub)
        k = len(sub)
        rows.append(GrowthRow(sub, k, len(atoms(family.subfamily(sub))),
                              binomial_bound(k, d), max(1, (d + 1) * k ** d)))
    return GrowthReport(d, cert.verified, rows)


def sample_subsets(n_members: int, sizes: Iterable[int], per_size: int,
                   rng: np.random.Generator) -> list[tuple[int, ...]]:
    """Random member-index subsets: ``per_size`` of each size, sorted indices."""
    out = []
    for k in sizes:
        if k > n_members:
            raise ValueError(f"cannot sample {k} of {n_members} members")
        for _ in range(per_size):
            out.append(tuple(sorted(rng.choice(n_members, size=k, replace=False).tolist())))
    return out
