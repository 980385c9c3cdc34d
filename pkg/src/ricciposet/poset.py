"""Finite posets given by their Hasse diagram, rank functions and local incidence counts.

A :class:`Poset` is built from a list of element identifiers and a set of
cover pairs ``(lower, upper)``.  Construction validates that the pairs form a
genuine Hasse diagram: redundant transitive pairs are rejected, never
repaired.  All the per-element counts used by the curvature formulas live
here (:func:`local_counts`, :func:`parallel_neighbors`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    DuplicateElement,
    NotACover,
    NotComparable,
    NotRanked,
    SelfCover,
    UnknownIdentifier,
)


class Poset:
    """Immutable finite poset stored as a cover relation.

    Parameters
    ----------
    elements : sequence of str
        Element identifiers.  Their order fixes iteration order everywhere.
    covers : iterable of (str, str)
        Pairs ``(lower, upper)`` meaning ``lower`` is covered by ``upper``.

    Use :func:`build_poset` rather than calling the constructor directly if
    the input comes from an untrusted source; both validate identically.
    """

    def __init__(self, elements: Sequence[str], covers: Iterable[tuple[str, str]]):
        elements = tuple(elements)
        index: dict[str, int] = {}
        for pos, x in enumerate(elements):
            if x in index:
                raise DuplicateElement(f"element {x!r} listed twice")
            index[x] = pos

        pairs = set()
        for pair in covers:
            lo, hi = pair
            for x in (lo, hi):
                if x not in index:
                    raise UnknownIdentifier(f"cover ({lo!r}, {hi!r}) references unknown element {x!r}")
            if lo == hi:
                raise SelfCover(f"element {lo!r} covers itself")
            pairs.add((lo, hi))

        up: dict[str, list[str]] = {x: [] for x in elements}
        down: dict[str, list[str]] = {x: [] for x in elements}
        for lo, hi in pairs:
            up[lo].append(hi)
            down[hi].append(lo)
        self.elements = elements
        self.covers = frozenset(pairs)
        self._index = index
        # neighbour lists follow element order so every derived report is deterministic
        self._up = {x: tuple(sorted(v, key=index.__getitem__)) for x, v in up.items()}
        self._down = {x: tuple(sorted(v, key=index.__getitem__)) for x, v in down.items()}
        self._check_hasse()

    # -- structure ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.elements, self.covers))

    def upper_covers(self, x: str) -> tuple[str, ...]:
        self._require(x)
        return self._up[x]

    def lower_covers(self, x: str) -> tuple[str, ...]:
        self._require(x)
        return self._down[x]

    def position(self, x: str) -> int:
        self._require(x)
        return self._index[x]

    def _require(self, x: str) -> None:
        if x not in self._index:
            raise UnknownIdentifier(f"unknown element {x!r}")

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        indeg = {x: len(self._down[x]) for x in self.elements}
        ready = [x for x in self.elements if indeg[x] == 0]
        order: list[str] = []
        while ready:
            nxt: list[str] = []
            for x in ready:
                order.append(x)
                for y in self._up[x]:
                    indeg[y] -= 1
                    if indeg[y] == 0:
                        nxt.append(y)
            ready = sorted(nxt, key=self._index.__getitem__)
        if len(order) != len(self.elements):
            stuck = next(x for x in self.elements if indeg[x] > 0)
            raise CycleDetected(f"cover relation has a cycle through {stuck!r}")
        return tuple(order)

    @cached_property
    def _above_mask(self) -> dict[str, int]:
        """Bitmask (by element position) of everything strictly above each element."""
        mask: dict[str, int] = {}
        for x in reversed(self.topological_order):
            m = 0
            for y in self._up[x]:
                m |= mask[y] | (1 << self._index[y])
            mask[x] = m
        return mask

    def _check_hasse(self) -> None:
        above = self._above_mask  # raises CycleDetected first
        for lo, hi in sorted(self.covers, key=lambda p: (self._index[p[0]], self._index[p[1]])):
            bit = 1 << self._index[hi]
            for mid in self._up[lo]:
                if mid != hi and above[mid] & bit:
                    raise NotACover(f"({lo!r}, {hi!r}) is implied by the path through {mid!r}")

    def less_equal(self, a: str, b: str) -> bool:
        self._require(a)
        self._require(b)
        return a == b or bool(self._above_mask[a] >> self._index[b] & 1)

    def strictly_above(self, x: str) -> tuple[str, ...]:
        self._require(x)
        m = self._above_mask[x]
        return tuple(y for y in self.elements if m >> self._index[y] & 1)

    def minimal_elements(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if not self._down[x])

    def is_covering_finite(self) -> bool:
        # every finite poset is covering-finite
        return True

    @cached_property
    def rank_function(self) -> "RankFunction":
        return compute_rank(self)


def build_poset(elements: Sequence[str], covers: Iterable[Sequence[str]]) -> Poset:
    """Validate and build a poset from element ids and ``(lower, upper)`` cover pairs."""
    pairs = []
    for pair in covers:
        if len(pair) != 2:
            raise UnknownIdentifier(f"cover entry {pair!r} is not a pair")
        pairs.append((pair[0], pair[1]))
    return Poset(elements, pairs)


@dataclass(frozen=True)
class RankFunction:
    rank: dict[str, int]
    r: int

    def __getitem__(self, x: str) -> int:
        return self.rank[x]


def compute_rank(p: Poset) -> RankFunction:
    """Return the unique rank function of ``p``.

    Ranks are propagated upward from the minimal elements; an element whose
    lower covers disagree on rank raises :class:`NotRanked` with that element
    as witness.
    """
    rank: dict[str, int] = {}
    for x in p.topological_order:
        below = p._down[x]
        if not below:
            rank[x] = 0
            continue
        values = {rank[z] for z in below}
        if len(values) > 1:
            raise NotRanked(
                f"element {x!r} covers elements of ranks {min(values)} and {max(values)}",
                witness=x,
            )
        rank[x] = values.pop() + 1
    rank = {x: rank[x] for x in p.elements}
    return RankFunction(rank=rank, r=max(rank.values(), default=0))


def level_sets(p: Poset, rf: RankFunction | None = None) -> list[tuple[str, ...]]:
    rf = rf or p.rank_function
    if not p.elements:
        return []
    levels: list[list[str]] = [[] for _ in range(rf.r + 1)]
    for x in p.elements:
        levels[rf[x]].append(x)
    return [tuple(level) for level in levels]


def f_vector(p: Poset, rf: RankFunction | None = None) -> list[int]:
    return [len(level) for level in level_sets(p, rf)]


def rank_level(p: Poset, i: int) -> tuple[str, ...]:
    """Elements of rank ``i``; empty for ranks outside ``0..r``."""
    rf = p.rank_function
    return tuple(x for x in p.elements if rf[x] == i)


@dataclass(frozen=True)
class LocalCounts:
    """Upper/lower cover counts of one element and their second-order sums.

    ``a``/``b`` are the numbers of upper/lower covers, ``u`` sums the lower
    cover counts of the upper covers, ``d`` sums the upper cover counts of
    the lower covers, and ``n`` counts parallel neighbours.
    """

    a: int
    b: int
    u: int
    d: int
    n: int


def parallel_neighbors(
    p: Poset, rf: RankFunction | None, x: str
) -> tuple[frozenset[str], frozenset[str], int]:
    """Return ``(coface_set, face_set, n)`` for ``x``.

    ``coface_set`` holds the other elements sharing an upper cover with ``x``,
    ``face_set`` those sharing a lower cover; ``n`` is the size of their
    symmetric difference.  ``x`` itself is never its own neighbour.
    """
    p._require(x)
    cofaces = {w for y in p._up[x] for w in p._down[y]}
    faces = {w for z in p._down[x] for w in p._up[z]}
    cofaces.discard(x)
    faces.discard(x)
    return frozenset(cofaces), frozenset(faces), len(cofaces ^ faces)


def local_counts(p: Poset, rf: RankFunction | None, x: str) -> LocalCounts:
    p._require(x)
    up, down = p._up[x], p._down[x]
    u = sum(len(p._down[y]) for y in up)
    d = sum(len(p._up[z]) for z in down)
    _, _, n = parallel_neighbors(p, rf, x)
    return LocalCounts(a=len(up), b=len(down), u=u, d=d, n=n)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def verify_counting_identities(p: Poset, rf: RankFunction | None, i: int) -> list[IdentityCheck]:
    """Check the three double-counting identities between ranks ``i-1``, ``i``, ``i+1``."""
    rf = rf or p.rank_function
    level = [x for x in p.elements if rf[x] == i]
    above = [y for y in p.elements if rf[y] == i + 1]
    below = [z for z in p.elements if rf[z] == i - 1]
    up, down = p._up, p._down
    return [
        IdentityCheck(
            "sum A_i = sum B_{i+1}",
            sum(len(up[x]) for x in level),
            sum(len(down[y]) for y in above),
        ),
        IdentityCheck(
            "sum U_i = sum B_{i+1}^2",
            sum(len(down[y]) for x in level for y in up[x]),
            sum(len(down[y]) ** 2 for y in above),
        ),
        IdentityCheck(
            "sum D_i = sum A_{i-1}^2",
            sum(len(up[z]) for x in level for z in down[x]),
            sum(len(up[z]) ** 2 for z in below),
        ),
    ]


def interval_cardinality(p: Poset, a: str, b: str) -> int:
    """Size of the closed interval ``[a, b]``; raises if ``a`` is not below ``b``."""
    if not p.less_equal(a, b):
        raise NotComparable(f"{a!r} is not below {b!r}")
    if a == b:
        return 1
    mask = p._above_mask
    ib = p.position(b)
    inner = sum(1 for y in p.strictly_above(a) if y != b and mask[y] >> ib & 1)
    return inner + 2

