"""Euler characteristics, theorem verifiers and structural classifiers.

Every verifier returns a :class:`Verification` carrying both sides of the
identity it checks, so a failure can be diagnosed from the record alone.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import PolyMap, face_poset_of_map
from .curvature import (
    averages,
    curvature_values,
    is_sufficiently_covered,
    r0,
    r1,
    r2,
    ric,
    stone_star_surface,
)
from .errors import NotAlmostPolyhedral, WrongRank
from .poset import Poset, RankFunction, f_vector, rank_level


@dataclass
class Verification:
    theorem: str
    lhs: Fraction
    rhs: Fraction
    holds: bool
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


@dataclass
class ClassificationResult:
    predicate: str
    verdict: bool
    witnesses: list = field(default_factory=list)


# -- Euler characteristics ---------------------------------------------------


def ranked_euler_char(p: Poset, rf: RankFunction | None = None) -> int:
    return sum((-1) ** i * n for i, n in enumerate(f_vector(p, rf)))


@dataclass
class OrderComplex:
    """Chains of a poset grouped by cardinality: ``chains[k]`` holds the (k+1)-chains."""

    chains: list[list[tuple[str, ...]]]

    def counts(self) -> list[int]:
        return [len(c) for c in self.chains]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.counts()))


def order_complex(p: Poset) -> OrderComplex:
    """Materialise every non-empty chain, each listed bottom to top."""
    below = {x: [y for y in p.elements if y != x and p.less_equal(y, x)] for x in p.elements}
    ending: dict[str, list[tuple[str, ...]]] = {}
    for x in p.topological_order:
        chains = [(x,)]
        for y in below[x]:
            chains += [c + (x,) for c in ending[y]]
        ending[x] = chains
    by_size: list[list[tuple[str, ...]]] = []
    for x in p.elements:
        for c in ending[x]:
            while len(by_size) < len(c):
                by_size.append([])
            by_size[len(c) - 1].append(c)
    return OrderComplex(by_size)


def order_complex_euler(p: Poset) -> int:
    """Euler characteristic of the order complex without listing chains.

    ``g[x]`` is the signed count of chains topped by ``x``; a chain of
    cardinality k contributes ``(-1)^(k-1)``, so ``g[x] = 1 - sum g[y]`` over
    ``y < x``.
    """
    g: dict[str, int] = {}
    for x in p.topological_order:
        total = 1
        for y in p.elements:
            if y in g and y != x and p.less_equal(y, x):
                total -= g[y]
        g[x] = total
    return sum(g.values())


# -- Gauss-Bonnet analogues ------------------------------------------------------


def _require_rank2(p: Poset) -> None:
    r = p.rank_function.r
    if r != 2:
        raise WrongRank(f"need a ranked poset of rank 2, got rank {r}")


def verify_gauss_bonnet(p: Poset) -> Verification:
    """Sum R0 - sum R1 + sum R2 against the ranked Euler characteristic."""
    _require_rank2(p)
    s0 = sum((r0(p, v) for v in rank_level(p, 0)), Fraction(0))
    s1 = sum((r1(p, e) for e in rank_level(p, 1)), Fraction(0))
    s2 = sum((r2(p, s) for s in rank_level(p, 2)), Fraction(0))
    lhs = s0 - s1 + s2
    rhs = Fraction(ranked_euler_char(p))
    return Verification("gb", lhs, rhs, lhs == rhs, details={"sum_r0": s0, "sum_r1": s1, "sum_r2": s2})


def verify_gauss_bonnet_ric(p: Poset) -> Verification:
    """As :func:`verify_gauss_bonnet` with Ric at rank 1; needs an almost polyhedral poset."""
    _require_rank2(p)
    cls = is_almost_polyhedral(p)
    if not cls.verdict:
        raise NotAlmostPolyhedral("poset is not almost polyhedral", cls.witnesses)
    s0 = sum((r0(p, v) for v in rank_level(p, 0)), Fraction(0))
    s1 = Fraction(sum(ric(p, e) for e in rank_level(p, 1)))
    s2 = sum((r2(p, s) for s in rank_level(p, 2)), Fraction(0))
    lhs = s0 - s1 + s2
    rhs = Fraction(ranked_euler_char(p))
    return Verification("gb-ric", lhs, rhs, lhs == rhs, details={"sum_r0": s0, "sum_ric": s1, "sum_r2": s2})


def verify_stone_gauss_bonnet(m: PolyMap) -> Verification:
    """Sum of Stone's vertex curvature against twice the Euler characteristic."""
    p = face_poset_of_map(m)
    values = {v: stone_star_surface(p, v) for v in rank_level(p, 0)}
    lhs = sum(values.values(), Fraction(0))
    rhs = Fraction(2 * m.euler_characteristic())
    return Verification("gb-stone", lhs, rhs, lhs == rhs)


# -- classifiers -------------------------------------------------------------


def is_almost_polyhedral(p: Poset) -> ClassificationResult:
    """Check the four almost-polyhedral conditions, reporting every violation.

    Witnesses are ``{"condition": k, "elements": [...]}``: (1) an edge
    without exactly two lower covers, (2) two edges sharing two or more
    lower covers, (3) two edges sharing two or more upper covers, (4) a
    vertex-face pair whose interval does not have four elements.
    """
    _require_rank2(p)
    witnesses = []
    edges = rank_level(p, 1)
    for e in edges:
        if len(p.lower_covers(e)) != 2:
            witnesses.append({"condition": 1, "elements": [e]})
    for cond, step_down, step_up in ((2, p.lower_covers, p.upper_covers), (3, p.upper_covers, p.lower_covers)):
        for a in edges:
            shared = Counter(b for z in step_down(a) for b in step_up(z) if b != a)
            for b, count in shared.items():
                if count >= 2 and p.position(a) < p.position(b):
                    common = [z for z in step_down(a) if z in step_down(b)]
                    witnesses.append({"condition": cond, "elements": [a, b, *common]})
    between: Counter = Counter()
    for s in rank_level(p, 2):
        for e in p.lower_covers(s):
            for w in p.lower_covers(e):
                between[(w, s)] += 1
    for (w, s), count in sorted(between.items(), key=lambda kv: (p.position(kv[0][0]), p.position(kv[0][1]))):
        if count != 2:
            witnesses.append({"condition": 4, "elements": [w, s], "interval_size": count + 2})
    return ClassificationResult("almost_polyhedral", not witnesses, witnesses)


def is_polyhedral_map_poset(p: Poset) -> ClassificationResult:
    """Recognise face posets of polyhedral maps on closed surfaces.

    On top of the almost-polyhedral conditions: every edge has two upper
    covers, every face boundary is one cycle, every vertex link (edges and
    faces over the vertex) is one cycle, and the Hasse diagram is connected.
    """
    witnesses = list(is_almost_polyhedral(p).witnesses)
    for e in rank_level(p, 1):
        if len(p.upper_covers(e)) != 2:
            witnesses.append({"condition": "edge-in-two-faces", "elements": [e]})
    for s in rank_level(p, 2):
        graph = {}
        for e in p.lower_covers(s):
            ends = p.lower_covers(e)
            for v in ends:
                graph.setdefault(v, set()).update(w for w in ends if w != v)
        if len(p.lower_covers(s)) < 3 or not _is_single_cycle(graph):
            witnesses.append({"condition": "face-boundary-cycle", "elements": [s]})
    for v in rank_level(p, 0):
        graph = {}
        for e in p.upper_covers(v):
            for s in p.upper_covers(e):
                graph.setdefault(e, set()).add(s)
                graph.setdefault(s, set()).add(e)
        if not _is_single_cycle(graph):
            witnesses.append({"condition": "vertex-link-cycle", "elements": [v]})
    if p.elements and not _hasse_connected(p):
        witnesses.append({"condition": "connected", "elements": []})
    return ClassificationResult("polyhedral_map", not witnesses, witnesses)


def _is_single_cycle(graph: dict) -> bool:
    if not graph or any(len(nbrs) != 2 for nbrs in graph.values()):
        return False
    start = next(iter(graph))
    seen, stack = {start}, [start]
    while stack:
        for w in graph[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(graph)


def _hasse_connected(p: Poset) -> bool:
    start = p.elements[0]
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in p.upper_covers(x) + p.lower_covers(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(p.elements)


def orientable(m: PolyMap) -> bool:
    """Try to orient faces so each shared edge is traversed in opposite directions."""
    sign = {0: 1}
    stack = [0]
    while stack:
        fi = stack.pop()
        face = m.faces[fi]
        n = len(face)
        for t in range(n):
            u, w = face[t], face[(t + 1) % n]
            if sign[fi] < 0:
                u, w = w, u
            gi = m.other_face(fi, u, w)
            g = m.faces[gi]
            j = g.index(u)
            natural = 1 if g[(j + 1) % len(g)] == w else -1  # does g run u -> w?
            need = -natural
            if gi not in sign:
                sign[gi] = need
                stack.append(gi)
            elif sign[gi] != need:
                return False
    return True


# -- sign theorems -----------------------------------------------------------


@dataclass
class NegativityRecord:
    all_negative: bool
    min_face: int
    iff_holds: bool
    nonnegative: list = field(default_factory=list)


def negativity_criterion(m: PolyMap) -> NegativityRecord:
    """R0, Ric and R2 negative everywhere on ``m`` versus every face having at least 7 edges."""
    p = face_poset_of_map(m)
    offenders = []
    for kind in ("r0", "ric", "r2"):
        for x, val in curvature_values(p, kind).items():
            if val >= 0:
                offenders.append({"kind": kind, "element": x, "value": val})
    all_negative = not offenders
    min_face = min(len(f) for f in m.faces)
    return NegativityRecord(
        all_negative=all_negative,
        min_face=min_face,
        iff_holds=all_negative == (min_face >= 7),
        nonnegative=offenders,
    )


@dataclass
class PositiveAverageRecord:
    sufficiently_covered: bool
    mean_r1: Fraction
    euler: int
    holds: bool
    ric_applicable: bool = False
    mean_ric: Fraction | None = None
    ric_holds: bool = True

    @property
    def qualifies(self) -> bool:
        return self.sufficiently_covered and self.mean_r1 > 0


def positive_average_check(p: Poset) -> PositiveAverageRecord:
    """Whether sufficiently covered plus positive mean R1 (or Ric) forces a positive Euler characteristic.

    ``holds`` is the implication itself, so it is vacuously true when the
    hypotheses fail.  The Ric form applies to almost polyhedral posets whose
    mean upper-cover count at rank 1 is at least 2.
    """
    _require_rank2(p)
    covered = is_sufficiently_covered(p).holds
    avg = averages(p)
    chi = ranked_euler_char(p)
    record = PositiveAverageRecord(
        sufficiently_covered=covered,
        mean_r1=avg.r1,
        euler=chi,
        holds=not (covered and avg.r1 > 0) or chi > 0,
    )
    if avg.a1 >= 2 and is_almost_polyhedral(p).verdict:
        edges = rank_level(p, 1)
        record.ric_applicable = True
        record.mean_ric = Fraction(sum(ric(p, e) for e in edges), len(edges))
        record.ric_holds = not record.mean_ric > 0 or chi > 0
    return record
