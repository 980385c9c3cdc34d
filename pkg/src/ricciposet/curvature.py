"""Curvature functions on ranked posets of rank 2, in exact rational arithmetic.

``r0``, ``r1`` and ``r2`` are the extended curvatures at ranks 0, 1 and 2;
``forman_curvature`` is Forman's cell curvature (``ric`` at rank 1); the two
``stone_star`` variants are vertex curvatures for surfaces and their poset
generalisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import EmptyLevel, WrongRank
from .poset import Poset, parallel_neighbors, rank_level

THREE_HALVES = Fraction(3, 2)

KINDS = ("r0", "r1", "r2", "ric", "stone", "stone-general")
KIND_RANK = {"r0": 0, "r1": 1, "r2": 2, "ric": 1, "stone": 0, "stone-general": 0}


def _require_rank(p: Poset, x: str, rank: int) -> None:
    rf = p.rank_function
    if rf.r != 2:
        raise WrongRank(f"curvature needs a poset of rank 2, this one has rank {rf.r}")
    if rf[x] != rank:
        raise WrongRank(f"{x!r} has rank {rf[x]}, expected {rank}")


def r0(p: Poset, v: str) -> Fraction:
    """``1 + 3/2 A - A^2`` with ``A`` the number of upper covers of ``v``."""
    _require_rank(p, v, 0)
    a = len(p.upper_covers(v))
    return 1 + THREE_HALVES * a - a * a


def r1(p: Poset, e: str) -> Fraction:
    _require_rank(p, e, 1)
    up, down = p.upper_covers(e), p.lower_covers(e)
    u = sum(len(p.lower_covers(s)) for s in up)
    d = sum(len(p.upper_covers(v)) for v in down)
    return 1 + 6 * len(up) + THREE_HALVES * len(down) - u - d


def r2(p: Poset, sigma: str) -> Fraction:
    _require_rank(p, sigma, 2)
    b = len(p.lower_covers(sigma))
    return Fraction(1 + 6 * b - b * b)


def forman_curvature(p: Poset, x: str) -> int:
    """Upper covers + lower covers - parallel neighbours, at an element of any rank."""
    p.rank_function  # NotRanked surfaces here, before any counting
    _, _, n = parallel_neighbors(p, None, x)
    return len(p.upper_covers(x)) + len(p.lower_covers(x)) - n


def ric(p: Poset, e: str) -> int:
    if p.rank_function[e] != 1:
        raise WrongRank(f"{e!r} has rank {p.rank_function[e]}, Ric is defined on rank 1")
    return forman_curvature(p, e)


def faces_above(p: Poset, v: str) -> list[str]:
    """Rank-2 elements above the rank-0 element ``v`` in the order (not just covers)."""
    seen: dict[str, None] = {}
    for e in p.upper_covers(v):
        for s in p.upper_covers(e):
            seen.setdefault(s, None)
    return sorted(seen, key=p.position)


def stone_star_surface(p: Poset, v: str) -> Fraction:
    _require_rank(p, v, 0)
    return 2 - sum((1 - Fraction(2, len(p.lower_covers(s))) for s in faces_above(p, v)), Fraction(0))


def stone_star_general(p: Poset, v: str) -> Fraction:
    _require_rank(p, v, 0)
    total = sum((Fraction(2, len(p.lower_covers(s))) for s in faces_above(p, v)), Fraction(0))
    return 2 - len(p.upper_covers(v)) + total


_EVALUATORS = {
    "r0": r0,
    "r1": r1,
    "r2": r2,
    "ric": lambda p, x: Fraction(ric(p, x)),
    "stone": stone_star_surface,
    "stone-general": stone_star_general,
}


def curvature_values(p: Poset, kind: str) -> dict[str, Fraction]:
    """Evaluate ``kind`` at every element of the matching rank, in element order."""
    if kind not in _EVALUATORS:
        raise ValueError(f"unknown curvature kind {kind!r}; choose from {', '.join(KINDS)}")
    fn = _EVALUATORS[kind]
    return {x: fn(p, x) for x in rank_level(p, KIND_RANK[kind])}


class Averages(NamedTuple):
    r1: Fraction
    a1: Fraction
    b1: Fraction


def averages(p: Poset) -> Averages:
    edges = rank_level(p, 1)
    if not edges:
        raise EmptyLevel("poset has no rank-1 elements")
    n = len(edges)
    total_r1 = sum((r1(p, e) for e in edges), Fraction(0))
    total_a = sum(len(p.upper_covers(e)) for e in edges)
    total_b = sum(len(p.lower_covers(e)) for e in edges)
    return Averages(total_r1 / n, Fraction(total_a, n), Fraction(total_b, n))


def coverage_lhs(mean_a1: Fraction, mean_b1: Fraction) -> Fraction:
    return (mean_a1 + mean_b1) ** 2 - 6 * mean_a1 - THREE_HALVES * mean_b1 - 1


class Coverage(NamedTuple):
    holds: bool
    lhs: Fraction


def is_sufficiently_covered(p: Poset) -> Coverage:
    """Evaluate ``(A + B)^2 - 6A - 3/2 B - 1 >= 0`` on the rank-1 averages of ``p``."""
    edges = rank_level(p, 1)
    if not edges:
        raise EmptyLevel("poset has no rank-1 elements")
    n = len(edges)
    mean_a = Fraction(sum(len(p.upper_covers(e)) for e in edges), n)
    mean_b = Fraction(sum(len(p.lower_covers(e)) for e in edges), n)
    lhs = coverage_lhs(mean_a, mean_b)
    return Coverage(lhs >= 0, lhs)


@dataclass
class CurvatureReport:
    values: dict[str, dict[str, Fraction]]
    aggregates: dict[str, Fraction]
    verdicts: dict[str, bool]
    ranks: dict[str, int] = field(default_factory=dict)

    @property
    def kinds(self) -> list[str]:
        return list(self.values)


def full_report(p: Poset, kinds: Iterable[str] = ("r0", "r1", "r2")) -> CurvatureReport:
    """Per-element values for each requested kind plus sums, averages and sign verdicts.

    The sums of ``r0``/``r1``/``r2`` and the rank-1 averages are always
    included, whatever ``kinds`` asks for.
    """
    kinds = list(dict.fromkeys(kinds))
    rf = p.rank_function
    if rf.r != 2:
        raise WrongRank(f"curvature needs a poset of rank 2, this one has rank {rf.r}")
    base = {k: curvature_values(p, k) for k in ("r0", "r1", "r2")}
    values = {k: base[k] if k in base else curvature_values(p, k) for k in kinds}
    avg = averages(p)
    coverage = is_sufficiently_covered(p)
    aggregates = {
        "sum_r0": sum(base["r0"].values(), Fraction(0)),
        "sum_r1": sum(base["r1"].values(), Fraction(0)),
        "sum_r2": sum(base["r2"].values(), Fraction(0)),
        "mean_r1": avg.r1,
        "mean_a1": avg.a1,
        "mean_b1": avg.b1,
        "coverage_lhs": coverage.lhs,
    }
    verdicts = {"sufficiently_covered": coverage.holds}
    for k in kinds:
        verdicts[f"all_negative_{k}"] = all(val < 0 for val in values[k].values())
    return CurvatureReport(values=values, aggregates=aggregates, verdicts=verdicts, ranks=dict(rf.rank))
