"""Independent oracles: brute-force versions of the quantities the package computes.

Nothing here imports the code under test beyond plain data access, so a bug
in the library cannot leak into an expected value.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest


def brute_reach(elements, covers):
    """Map each element to the set of elements strictly above it, by DFS."""
    up = {x: [] for x in elements}
    for lo, hi in covers:
        up[lo].append(hi)
    reach = {}
    for x in elements:
        seen, stack = set(), list(up[x])
        while stack:
            y = stack.pop()
            if y not in seen:
                seen.add(y)
                stack.extend(up[y])
        reach[x] = seen
    return reach


def brute_chain_counts(elements, covers):
    """Number of chains of each cardinality, by testing every subset."""
    reach = brute_reach(elements, covers)
    counts = []
    for k in range(1, len(elements) + 1):
        n = sum(
            1
            for sub in combinations(elements, k)
            if all(b in reach[a] or a in reach[b] for a, b in combinations(sub, 2))
        )
        if n == 0:
            break
        counts.append(n)
    return counts


def map_edges(faces):
    edges = {}
    for f in faces:
        for u, v in zip(f, f[1:] + f[:1]):
            edges.setdefault(frozenset((u, v)), []).append(tuple(f))
    return edges


def map_degree(faces):
    deg = Counter()
    for e in map_edges(faces):
        for v in e:
            deg[v] += 1
    return deg


def map_r1(faces):
    """R1 per edge of a closed surface map straight from face sizes and vertex degrees."""
    deg = map_degree(faces)
    out = {}
    for e, fs in map_edges(faces).items():
        u, v = tuple(e)
        out[e] = 1 + 6 * 2 + Fraction(3, 2) * 2 - sum(len(f) for f in fs) - deg[u] - deg[v]
    return out


def map_ric(faces):
    """Forman's edge curvature from the map: 4 minus parallel neighbours, enumerated directly."""
    edges = map_edges(faces)
    out = {}
    for e, fs in edges.items():
        cofaces = {frozenset((a, b)) for f in fs for a, b in zip(f, f[1:] + f[:1])} - {e}
        sharing_vertex = {g for g in edges if g != e and g & e}
        out[e] = 2 + 2 - len(cofaces ^ sharing_vertex)
    return out


@pytest.fixture
def oracle():
    class O:
        reach = staticmethod(brute_reach)
        chain_counts = staticmethod(brute_chain_counts)
        edges = staticmethod(map_edges)
        degree = staticmethod(map_degree)
        r1 = staticmethod(map_r1)
        ric = staticmethod(map_ric)

    return O


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line and fail the test if the check failed."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
