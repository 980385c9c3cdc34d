"""Named fixtures: small hand-built posets, the genus-3 heptagonal map, and the registry the CLI uses.

The ``fig-*`` posets are reconstructions pinned by the numeric values they
must reproduce (see the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .complexes import PolyMap, cube, dual_map, icosahedron, tetrahedron, torus_grid
from .errors import ParameterOutOfRange
from .poset import Poset


def fixture_fig_counterexample() -> Poset:
    """One vertex, three edges on it, one face on the three edges.

    Sufficiently-covered fails here while the mean rank-1 curvature is 5/2
    and the ranked Euler characteristic is -1.
    """
    edges = ["e1", "e2", "e3"]
    covers = [("v", e) for e in edges] + [(e, "sigma") for e in edges]
    return Poset(["v", *edges, "sigma"], covers)


@dataclass(frozen=True)
class Window:
    """A finite piece of an infinite periodic poset.

    Values computed at ``interior`` elements agree with the infinite poset.
    ``designated`` maps labels (``v``, ``e``, ``x``) to interior elements.
    """

    poset: Poset
    interior: frozenset[str]
    designated: dict[str, str]


def fixture_fig_infinite_window(k: int) -> Window:
    """``k`` periods of an infinite poset on which every curvature stays positive.

    The backbone is a zigzag of edges ``f<i>`` joined by two-edge faces
    ``x<i>``; every ``f<i>`` carries one private vertex ``u<i>``.  In period
    ``j`` a hexagon ``h<j>`` covers ``f<6j+1> .. f<6j+5>`` and a spur edge
    ``e<j>`` that sits on six private vertices.  Every vertex lies on one
    edge, so R0 = 3/2 throughout; faces have 2 or 6 edges (R2 = 9 or 1).
    """
    if k < 3:
        raise ParameterOutOfRange(f"window needs k >= 3 periods (got {k})")
    n_f = 6 * k + 1
    elements: list[str] = []
    covers: list[tuple[str, str]] = []
    for i in range(n_f):
        elements += [f"u{i}", f"f{i}"]
        covers.append((f"u{i}", f"f{i}"))
    for i in range(n_f - 1):
        elements.append(f"x{i}")
        covers += [(f"f{i}", f"x{i}"), (f"f{i + 1}", f"x{i}")]
    for j in range(k):
        spur = f"e{j}"
        elements.append(spur)
        for t in range(6):
            elements.append(f"w{j}.{t}")
            covers.append((f"w{j}.{t}", spur))
        elements.append(f"h{j}")
        covers.append((spur, f"h{j}"))
        covers += [(f"f{6 * j + t}", f"h{j}") for t in range(1, 6)]
    poset = Poset(elements, covers)

    # the two ends of the backbone are each missing one face
    truncated = {"f0", f"f{n_f - 1}"}
    interior = frozenset(x for x in poset.elements if _hasse_distance(poset, x, truncated) >= 2)
    m = k // 2
    designated = {"v": f"u{6 * m}", "e": f"e{m}", "x": f"x{6 * m}"}
    return Window(poset=poset, interior=interior, designated=designated)


def _hasse_distance(p: Poset, x: str, targets: set[str]) -> float:
    frontier, seen, dist = {x}, {x}, 0
    while frontier:
        if frontier & targets:
            return dist
        nxt = set()
        for y in frontier:
            nxt.update(p.upper_covers(y))
            nxt.update(p.lower_covers(y))
        frontier = nxt - seen
        seen |= frontier
        dist += 1
    return float("inf")


def fixture_noncw_almost_polyhedral() -> Poset:
    """Almost polyhedral, but the face ``m`` would need a disconnected boundary.

    ``m`` covers the edges of two disjoint triangles.
    """
    tri1, tri2 = ("a", "b", "c"), ("d", "e", "f")
    elements = [*tri1, *tri2]
    covers = []
    edges = []
    for tri in (tri1, tri2):
        for i in range(3):
            u, w = tri[i], tri[(i + 1) % 3]
            name = f"{u}{w}"
            edges.append(name)
            covers += [(u, name), (w, name)]
    elements += edges + ["m"]
    covers += [(e, "m") for e in edges]
    return Poset(elements, covers)


def fixture_cw_not_almost_polyhedral() -> Poset:
    """Two vertices, two edges each on both vertices, one disk on both edges."""
    return Poset(
        ["p", "q", "a", "b", "D"],
        [("p", "a"), ("q", "a"), ("p", "b"), ("q", "b"), ("a", "D"), ("b", "D")],
    )


# -- the genus-3 {3,7} triangulation and its dual ---------------------------

_P = 7


def _mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return _norm(((a * e + b * g) % _P, (a * f + b * h) % _P, (c * e + d * g) % _P, (c * f + d * h) % _P))


def _norm(x):
    # PSL(2,7): identify a matrix with its negative
    neg = tuple((-t) % _P for t in x)
    return min(x, neg)


_IDENTITY = _norm((1, 0, 0, 1))


def _order(x) -> int:
    y, n = x, 1
    while y != _IDENTITY:
        y, n = _mul(y, x), n + 1
    return n


def _psl27():
    return sorted({_norm(m) for m in product(range(_P), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % _P == 1})


@lru_cache(maxsize=1)
def klein_triangulation() -> PolyMap:
    """The 24-vertex {3,7} triangulation of the genus-3 surface, built from PSL(2,7).

    Darts are group elements; vertices are the cosets of an order-7 rotation
    ``a``, faces the cosets of an order-3 rotation ``b`` with ``ab`` of order 2.
    """
    group = _psl27()
    for a in group:
        if _order(a) != 7:
            continue
        for b in group:
            if _order(b) != 3 or _order(_mul(a, b)) != 2:
                continue
            powers_a = [_IDENTITY]
            for _ in range(6):
                powers_a.append(_mul(powers_a[-1], a))
            vertex_of = {}
            for g in group:
                coset = min(_mul(g, t) for t in powers_a)
                vertex_of[g] = coset
            if len(set(vertex_of.values())) != 24:
                continue
            names = {c: f"k{i}" for i, c in enumerate(sorted(set(vertex_of.values())))}
            faces, seen = [], set()
            for g in group:
                gb = _mul(g, b)
                gbb = _mul(gb, b)
                key = frozenset((g, gb, gbb))
                if key in seen:
                    continue
                seen.add(key)
                faces.append((names[vertex_of[g]], names[vertex_of[gb]], names[vertex_of[gbb]]))
            return PolyMap(tuple(faces))
    raise RuntimeError("no (7, 3, 2) generating pair found in PSL(2,7)")


def fixture_klein_dual() -> PolyMap:
    """Dual of :func:`klein_triangulation`: 56 trivalent vertices, 24 heptagons."""
    return dual_map(klein_triangulation())


# -- registry ----------------------------------------------------------------

FIXTURE_NAMES = (
    "tetrahedron", "cube", "icosahedron", "torus:MxN", "fig-counterexample",
    "fig-infinite:K", "fig-ap-noncw", "fig-cw-nonap", "klein-dual",
)


def load_fixture(name: str) -> PolyMap | Poset | Window:
    """Resolve a published fixture name to a map, a poset or a window."""
    simple = {
        "tetrahedron": tetrahedron,
        "cube": cube,
        "icosahedron": icosahedron,
        "fig-counterexample": fixture_fig_counterexample,
        "fig-ap-noncw": fixture_noncw_almost_polyhedral,
        "fig-cw-nonap": fixture_cw_not_almost_polyhedral,
        "klein-dual": fixture_klein_dual,
    }
    if name in simple:
        return simple[name]()
    head, _, arg = name.partition(":")
    try:
        if head == "torus" and arg:
            m, n = arg.lower().split("x")
            return torus_grid(int(m), int(n))
        if head == "fig-infinite":
            return fixture_fig_infinite_window(int(arg) if arg else 3)
    except ValueError as exc:
        if isinstance(exc, ParameterOutOfRange):
            raise
        raise ParameterOutOfRange(f"bad fixture parameters in {name!r}") from exc
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
