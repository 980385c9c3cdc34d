"""Seeded random rank-2 posets and random polyhedral maps for property tests."""

from __future__ import annotations

import random

from .complexes import PolyMap, dual_map, icosahedron, octahedron, tetrahedron, torus_triangulated
from .errors import InvalidMap, ParameterOutOfRange
from .poset import Poset


def random_ranked_poset(
    seed: int,
    n0: int,
    n1: int,
    n2: int,
    p01: float = 0.5,
    p12: float = 0.5,
) -> Poset:
    """A random ranked poset of rank exactly 2 with level sizes ``(n0, n1, n2)``.

    Each rank-1 element covers every rank-0 element independently with
    probability ``p01`` (and at least one); rank-2 elements likewise over
    rank 1 with ``p12``.  Identical arguments give an identical poset.
    """
    if min(n0, n1, n2) < 1:
        raise ParameterOutOfRange(f"level sizes must be >= 1 (got {n0}, {n1}, {n2})")
    if not (0.0 <= p01 <= 1.0 and 0.0 <= p12 <= 1.0):
        raise ParameterOutOfRange("cover probabilities must lie in [0, 1]")
    rng = random.Random(seed)
    verts = [f"v{i}" for i in range(n0)]
    edges = [f"e{i}" for i in range(n1)]
    faces = [f"s{i}" for i in range(n2)]
    covers = []
    for lower, upper, prob in ((verts, edges, p01), (edges, faces, p12)):
        for y in upper:
            chosen = [x for x in lower if rng.random() < prob]
            if not chosen:
                chosen = [rng.choice(lower)]
            covers += [(x, y) for x in chosen]
    return Poset(verts + edges + faces, covers)


def ensemble_poset(seed: int, index: int, max_n0: int = 8, max_n1: int = 8, max_n2: int = 8) -> Poset:
    """The ``index``-th member of the seeded ensemble: sizes and densities drawn per instance."""
    if min(max_n0, max_n1, max_n2) < 1:
        raise ParameterOutOfRange("maximum level sizes must be >= 1")
    rng = random.Random(seed * 1_000_003 + index)
    return random_ranked_poset(
        rng.randrange(1 << 30),
        rng.randint(1, max_n0),
        rng.randint(1, max_n1),
        rng.randint(1, max_n2),
        p01=rng.uniform(0.05, 1.0),
        p12=rng.uniform(0.05, 1.0),
    )


_SEEDS = {
    "tetrahedron": tetrahedron,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "torus": lambda: torus_triangulated(4, 4),
}


def _flip(faces: list[tuple[str, ...]], fi: int, k: int, edge_faces: dict) -> list[tuple[str, ...]] | None:
    """Flip the edge leaving position ``k`` of triangle ``fi``; ``None`` if the flip is illegal."""
    a, b, c = (faces[fi][(k + t) % 3] for t in range(3))
    f1, f2 = edge_faces[frozenset((a, b))]
    gi = f2 if f1 == fi else f1
    g = faces[gi]
    j = g.index(b)
    if g[(j + 1) % 3] != a:
        return None  # neighbouring triangle not coherently oriented
    d = g[(j + 2) % 3]
    if c == d or frozenset((c, d)) in edge_faces:
        return None
    new = list(faces)
    new[fi] = (a, d, c)
    new[gi] = (d, b, c)
    return new


def _edge_faces(faces):
    table: dict[frozenset, list[int]] = {}
    for fi, f in enumerate(faces):
        for u, v in zip(f, f[1:] + f[:1]):
            table.setdefault(frozenset((u, v)), []).append(fi)
    return table


def random_map(seed: int, flips: int = 30, base: str | None = None, dual: bool | None = None) -> PolyMap:
    """A random polyhedral map grown from a seed triangulation by edge flips.

    ``base`` is one of ``tetrahedron``, ``octahedron``, ``icosahedron``,
    ``torus``; when omitted it is drawn from the seed, as is ``dual``
    (whether to return the dual of the flipped triangulation).  Flips that
    would break the map are skipped, so every output is a valid map.
    """
    if flips < 0:
        raise ParameterOutOfRange("flips must be >= 0")
    rng = random.Random(seed)
    if base is None:
        base = rng.choice(sorted(_SEEDS))
    if base not in _SEEDS:
        raise ParameterOutOfRange(f"unknown seed surface {base!r}")
    if dual is None:
        dual = rng.random() < 0.5
    faces = list(_SEEDS[base]().faces)
    for _ in range(flips):
        fi = rng.randrange(len(faces))
        k = rng.randrange(3)
        candidate = _flip(faces, fi, k, _edge_faces(faces))
        if candidate is None:
            continue
        try:
            PolyMap(tuple(candidate))
        except InvalidMap:
            continue
        faces = candidate
    m = PolyMap(tuple(faces))
    return dual_map(m) if dual else m
