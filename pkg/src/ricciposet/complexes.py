"""Simplicial 2-complexes and polygonal surface maps, their face posets and duals."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidComplex, InvalidMap, ParameterOutOfRange, RicciPosetError
from .poset import Poset


# -- simplicial complexes ----------------------------------------------------


def simplex_id(simplex: Iterable[str]) -> str:
    return ",".join(sorted(simplex))


@dataclass(frozen=True)
class SimplicialComplex2:
    """A simplicial complex of dimension at most 2, closed under taking faces.

    ``simplices`` lists every simplex as a frozenset of vertex names, ordered
    by dimension and then by first appearance in the generating input.
    """

    simplices: tuple[frozenset[str], ...]

    @classmethod
    def from_simplices(cls, generators: Iterable[Iterable[str]]) -> "SimplicialComplex2":
        seen: dict[frozenset[str], None] = {}
        for gen in generators:
            verts = [str(v) for v in gen]
            if not 1 <= len(verts) <= 3:
                raise InvalidComplex(f"simplex {verts!r} must have 1 to 3 vertices")
            if len(set(verts)) != len(verts):
                raise InvalidComplex(f"simplex {verts!r} repeats a vertex")
            for k in range(1, len(verts) + 1):
                for sub in combinations(verts, k):
                    seen.setdefault(frozenset(sub), None)
        ordered = sorted(seen, key=len)  # stable: keeps first appearance within a dimension
        return cls(tuple(ordered))

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)


def face_poset_of_simplicial(k: SimplicialComplex2) -> Poset:
    """Face poset of ``k``: simplices ordered by codimension-one containment."""
    ids = [simplex_id(s) for s in k.simplices]
    if len(set(ids)) != len(ids):
        raise InvalidComplex("vertex names collide once simplices are joined with ','")
    present = set(k.simplices)
    covers = []
    for s in k.simplices:
        if len(s) < 2:
            continue
        for v in s:
            face = s - {v}
            if face not in present:
                raise InvalidComplex(f"face {sorted(face)} of {sorted(s)} is missing")
            covers.append((simplex_id(face), simplex_id(s)))
    return Poset(ids, covers)


# -- polygonal maps ----------------------------------------------------------


def _edge_key(u: str, v: str) -> frozenset[str]:
    return frozenset((u, v))


@dataclass(frozen=True)
class PolyMap:
    """A closed polyhedral map on a surface, given by cyclic vertex sequences.

    Construction checks that no face repeats a vertex, every edge lies in
    exactly two faces, two faces meet in nothing, a vertex or a single edge,
    every vertex link is one cycle, and the map is connected.  Violations
    raise :class:`InvalidMap` naming the condition.
    """

    faces: tuple[tuple[str, ...], ...]
    vertices: tuple[str, ...] = field(init=False, repr=False, compare=False)
    edges: tuple[tuple[str, str], ...] = field(init=False, repr=False, compare=False)
    edge_faces: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        faces = tuple(tuple(str(v) for v in f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        if not faces:
            raise InvalidMap("map has no faces")
        vertices: dict[str, int] = {}
        edges: dict[frozenset, tuple[str, str]] = {}
        edge_faces: dict[frozenset, list[int]] = {}
        for fi, face in enumerate(faces):
            if len(face) < 3:
                raise InvalidMap(f"face {fi} has fewer than 3 vertices")
            if len(set(face)) != len(face):
                raise InvalidMap(f"face {fi} repeats a vertex")
            for v in face:
                vertices.setdefault(v, len(vertices))
            for u, v in zip(face, face[1:] + face[:1]):
                key = _edge_key(u, v)
                if key not in edges:
                    edges[key] = (u, v) if vertices[u] < vertices[v] else (v, u)
                edge_faces.setdefault(key, []).append(fi)
        for key, fs in edge_faces.items():
            if len(fs) != 2 or fs[0] == fs[1]:
                u, v = edges[key]
                raise InvalidMap(f"edge {u}|{v} lies in {len(fs)} face(s); a closed surface needs exactly 2")
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple(edges.values()))
        object.__setattr__(self, "edge_faces", {k: tuple(v) for k, v in edge_faces.items()})
        self._check_face_intersections()
        self._check_vertex_links()
        self._check_connected()

    def _check_face_intersections(self) -> None:
        incident: dict[str, list[int]] = {v: [] for v in self.vertices}
        for fi, face in enumerate(self.faces):
            for v in face:
                incident[v].append(fi)
        shared: dict[tuple[int, int], list[str]] = {}
        for v, fs in incident.items():
            for f, g in combinations(fs, 2):
                shared.setdefault((f, g), []).append(v)
        for (f, g), common in shared.items():
            if len(common) == 1:
                continue
            if len(common) == 2 and f in self.edge_faces.get(_edge_key(*common), ()) \
                    and g in self.edge_faces[_edge_key(*common)]:
                continue
            raise InvalidMap(
                f"faces {f} and {g} meet in {sorted(common)}, not in a vertex or a single edge"
            )

    def _check_vertex_links(self) -> None:
        # link of v: cycle through the neighbours of v, one link edge per face at v
        link: dict[str, dict[str, list[str]]] = {v: {} for v in self.vertices}
        for face in self.faces:
            n = len(face)
            for i, v in enumerate(face):
                a, b = face[i - 1], face[(i + 1) % n]
                link[v].setdefault(a, []).append(b)
                link[v].setdefault(b, []).append(a)
        for v, adj in link.items():
            if any(len(nbrs) != 2 for nbrs in adj.values()):
                raise InvalidMap(f"link of vertex {v} is not a cycle")
            start = next(iter(adj))
            seen = {start}
            stack = [start]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) != len(adj):
                raise InvalidMap(f"link of vertex {v} is not a single cycle")

    def _check_connected(self) -> None:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        start = self.vertices[0]
        seen = {start}
        queue = deque([start])
        while queue:
            for w in adj[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(self.vertices):
            raise InvalidMap("underlying graph is not connected")

    # -- derived data ------------------------------------------------------

    def f_vector(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def euler_characteristic(self) -> int:
        v, e, f = self.f_vector()
        return v - e + f

    def other_face(self, fi: int, u: str, v: str) -> int:
        f, g = self.edge_faces[_edge_key(u, v)]
        return g if f == fi else f

    def vertex_degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)

    def to_json(self) -> dict:
        return {"faces": [list(f) for f in self.faces]}


def edge_id(u: str, v: str) -> str:
    return f"{u}|{v}"


def face_id(i: int) -> str:
    return f"F{i}"


def face_poset_of_map(m: PolyMap) -> Poset:
    """Face poset of ``m``: vertices, edges ``u|v`` and faces ``F<i>`` at ranks 0, 1, 2."""
    elements = list(m.vertices)
    elements += [edge_id(u, v) for u, v in m.edges]
    elements += [face_id(i) for i in range(len(m.faces))]
    if len(set(elements)) != len(elements):
        raise InvalidMap("vertex names collide with generated edge/face identifiers")
    covers = []
    for u, v in m.edges:
        covers.append((u, edge_id(u, v)))
        covers.append((v, edge_id(u, v)))
    canon = {_edge_key(u, v): edge_id(u, v) for u, v in m.edges}
    for i, face in enumerate(m.faces):
        for u, v in zip(face, face[1:] + face[:1]):
            covers.append((canon[_edge_key(u, v)], face_id(i)))
    return Poset(elements, covers)


def dual_map(m: PolyMap) -> PolyMap:
    """Dual map: one vertex ``f<i>`` per face ``i``, one face per vertex star in rotational order.

    When the faces of ``m`` are coherently oriented, so are the dual faces.
    """
    dual_faces = []
    for v in m.vertices:
        start = next(i for i, f in enumerate(m.faces) if v in f)
        ring = []
        fi = start
        face = m.faces[fi]
        came_from = face[face.index(v) - 1]
        while True:
            ring.append(f"f{fi}")
            face = m.faces[fi]
            k = face.index(v)
            a, b = face[k - 1], face[(k + 1) % len(face)]
            leave = b if a == came_from else a
            fi = m.other_face(fi, v, leave)
            came_from = leave
            if fi == start:
                break
        dual_faces.append(tuple(ring))
    return PolyMap(tuple(dual_faces))


def canonical_form(m: PolyMap) -> tuple:
    """Relabelling-invariant form of ``m``; equal forms mean isomorphic maps.

    Every flag (face, start position, direction) seeds a breadth-first walk
    that renames vertices by discovery order; the least resulting face list
    is the canonical form.  Mirror images compare equal.
    """
    best = None
    for root in range(len(m.faces)):
        size = len(m.faces[root])
        for start in range(size):
            for step in (1, -1):
                form = _relabel_from(m, root, start, step)
                if best is None or form < best:
                    best = form
    return best


def _relabel_from(m: PolyMap, root: int, start: int, step: int) -> tuple:
    labels: dict[str, int] = {}
    visited = {root: (start, step)}
    queue = deque([root])
    out = []
    while queue:
        fi = queue.popleft()
        s, d = visited[fi]
        face = m.faces[fi]
        n = len(face)
        seq = [face[(s + d * t) % n] for t in range(n)]
        for v in seq:
            if v not in labels:
                labels[v] = len(labels)
        out.append(tuple(labels[v] for v in seq))
        for t in range(n):
            u, w = seq[t], seq[(t + 1) % n]
            g = m.other_face(fi, u, w)
            if g in visited:
                continue
            gface = m.faces[g]
            gi = gface.index(w)
            gd = 1 if gface[(gi + 1) % len(gface)] == u else -1
            visited[g] = (gi, gd)
            queue.append(g)
    return tuple(out)


def maps_isomorphic(m1: PolyMap, m2: PolyMap) -> bool:
    if m1.f_vector() != m2.f_vector():
        return False
    return canonical_form(m1) == canonical_form(m2)


# -- standard surfaces -------------------------------------------------------


def _names(faces: Iterable[Sequence[object]]) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(str(v) for v in f) for f in faces)


def tetrahedron() -> PolyMap:
    return PolyMap(_names([(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]))


def cube() -> PolyMap:
    return PolyMap(_names([
        (0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4),
        (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7),
    ]))


def octahedron() -> PolyMap:
    # 0/5 are the poles, 1..4 the equator
    faces = []
    for i in range(4):
        a, b = 1 + i, 1 + (i + 1) % 4
        faces.append((0, a, b))
        faces.append((5, b, a))
    return PolyMap(_names(faces))


def icosahedron() -> PolyMap:
    top, bottom = 0, 11
    upper = [1 + i for i in range(5)]
    lower = [6 + i for i in range(5)]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces.append((top, upper[i], upper[j]))
        faces.append((upper[i], lower[i], upper[j]))
        faces.append((upper[j], lower[i], lower[j]))
        faces.append((bottom, lower[j], lower[i]))
    return PolyMap(_names(faces))


def _grid_vertex(i: int, j: int) -> str:
    return f"{i}.{j}"


def torus_grid(m: int, n: int) -> PolyMap:
    """The ``m`` x ``n`` quadrangulated torus."""
    if m < 3 or n < 3:
        raise ParameterOutOfRange(f"torus_grid needs m, n >= 3 (got {m}, {n})")
    faces = []
    for i in range(m):
        for j in range(n):
            i1, j1 = (i + 1) % m, (j + 1) % n
            faces.append((_grid_vertex(i, j), _grid_vertex(i1, j),
                          _grid_vertex(i1, j1), _grid_vertex(i, j1)))
    return PolyMap(tuple(faces))


def torus_triangulated(m: int, n: int) -> PolyMap:
    """``torus_grid(m, n)`` with every square split along the same diagonal."""
    if m < 3 or n < 3:
        raise ParameterOutOfRange(f"torus_triangulated needs m, n >= 3 (got {m}, {n})")
    faces = []
    for i in range(m):
        for j in range(n):
            i1, j1 = (i + 1) % m, (j + 1) % n
            a, b = _grid_vertex(i, j), _grid_vertex(i1, j)
            c, d = _grid_vertex(i1, j1), _grid_vertex(i, j1)
            faces.append((a, b, c))
            faces.append((a, c, d))
    return PolyMap(tuple(faces))


def projective_plane6() -> PolyMap:
    """The 6-vertex triangulation of the real projective plane (non-orientable)."""
    return PolyMap(_names([
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
        (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
    ]))


def is_valid_map(faces: Sequence[Sequence[str]]) -> bool:
    try:
        PolyMap(_names(faces))
    except RicciPosetError:
        return False
    return True
