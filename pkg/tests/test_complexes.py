from __future__ import annotations

import pytest

from ricciposet.complexes import (
    PolyMap,
    SimplicialComplex2,
    canonical_form,
    cube,
    dual_map,
    face_poset_of_map,
    face_poset_of_simplicial,
    icosahedron,
    is_valid_map,
    maps_isomorphic,
    octahedron,
    projective_plane6,
    simplex_id,
    tetrahedron,
    torus_grid,
    torus_triangulated,
)
from ricciposet.ensembles import random_map
from ricciposet.errors import InvalidComplex, InvalidMap, ParameterOutOfRange
from ricciposet.fixtures import fixture_klein_dual, klein_triangulation
from ricciposet.invariants import orientable
from ricciposet.poset import f_vector

STANDARD = {
    "tetrahedron": (tetrahedron, (4, 6, 4), 2),
    "cube": (cube, (8, 12, 6), 2),
    "octahedron": (octahedron, (6, 12, 8), 2),
    "icosahedron": (icosahedron, (12, 30, 20), 2),
    "torus_grid(3,3)": (lambda: torus_grid(3, 3), (9, 18, 9), 0),
    "torus_grid(5,4)": (lambda: torus_grid(5, 4), (20, 40, 20), 0),
    "torus_triangulated(3,3)": (lambda: torus_triangulated(3, 3), (9, 27, 18), 0),
    "projective_plane6": (projective_plane6, (6, 15, 10), 1),
}


@pytest.mark.parametrize("name", STANDARD)
def test_f_vector_and_euler(name, oracle):
    build, fv, chi = STANDARD[name]
    m = build()
    assert m.f_vector() == fv
    assert m.euler_characteristic() == chi
    edges = oracle.edges([list(f) for f in m.faces])
    assert len(edges) == fv[1]
    assert all(len(fs) == 2 for fs in edges.values())
    assert f_vector(face_poset_of_map(m)) == list(fv)


@pytest.mark.parametrize("name", STANDARD)
def test_dual_is_involution(name):
    m = STANDARD[name][0]()
    d = dual_map(m)
    assert d.f_vector() == tuple(reversed(m.f_vector()))
    assert maps_isomorphic(dual_map(d), m)


def test_dual_pairs():
    assert maps_isomorphic(dual_map(cube()), octahedron())
    assert maps_isomorphic(dual_map(tetrahedron()), tetrahedron())
    assert not maps_isomorphic(cube(), octahedron())


def test_canonical_form_ignores_labels():
    m = cube()
    renamed = PolyMap(tuple(tuple("v" + x for x in reversed(f)) for f in m.faces[::-1]))
    assert canonical_form(renamed) == canonical_form(m)


def test_torus_grid_regular():
    m = torus_grid(3, 3)
    assert {m.vertex_degree(v) for v in m.vertices} == {4}
    assert {len(f) for f in m.faces} == {4}


@pytest.mark.parametrize("mn", [(2, 5), (5, 2), (0, 0)])
def test_torus_grid_too_small(mn):
    with pytest.raises(ParameterOutOfRange):
        torus_grid(*mn)


@pytest.mark.parametrize(
    "faces",
    [
        [["a", "b", "c"]],  # edges on one face only
        [["a", "b"], ["b", "a"]],  # digons
        [["a", "b", "a", "c"]],  # repeated vertex
        # two tetrahedra glued at a vertex: link of the shared vertex is two cycles
        [["x", "a", "b"], ["x", "b", "c"], ["x", "c", "a"], ["a", "c", "b"],
         ["x", "d", "e"], ["x", "e", "f"], ["x", "f", "d"], ["d", "f", "e"]],
    ],
)
def test_invalid_maps(faces):
    assert not is_valid_map(faces)
    with pytest.raises(InvalidMap):
        PolyMap(tuple(tuple(f) for f in faces))


def test_disconnected_map_rejected():
    t = tetrahedron().faces
    other = tuple(tuple("z" + v for v in f) for f in t)
    with pytest.raises(InvalidMap):
        PolyMap(t + other)


def test_klein_triangulation():
    m = klein_triangulation()
    assert m.f_vector() == (24, 84, 56)
    assert {m.vertex_degree(v) for v in m.vertices} == {7}
    assert orientable(m)


def test_klein_dual():
    m = fixture_klein_dual()
    assert m.f_vector() == (56, 84, 24)
    assert m.euler_characteristic() == -4
    assert {len(f) for f in m.faces} == {7}
    assert {m.vertex_degree(v) for v in m.vertices} == {3}
    assert orientable(m)


def test_orientability():
    assert orientable(cube())
    assert orientable(torus_grid(4, 3))
    assert not orientable(projective_plane6())


@pytest.mark.parametrize("seed", range(25))
def test_random_maps_valid(seed):
    m = random_map(seed, flips=40)
    base = random_map(seed, flips=0)
    assert m.euler_characteristic() == base.euler_characteristic()
    assert is_valid_map([list(f) for f in m.faces])


def test_random_map_deterministic():
    assert random_map(7).faces == random_map(7).faces


def test_random_map_parameters():
    with pytest.raises(ParameterOutOfRange):
        random_map(0, flips=-1)
    with pytest.raises(ParameterOutOfRange):
        random_map(0, base="klein")


def test_simplicial_closure():
    k = SimplicialComplex2.from_simplices([["a", "b", "c"], ["c", "d"]])
    assert k.dimension() == 2
    p = face_poset_of_simplicial(k)
    assert f_vector(p) == [4, 4, 1]
    assert simplex_id(["c", "a"]) == "a,c"
    assert set(p.upper_covers("c")) == {"a,c", "b,c", "c,d"}


def test_simplicial_rejects_tetrahedra():
    with pytest.raises(InvalidComplex):
        SimplicialComplex2.from_simplices([["a", "b", "c", "d"]])


def test_map_json_roundtrip():
    m = icosahedron()
    again = PolyMap(tuple(tuple(f) for f in m.to_json()["faces"]))
    assert again == m
