import os

import pytest

from trilat.errors import CurvatureError, InputError, ParseError, TopologyError
from trilat.surface.canonical import canonical_code, canonical_form, is_isomorphic
from trilat.surface.degree_types import ADMISSIBLE_COUNT, admissible_degree_types, census
from trilat.surface.named import get_complex_params, get_complex_registry, named_text
from trilat.surface.parser import format_triangulation, load_triangulation, parse_triangulation
from trilat.surface.subdivide import subdivide
from trilat.surface.triangulation import Triangulation, degree_type, phi, phi_inv

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, "data")


def _text(faces, extra=""):
    return "tri v1\nfaces:\n" + "".join("%d %d %d\n" % f for f in faces) + extra


def _mirror(T):
    return parse_triangulation(_text([(a, c, b) for a, b, c in T.faces()]))


def _shuffle(T, seed=3):
    """Relabel faces by a fixed permutation and rotate each face's sides."""
    order = list(range(T.t))
    order = order[seed % T.t:] + order[:seed % T.t]
    order.reverse()
    perm = [0] * T.n_darts
    for f in range(T.t):
        for s in range(3):
            perm[3 * f + s] = 3 * order[f] + (s + f) % 3
    return T.relabel(perm)


def test_face_maps():
    for d in range(9):
        assert phi_inv(phi(d)) == d
        assert phi(phi(phi(d))) == d


@pytest.mark.parametrize("name", sorted(get_complex_registry()))
def test_named_complexes(name, named):
    T = named(name)
    params = get_complex_params(name)
    assert T.t == params["t"]
    assert degree_type(T).partition == params["degree_type"]
    assert T.e == 3 * T.n - 6 and T.t == 2 * T.n - 4
    assert sorted(T.sigma) == list(range(T.n_darts))


def test_unknown_complex():
    with pytest.raises(KeyError):
        get_complex_params("cube")


def test_degree_type_fields(named):
    dt = degree_type(named("T1"))
    assert dt.partition == (5, 5, 2)
    assert dt.l == 3 and dt.hex_count == 0
    assert sorted(named("T1").degrees()) == [1, 1, 4]


def test_sigma_rotates_around_tail(named):
    T = named("octahedron")
    for d in range(T.n_darts):
        assert T.tail(T.sigma[d]) == T.tail(d)
        assert T.head(d) == T.tail(T.alpha[d])


@pytest.mark.parametrize("name", ["T1", "T2", "tetrahedron", "octahedron"])
def test_data_files_match_registry(name, named):
    T = load_triangulation(os.path.join(DATA, name + ".tri"))
    assert is_isomorphic(T, named(name))


def test_missing_file():
    with pytest.raises(InputError):
        load_triangulation(os.path.join(DATA, "nope.tri"))


def test_bad_header():
    with pytest.raises(ParseError) as info:
        parse_triangulation("tri v2\nfaces:\n0 1 2\n")
    assert info.value.line == 1


def test_non_integer_corner():
    with pytest.raises(ParseError) as info:
        parse_triangulation("tri v1\n# comment\nfaces:\n0 1 x\n")
    assert info.value.line == 4


def test_wrong_arity():
    with pytest.raises(ParseError):
        parse_triangulation("tri v1\nfaces:\n0 1 2 3\n")


def test_open_surface():
    with pytest.raises(TopologyError):
        parse_triangulation(_text([(0, 1, 2)]))


def test_disconnected():
    tetra = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    other = [tuple(x + 4 for x in f) for f in tetra]
    with pytest.raises(TopologyError):
        parse_triangulation(_text(tetra + other))


def test_pinched_vertex():
    tetra = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    relabel = {0: 0, 1: 4, 2: 5, 3: 6}
    other = [tuple(relabel[x] for x in f) for f in tetra]
    with pytest.raises(TopologyError) as info:
        parse_triangulation(_text(tetra + other))
    assert info.value.vertex == 0


def test_degree_seven_is_rejected():
    ring = list(range(2, 9))
    faces = []
    for i in range(7):
        a, b = ring[i], ring[(i + 1) % 7]
        faces.append((0, a, b))
        faces.append((1, b, a))
    with pytest.raises(CurvatureError) as info:
        parse_triangulation(_text(faces))
    assert info.value.degree == 7
    assert info.value.vertex in (0, 1)


def test_rotation_section(named):
    T = named("T1")
    text = _text(T.faces(), "rotation:\n" + "".join(
        "%d: %s\n" % (v, " ".join(map(str, darts))) for v, darts in enumerate(T.vertex_darts)))
    assert parse_triangulation(text).alpha == T.alpha


def test_rotation_section_rejects_foreign_dart(named):
    T = named("T2")
    text = _text(T.faces(), "rotation:\n0: 1\n")
    with pytest.raises(ParseError):
        parse_triangulation(text)


def test_format_round_trip(named):
    S = subdivide(named("T1"), 2)
    back = parse_triangulation(format_triangulation(S))
    assert canonical_code(back) == canonical_code(S)


def test_named_text_parses(named):
    assert parse_triangulation(named_text("tetrahedron")).alpha == named("tetrahedron").alpha


def test_canonical_code_is_label_invariant(named):
    for name in ("octahedron", "icosahedron", "T1"):
        T = named(name)
        U = _shuffle(T)
        assert canonical_code(U) == canonical_code(T)
        assert canonical_form(U).alpha == canonical_form(T).alpha


def test_canonical_form_is_idempotent(named):
    C = canonical_form(named("icosahedron"))
    assert canonical_form(C).alpha == C.alpha
    assert canonical_code(C) == canonical_code(named("icosahedron"))
    assert canonical_code(C).startswith(b"tri:20:")


def test_mirror_identification(named):
    T = subdivide(named("tetrahedron"), 2)
    M = _mirror(T)
    assert canonical_code(T, mirror=True) == canonical_code(M, mirror=True)
    assert is_isomorphic(T, M, mirror=True)


def test_non_isomorphic(named):
    assert not is_isomorphic(named("T1"), named("T2"))
    assert not is_isomorphic(named("tetrahedron"), named("octahedron"))


@pytest.mark.parametrize("name, k", [("T2", 2), ("tetrahedron", 3), ("T1", 2)])
def test_subdivision(name, k, named):
    T = named(name)
    S = subdivide(T, k)
    assert S.t == k * k * T.t
    assert degree_type(S).partition == degree_type(T).partition
    assert len(S.hexagonal_vertices()) == S.n - len(T.singular_vertices())


def test_subdivide_by_one(named):
    T = named("octahedron")
    assert is_isomorphic(subdivide(T, 1), T)
    with pytest.raises(ValueError):
        subdivide(T, 0)


@pytest.mark.parametrize("name, a, b", [("T2", 2, 2), ("T1", 2, 3), ("tetrahedron", 3, 2)])
def test_subdivisions_compose(name, a, b, named):
    T = named(name)
    assert is_isomorphic(subdivide(subdivide(T, a), b), subdivide(T, a * b))


def test_admissible_degree_types():
    types = admissible_degree_types()
    assert len(types) == ADMISSIBLE_COUNT == 47
    assert all(sum(p) == 12 and max(p) <= 5 and len(p) >= 3 for p in types)
    assert (4, 4, 4) in types and (1,) * 12 in types and (6, 6) not in types


def test_census(named):
    counts = census([named("T1"), named("T2"), named("T2")])
    assert counts[(4, 4, 4)] == 2 and counts[(5, 5, 2)] == 1


def test_triangulation_rejects_broken_involution():
    with pytest.raises(TopologyError):
        Triangulation([1, 0, 2, 3, 4, 5])
