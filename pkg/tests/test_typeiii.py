import pytest

from trilat.errors import InvariantBreach
from trilat.framework.typeiii import (RESIDUAL_TYPES, anticanonical, build_tower, check_cycle, cycle_pairing,
                                      del_pezzo_model, find_cycle, hex_relation_rows, hex_relations,
                                      primitivity_index, tower_summary, triple_point_expected, zeta_vectors)
from trilat.lattice.roots import format_root_type
from trilat.surface.named import named_triangulation
from trilat.surface.subdivide import subdivide

ROOT_TYPES = {
    "T1": "E8^2+A2",
    "T2": "E6^3",
    "tetrahedron": "D4^4",
    "octahedron": "A2^6",
    "icosahedron": "0",
}


@pytest.mark.parametrize("d", range(1, 7))
def test_del_pezzo_models(d):
    m = del_pezzo_model(d)
    assert m.cycle.shape == (d, 10 - d)
    assert (sum(m.cycle) == anticanonical(d)).all()
    assert format_root_type([(c.letter, c.rank) for c in m.components]) == RESIDUAL_TYPES[d]
    assert m.residual.shape[0] == max(0, 10 - 2 * d)
    assert not (m.residual @ m.gram @ m.cycle.T).any()


@pytest.mark.parametrize("d", range(1, 7))
def test_cycle_search_feeds_the_models(d):
    found = find_cycle(d)
    assert found is not None and check_cycle(d, found)
    assert [tuple(r) for r in del_pezzo_model(d).cycle] == found


@pytest.mark.parametrize("d, cycle", [
    (6, [(0, 1, 0, 0), (1, -1, 0, -1), (0, 0, 0, 1), (1, 0, -1, -1), (0, 0, 1, 0), (1, -1, -1, 0)]),
    (4, [(0, 1, 0, 0, 0, 0), (1, -1, 0, 0, 0, -1), (0, 0, 0, 0, 0, 1), (2, -1, -1, -1, -1, -1)]),
    (2, [(0, 1, 0, 0, 0, 0, 0, 0), (3, -2, -1, -1, -1, -1, -1, -1)]),
    (1, [(3, -1, -1, -1, -1, -1, -1, -1, -1)]),
])
def test_first_cycle_in_candidate_order(d, cycle):
    assert find_cycle(d) == cycle


def test_cycle_pairing():
    assert cycle_pairing(1, 0, 0) == 1
    assert cycle_pairing(2, 0, 1) == 2
    assert cycle_pairing(6, 0, 0) == -1
    assert cycle_pairing(6, 0, 1) == cycle_pairing(6, 5, 0) == 1
    assert cycle_pairing(6, 0, 3) == 0


def test_bad_component_degree():
    with pytest.raises(ValueError):
        del_pezzo_model(7)
    assert not check_cycle(4, [[0, 1, 0, 0, 0, 0]])


@pytest.mark.parametrize("name", sorted(ROOT_TYPES))
def test_tower(name, tower, named):
    tw = tower(name)
    T = named(name)
    l = len(T.singular_vertices())
    assert tw.rank_H == sum(10 - d for d in T.degrees())
    assert tw.L.shape[0] == 18 + T.n
    assert tw.Lbar.rank == 19 and tw.Lbar.signature() == (1, 18) and tw.Lbar.is_even()
    assert tw.h @ tw.H.gram @ tw.h == 3 * T.t
    h_pairings = tw.h_bar @ tw.Lbar.gram
    assert len(h_pairings) == 19 and all(x % 2 == 0 for x in h_pairings)
    assert tw.root_type_string() == ROOT_TYPES[name]
    assert tw.P.rank == 18
    assert tw.Q.rank == 2 * l - 6


@pytest.mark.parametrize("name", ["T1", "T2", "tetrahedron"])
def test_small_towers_are_primitive(name, tower):
    tw = tower(name)
    assert primitivity_index(tw) == 1
    disc = 1
    for x in tw.Lbar.disc_group():
        disc *= x
    assert disc == tw.T.t


def test_triple_point_expected(named):
    T = named("T1")
    # edges at a degree-1 vertex meet its nodal curve
    assert sorted(triple_point_expected(T, a, b) for a, b in T.edge_darts) == [-2, 0, 0]
    T2 = named("T2")
    assert all(triple_point_expected(T2, a, b) == -2 for a, b in T2.edge_darts)


def test_zeta_vectors_sum_to_zero(named):
    T = named("octahedron")
    Z = zeta_vectors(T)
    assert Z.shape == (T.n, T.e)
    assert not sum(Z).any()


def test_hex_free_relations(tower):
    hr = hex_relations(tower("tetrahedron"))
    assert hex_relation_rows(tower("tetrahedron").T).shape == (0, 6)
    assert hr.C.shape == (6, 6)
    assert hr.image_rank == 6


def test_subdivided_tower():
    T = subdivide(named_triangulation("T2"), 2)
    tw = build_tower(T)
    assert primitivity_index(tw) == 2
    hr = hex_relations(tw)
    assert hex_relation_rows(T).shape == (2 * len(T.hexagonal_vertices()), T.e)
    assert hr.C.shape[0] == hr.image_rank
    assert hr.index >= 1
    summary = tower_summary(tw)
    assert summary["k"] == 2 and summary["t"] == 8
    assert summary["rank_Lbar"] == 19 and summary["h_squared"] == 24


def test_to_l_rejects_outside_vectors(tower):
    tw = tower("T2")
    with pytest.raises(InvariantBreach) as info:
        tw.to_L(tw.dart_class[0])
    assert info.value.record["stage"] == "typeiii"
