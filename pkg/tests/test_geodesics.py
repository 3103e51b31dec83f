from fractions import Fraction

import pytest

from trilat.framework import geodesics as geo
from trilat.framework.typeiii import build_tower, cycle_pairing
from trilat.lattice import rational
from trilat.lattice.zlattice import intmat
from trilat.surface.named import named_triangulation
from trilat.surface.subdivide import subdivide


@pytest.mark.parametrize("d, j, value", [
    (5, 0, -1), (5, 1, 0), (5, 2, 1), (5, 3, 1), (5, 4, 0),
    (4, 0, Fraction(-1, 3)), (4, 1, Fraction(1, 3)), (4, 2, Fraction(2, 3)),
    (3, 0, 0), (3, 1, Fraction(1, 2)),
    (2, 0, Fraction(1, 3)), (2, 1, Fraction(2, 3)),
    (1, 0, 1),
])
def test_endpoint_term(d, j, value):
    assert geo.endpoint_term(d, j) == value


@pytest.mark.parametrize("d", range(1, 6))
def test_endpoint_terms_invert_the_cycle_pairing(d):
    gram = intmat([[cycle_pairing(d, a, b) for b in range(d)] for a in range(d)])
    inv = rational.inverse(gram)
    assert all(inv[a, b] == geo.endpoint_term(d, b - a) for a in range(d) for b in range(d))


def test_endpoint_term_needs_a_cone_point():
    with pytest.raises(ValueError):
        geo.endpoint_term(6, 0)


@pytest.mark.parametrize("name, count", [("T2", 3), ("T1", 3), ("tetrahedron", 6), ("octahedron", 12),
                                         ("icosahedron", 30)])
def test_hex_free_geodesics_are_edges(name, count, named):
    T = named(name)
    gs = geo.trace(T)
    assert len(gs) == count == 3 * len(T.singular_vertices()) - 6
    assert geo.length_spectrum(gs) == [1] * count


def test_t2_gram(named, tower):
    T = named("T2")
    gs = geo.trace(T)
    closed = geo.check(tower("T2"), gs)
    assert all(x == Fraction(2, 3) for x in closed.flat)
    scaled, integral = geo.scaled_gram(closed)
    assert integral and all(x == 1 for x in scaled.flat)


def test_icosahedron_self_pairing(named):
    T = named("icosahedron")
    g = geo.trace(T)[0]
    assert geo.intersection(T, g, g) == -2


def test_reverse_does_not_change_pairings(named):
    T = subdivide(named("tetrahedron"), 2)
    gs = geo.trace(T)
    a, b = gs[0], gs[-1]
    assert geo.intersection(T, a.reverse(T), b) == geo.intersection(T, a, b)
    assert a.reverse(T).reverse(T) == a


def test_subdivision_scales_lengths(named):
    T = named("T1")
    base = geo.length_spectrum(geo.trace(T))
    S = subdivide(T, 3)
    assert geo.length_spectrum(geo.trace(S)) == [3 * x for x in base]


def test_subdivided_lattice_check():
    T = subdivide(named_triangulation("tetrahedron"), 2)
    tw = build_tower(T)
    gs = geo.trace(T)
    closed = geo.check(tw, gs)
    assert (closed == closed.T).all()
    for g in gs:
        assert geo.h_pairing(tw, g) == 2 * g.length
    dump = geo.geodesic_dump(T, gs, closed)
    assert dump["count"] == 6 and dump["lengths"] == [2] * 6


def test_edge_vector_counts_edges(named):
    T = subdivide(named("T2"), 2)
    for g in geo.trace(T):
        x = g.edge_vector(T)
        assert sum(x) == g.length == 2
        assert len(g.passes(T)) == 1 and len(g.ends(T)) == 2
