import pytest

from trilat.lattice.roots import (cartan_gram, decompose_roots, diagram_automorphisms, direct_sum, fingerprint,
                                  format_root_type, hyperbolic_plane, norm_histogram, root_type, roots,
                                  short_vectors, simple_roots)
from trilat.lattice.zlattice import IntLattice


@pytest.mark.parametrize("letter, n, count", [("A", 1, 2), ("A", 2, 6), ("A", 4, 20), ("D", 4, 24),
                                              ("D", 5, 40), ("E", 6, 72), ("E", 7, 126), ("E", 8, 240)])
def test_root_counts(letter, n, count):
    L = IntLattice(cartan_gram(letter, n))
    rs = roots(L)
    assert len(rs) == count
    assert len(set(rs)) == count
    assert simple_roots(L, rs).shape[0] == n


def test_short_vectors_are_symmetric():
    L = IntLattice(cartan_gram("D", 4))
    vs = set(short_vectors(L, 4))
    assert all(tuple(-x for x in v) in vs for v in vs)
    assert norm_histogram(L, 4) == {-4: 24, -2: 24}


def test_short_vectors_of_a2_are_integer_tuples():
    vs = short_vectors(IntLattice(cartan_gram("A", 2)), 2)
    assert len(vs) == 6
    assert all(type(a) is int for v in vs for a in v)
    assert vs == [(-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)]


def test_short_vectors_rejects_indefinite():
    with pytest.raises(ValueError):
        short_vectors(IntLattice(hyperbolic_plane()), 2)


def test_decompose_direct_sum():
    L = IntLattice(direct_sum(cartan_gram("A", 2), cartan_gram("E", 6), cartan_gram("A", 2)))
    assert root_type(L) == [("E", 6), ("A", 2), ("A", 2)]
    assert format_root_type(root_type(L)) == "E6+A2^2"
    comps = decompose_roots(L)
    for c in comps:
        assert (c.simple_roots @ L.gram @ c.simple_roots.T == cartan_gram(c.letter, c.rank)).all()


def test_format_root_type_empty():
    assert format_root_type([]) == "0"


def test_diagram_automorphisms():
    assert len(diagram_automorphisms("D", 4)) == 6
    assert len(diagram_automorphisms("E", 6)) == 2
    assert diagram_automorphisms("E", 8) == [list(range(8))]
    G = cartan_gram("E", 6)
    for p in diagram_automorphisms("E", 6):
        assert all(G[i, j] == G[p[i], p[j]] for i in range(6) for j in range(6))


def test_fingerprint_separates_d4_from_a1_sum():
    a = fingerprint(IntLattice(cartan_gram("D", 4)))
    b = fingerprint(IntLattice(direct_sum(*[cartan_gram("A", 1)] * 4)))
    assert a != b
    assert dict(a)["root_type"] == "D4"
    assert dict(b)["root_type"] == "A1^4"


def test_fingerprint_of_indefinite_lattice():
    fp = dict(fingerprint(IntLattice(direct_sum(hyperbolic_plane(), cartan_gram("E", 8)))))
    assert fp["signature"] == (1, 9)
    assert fp["disc_group"] == ()
    assert "norms" not in fp
