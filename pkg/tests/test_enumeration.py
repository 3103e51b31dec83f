import pytest

from trilat.surface.canonical import canonical_code, canonical_form
from trilat.surface.degree_types import census
from trilat.surface.enumeration import brute_force, enumerate_t, enumerate_triangulations, partial_genus


def test_two_faces(named):
    found = enumerate_t(2)
    assert len(found) == 2
    assert {canonical_code(T) for T in found} == {canonical_code(named("T1")), canonical_code(named("T2"))}


def test_odd_sizes_are_empty():
    assert enumerate_t(3) == []
    assert enumerate_t(1) == []


@pytest.mark.parametrize("t", [2, 4, pytest.param(6, marks=pytest.mark.slow), pytest.param(8, marks=pytest.mark.slow)])
def test_matches_brute_force(t):
    assert [canonical_code(T) for T in enumerate_t(t)] == sorted(brute_force(t))


def test_mirror_classes_match_brute_force():
    assert [canonical_code(T, mirror=True) for T in enumerate_t(4, mirror=True)] == sorted(brute_force(4, mirror=True))


def test_tetrahedron_in_t4(named):
    assert canonical_code(named("tetrahedron")) in {canonical_code(T) for T in enumerate_t(4)}


def test_mirror_never_adds_classes():
    for t in (2, 4, 6):
        assert len(enumerate_t(t, mirror=True)) <= len(enumerate_t(t))


def test_enumerate_up_to():
    found = list(enumerate_triangulations(6))
    sizes = [T.t for T in found]
    assert sizes == sorted(sizes) and set(sizes) == {2, 4, 6}
    codes = [canonical_code(T) for T in found]
    assert len(set(codes)) == len(codes)
    assert sum(census(found).values()) == len(found)
    with pytest.raises(ValueError):
        list(enumerate_triangulations(1))


def test_representatives_are_canonical():
    for T in enumerate_t(4):
        assert canonical_form(T).alpha == T.alpha


def test_partial_genus_of_a_glued_pair():
    # two faces glued along all three sides with matching orientation: a sphere
    assert partial_genus([4, 3, 5, 1, 0, 2], 2) == 0
    assert partial_genus([None, None, None], 1) == 0


@pytest.mark.slow
def test_octahedron_in_t8(named):
    assert canonical_code(named("octahedron")) in {canonical_code(T) for T in enumerate_t(8)}
