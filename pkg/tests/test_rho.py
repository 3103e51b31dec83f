from fractions import Fraction

import pytest

from trilat.errors import InvariantBreach
from trilat.framework import rho as rh
from trilat.lattice.roots import cartan_gram
from trilat.lattice.zlattice import IntLattice, identity, index_in


def test_triangle_module(named):
    T = named("octahedron")
    tm = rh.build_rho(T)
    assert tm.A.shape == (2 * T.t, T.n_darts)
    assert not (rh.k_one(T) @ tm.g).any()
    y = tm.A[0] @ tm.g
    a = tm.lift(y)
    assert (a @ tm.g == y).all()


@pytest.mark.parametrize("t", [2, 4, 8])
def test_delta(t):
    delta = rh.build_delta(t)
    G = delta.lattice.gram
    assert delta.h @ G @ delta.h == 3 * t
    assert delta.herm.gram[0, 0] == Fraction(3 * t, 2)
    assert (delta.rho @ G @ delta.rho.T == G).all()
    assert abs(delta.lattice.det()) == 3 * t * t // 4


def test_delta_needs_even_t():
    with pytest.raises(InvariantBreach) as info:
        rh.build_delta(3)
    assert info.value.record["check"] == "t even"


@pytest.mark.parametrize("letter, rank", [("A", 2), ("D", 4), ("E", 6), ("E", 8)])
def test_rho_candidates(letter, rank):
    cartan = cartan_gram(letter, rank)
    cands = rh.rho_candidates(letter, rank, cartan)
    assert cands
    for M in cands:
        assert (M @ cartan @ M.T == cartan).all()
        assert (M @ M @ M == identity(rank)).all()
        assert not (M == identity(rank)).all()


def test_descent_with_empty_q(named, tower):
    T = named("T2")
    tw = tower("T2")
    d = rh.descend_to_Q(T, rh.build_rho(T), tw)
    assert d.basis.shape[0] == 0 and d.ratio is None
    ext = rh.extend_to_P(d, tw)
    assert ext.herm.rank == 9 and ext.herm.integral_theta
    assert (ext.rho @ ext.rho @ ext.rho == identity(18)).all()


def test_descent_to_q(named, tower):
    T = named("tetrahedron")
    tw = tower("tetrahedron")
    d = rh.descend_to_Q(T, rh.build_rho(T), tw)
    assert d.basis.shape[0] == 2
    assert d.k_tilde.shape[0] == 2 * (T.n - 1)
    assert d.ratio is not None and d.ratio != 0
    assert (d.rho @ d.lattice.gram @ d.rho.T == d.lattice.gram).all()
    ext = rh.extend_to_P(d, tw)
    assert ext.lattice.rank == 18
    assert (ext.rho @ ext.lattice.gram @ ext.rho.T == ext.lattice.gram).all()


@pytest.mark.parametrize("name, disc", [("T2", 3), ("tetrahedron", 12)])
def test_p_and_delta_glue_to_e8_e8_u_u(name, disc, named, tower):
    T = named(name)
    ext = rh.extend_to_P(rh.descend_to_Q(T, rh.build_rho(T), tower(name)), tower(name))
    assert abs(ext.lattice.det()) == disc
    result = rh.glue_check(ext.lattice, rh.build_delta(T.t))
    assert result.found and result.glue_order == disc
    assert result.fingerprint == rh.k3_fingerprint()
    fp = dict(result.fingerprint)
    assert fp["signature"] == (2, 18) and fp["disc_group"] == () and fp["even"]


def test_glue_to_a_smaller_unimodular_lattice_breaches():
    # A2 + Delta glues to U + U, which is not the K3 lattice
    with pytest.raises(InvariantBreach) as info:
        rh.glue_check(IntLattice(cartan_gram("A", 2)), rh.build_delta(2))
    assert info.value.record["check"] == "glued lattice is E8^2 + U^2"


def test_glue_needs_matching_discriminants():
    with pytest.raises(InvariantBreach) as info:
        rh.glue_check(IntLattice(cartan_gram("A", 1)), rh.build_delta(2))
    assert info.value.record["check"] == "|A_P| = |A_Delta|"


def test_fingerprint_p(tower):
    fp = dict(rh.fingerprint_p(tower("T2")))
    assert fp["rank"] == 18 and fp["root_type"] == "E6^3"
    assert fp["signature"] == (0, 18)


@pytest.mark.parametrize("name, n_roots, index", [("T1", 486, 1), ("T2", 216, 3)])
def test_roots_of_p_at_two_faces(name, n_roots, index, tower):
    tw = tower(name)
    fp = dict(rh.fingerprint_p(tw))
    assert dict(fp["norms"])[-2] == n_roots
    # E6^3 has index 3 in P for T2, E8^2 + A2 is all of P for T1
    assert index_in(tw.R, tw.P.basis) == index
