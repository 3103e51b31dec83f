"""
The order-3 automorphism induced by rotating the sides of every triangle.

    H'     Z^{3t}, one generator per dart, with rho = the face permutation
    A      per-face sum-zero vectors, an A_2^t lattice under the form -I
    g      H' -> C_1, a dart goes to its edge

rho is transported to Q through the degree map and the section sigma,
extended over R by the Eisenstein model of each root component, and
completed by the rank-2 lattice Delta carrying h = delta + 2 delta'.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import List, NamedTuple, Optional

import numpy as np
from absl import logging

from trilat.errors import InvariantBreach, ensure
from trilat.framework.typeiii import TypeIIITower, sigma_section
from trilat.lattice import rational
from trilat.lattice.eisenstein import (HermLattice, ZwithRho, hermitian_from_symmetric, standard_lattice,
                                       symmetric_from_hermitian)
from trilat.lattice.roots import (cartan_gram, decompose_roots, diagram_automorphisms, direct_sum, fingerprint,
                                  hyperbolic_plane)
from trilat.lattice.zlattice import IntLattice, identity, intmat, row_basis, zeros
from trilat.surface.triangulation import Triangulation, phi, phi_inv

STAGE = "rho"


class TriangleModule(object):
    def __init__(self, T: Triangulation):
        self.T = T
        n = T.n_darts
        self.rho = zeros(n, n)
        for d in range(n):
            self.rho[d, phi(d)] = 1
        rows = []
        for f in range(T.t):
            for s in range(2):
                row = [0] * n
                row[3 * f + s], row[3 * f + s + 1] = 1, -1
                rows.append(row)
        self.A = intmat(rows, ncols=n)
        self.g = zeros(n, T.e)
        for d in range(n):
            self.g[d, T.edge_of[d]] = 1

    def a_gram(self, a, b):
        """The A-form, minus the standard dot product."""
        return -(np.array(a, dtype=object) @ np.array(b, dtype=object))

    def check(self):
        n = self.T.n_darts
        r = self.rho
        ensure((r @ r @ r == identity(n)).all(), STAGE, "rho^3 = 1 on H'")
        ensure(not (self.A @ (r @ r + r + identity(n))).any(), STAGE, "1 + rho + rho^2 kills A")
        gram = -(self.A @ self.A.T)
        ensure((gram[:2, :2] == intmat([[-2, 1], [1, -2]])).all(), STAGE, "A_2 Gram per triangle")
        ensure(rational.rank(self.A @ r - self.A) == self.A.shape[0], STAGE, "rho fixed-point-free on A")
        return self

    def lift(self, y):
        """A rational a in A with g(a) = y."""
        try:
            c = rational.solve_left(self.A @ self.g, rational.as_field([y])[0])
        except ValueError:
            raise InvariantBreach(STAGE, "degree vector lifts to A", vector=[str(x) for x in y])
        return c @ self.A


def build_rho(T: Triangulation) -> TriangleModule:
    return TriangleModule(T).check()


class Descent(NamedTuple):
    basis: np.ndarray        # Q in Lbar coordinates
    lattice: IntLattice
    rho: np.ndarray          # rho_Q on the basis
    k_tilde: np.ndarray      # rational basis of the kernel of A -> C_1 / zeta
    ratio: Optional[Fraction]


def _row_space(m) -> np.ndarray:
    m = np.array(m, dtype=object)
    if m.size == 0:
        return m
    R, pivots = rational.rref(m)
    return R[:len(pivots)]


def k_one(T: Triangulation) -> np.ndarray:
    rows = zeros(T.n, T.n_darts)
    for v, darts in enumerate(T.vertex_darts):
        for d in darts:
            rows[v, phi_inv(d)] += 1
            rows[v, d] -= 1
    return rows


def descend_to_Q(T: Triangulation, tm: TriangleModule, tower: TypeIIITower) -> Descent:
    """rho_Q on Q, with the two induced forms compared.

    Raises:
      InvariantBreach: a rank, invariance or scale check fails.
    """
    n = T.n
    zeta = tower.deg(tower.xi)
    K1 = k_one(T)
    K2 = K1 @ tm.rho
    ensure(not (K1 @ tm.g).any(), STAGE, "g(K_1) = 0")
    ensure((K2 @ tm.g == zeta).all(), STAGE, "g(rho K_1) = zeta")
    kt = _row_space(np.concatenate([K1, K2], axis=0))
    ensure(kt.shape[0] == 2 * (n - 1), STAGE, "rank K~ = 2(n-1)", rank=kt.shape[0], n=n)
    # direct computation: a in A with g(a) in span zeta
    stacked = np.concatenate([tm.A @ tm.g, -zeta], axis=0)
    coeffs = rational.left_nullspace(stacked)[:, :tm.A.shape[0]]
    direct = _row_space(coeffs @ tm.A)
    ensure(direct.shape[0] == kt.shape[0] and rational.rank(np.concatenate([direct, kt])) == kt.shape[0],
           STAGE, "K~ = {a : g(a) in span zeta}")
    ensure(rational.rank(np.concatenate([kt, kt @ tm.rho])) == kt.shape[0], STAGE, "K~ is rho-invariant")

    basis = tower.Q.basis
    lattice = IntLattice(basis @ tower.Lbar.gram @ basis.T)
    m = basis.shape[0]
    lifts, images = [], []
    for q in basis:
        a = tm.lift(tower.deg(tower.from_lbar(q)))
        lifts.append(a)
        s = sigma_section(tower, (a @ tm.rho) @ tm.g)
        img = tower.to_lbar_rational(s)
        try:
            c = rational.solve_left(basis, img)
        except ValueError:
            raise InvariantBreach(STAGE, "rho(Q) inside Q")
        ensure(rational.is_integral(c), STAGE, "rho_Q integral", row=[str(x) for x in c])
        images.append(rational.to_int(c))
    rho_q = intmat(images, ncols=m) if m else zeros(0, 0)
    if m:
        try:
            ZwithRho(lattice, rho_q).check()
        except ValueError as exc:
            raise InvariantBreach(STAGE, "rho_Q fixed-point-free isometry of order 3", reason=str(exc))
    ratio = _form_ratio(tm, kt, lifts, lattice.gram)
    logging.debug("descent to Q: rank %d, scale %s" % (m, ratio))
    return Descent(basis, lattice, rho_q, kt, ratio)


def _form_ratio(tm, kt, lifts, gram) -> Optional[Fraction]:
    """Constant c with <x, y>' = c <x, y> on Q, where <,>' is the A-form off K~."""
    if not lifts:
        return None
    proj = kt.T @ rational.inverse(kt @ kt.T) @ kt if kt.shape[0] else None
    perp = [a - a @ proj if proj is not None else a for a in lifts]
    ratio = None
    for i in range(len(perp)):
        for j in range(len(perp)):
            other = tm.a_gram(perp[i], perp[j])
            if gram[i, j] == 0:
                ensure(other == 0, STAGE, "forms on Q proportional", pair=[i, j])
                continue
            r = Fraction(other) / gram[i, j]
            if ratio is None:
                ratio = r
            ensure(r == ratio, STAGE, "forms on Q proportional", pair=[i, j], ratio=str(r), expected=str(ratio))
    return ratio


class PExtension(NamedTuple):
    rho: np.ndarray
    lattice: IntLattice
    herm: HermLattice
    choices: List[int]


def _standard_rho(letter, rank):
    """rho in simple-root coordinates of the Eisenstein model, with its Cartan Gram."""
    z = symmetric_from_hermitian(standard_lattice("%s%d" % (letter, rank)))
    comps = decompose_roots(z.lattice)
    assert len(comps) == 1 and (comps[0].letter, comps[0].rank) == (letter, rank)
    S = comps[0].simple_roots
    M = rational.to_int(S @ z.rho @ rational.inverse(S))
    return M, S @ z.lattice.gram @ S.T


def _disc_key(cartan, M):
    dual = rational.inverse(cartan) if cartan.shape[0] else cartan
    key = []
    for row in dual @ M:
        key.append(tuple(Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator) for x in row))
    return tuple(key)


def rho_candidates(letter, rank, cartan) -> List[np.ndarray]:
    """One rho_R per discriminant action among the diagram conjugates of rho and rho^2."""
    M, std_cartan = _standard_rho(letter, rank)
    ensure((std_cartan == cartan).all(), STAGE, "Eisenstein model matches the root component",
           type="%s%d" % (letter, rank))
    seen, out = set(), []
    for perm in diagram_automorphisms(letter, rank):
        Pm = zeros(rank, rank)
        for i, j in enumerate(perm):
            Pm[i, j] = 1
        for power in (M, M @ M):
            cand = Pm.T @ power @ Pm
            key = _disc_key(cartan, cand)
            if key not in seen:
                seen.add(key)
                out.append(cand)
    return out


def _block_diag(blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = zeros(n, n)
    o = 0
    for b in blocks:
        k = b.shape[0]
        out[o:o + k, o:o + k] = b
        o += k
    return out


def extend_to_P(descent: Descent, tower: TypeIIITower) -> PExtension:
    """rho on P from rho_Q and an Eisenstein rho_R per root component.

    Raises:
      InvariantBreach: no candidate combination preserves P.
    """
    gbar = tower.Lbar.gram
    simple = [c.simple_roots for _, c in tower.components]
    cand_lists = []
    for S, (_, c) in zip(simple, tower.components):
        cand_lists.append(rho_candidates(c.letter, c.rank, S @ gbar @ S.T))
    Z = np.concatenate([descent.basis] + simple, axis=0) if simple else descent.basis
    P = tower.P.basis
    ensure(Z.shape[0] == P.shape[0], STAGE, "rank Q + rank R = rank P")
    Pc = rational.solve_left(Z, rational.as_field(P))
    Pc_inv = rational.inverse(Pc)
    found = None
    for choice in product(*[range(len(c)) for c in cand_lists]):
        blocks = [descent.rho] + [cand_lists[i][j] for i, j in enumerate(choice)]
        rho_p = Pc @ _block_diag([b for b in blocks if b.shape[0]]) @ Pc_inv
        if rational.is_integral(rho_p):
            found = (rational.to_int(rho_p), list(choice))
            break
    if found is None:
        raise InvariantBreach(STAGE, "rho extends to P", candidates=[len(c) for c in cand_lists])
    rho_p, choice = found
    lattice = IntLattice(P @ gbar @ P.T)
    try:
        herm = hermitian_from_symmetric(ZwithRho(lattice, rho_p))
    except ValueError as exc:
        raise InvariantBreach(STAGE, "rho_P fixed-point-free isometry of order 3", reason=str(exc))
    ensure(herm.integral_theta, STAGE, "P^E integral-theta")
    logging.debug("rho extended to P with choices %s" % choice)
    return PExtension(rho_p, lattice, herm, choice)


class Delta(NamedTuple):
    lattice: IntLattice  # basis (delta, delta')
    rho: np.ndarray
    herm: HermLattice
    h: np.ndarray        # h = delta + 2 delta'


def build_delta(t: int) -> Delta:
    """The rank-2 lattice spanned by delta and delta' = omega delta."""
    ensure(t > 0 and t % 2 == 0, STAGE, "t even", t=t)
    lattice = IntLattice([[t, -t // 2], [-t // 2, t]])
    rho = intmat([[0, 1], [-1, -1]])
    h = intmat([[1, 2]])[0]
    G = lattice.gram
    ensure(h @ G @ h == 3 * t, STAGE, "h^2 = 3t on Delta")
    ensure(h @ G @ intmat([[1, 0]])[0] == 0, STAGE, "h.delta = 0")
    herm = hermitian_from_symmetric(ZwithRho(lattice, rho))
    ensure(herm.gram[0, 0] == Fraction(3 * t, 2), STAGE, "Delta^E = (3t/2)", gram=repr(herm.gram[0, 0]))
    return Delta(lattice, rho, herm, h)


class GlueResult(NamedTuple):
    found: bool
    fingerprint: Optional[tuple]
    glue_order: int


def _reduce_mod1(v):
    return tuple(Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator) for x in v)


def _disc_elements(L: IntLattice):
    gens = L.disc_generators()
    out = []
    for coeffs in product(*[range(d) for _, d in gens]):
        v = [Fraction(0)] * L.rank
        for c, (g, _) in zip(coeffs, gens):
            v = [a + c * b for a, b in zip(v, g)]
        out.append(_reduce_mod1(v))
    return out


def _q(L, x):
    x = np.array(x, dtype=object)
    return x @ L.gram @ x


def glue_check(P: IntLattice, delta: Delta) -> GlueResult:
    """Search an even unimodular overlattice of P + Delta along the discriminant groups."""
    D = delta.lattice
    ygens = D.disc_generators()
    disc_p, disc_d = abs(P.det()), abs(D.det())
    ensure(disc_p == disc_d, STAGE, "|A_P| = |A_Delta|", disc_p=disc_p, disc_delta=disc_d)
    elems = _disc_elements(P)

    def pair(L, x, y):
        return np.array(x, dtype=object) @ L.gram @ np.array(y, dtype=object)

    def search(k, chosen):
        if k == len(ygens):
            glue = _overlattice(P, D, chosen, [y for y, _ in ygens])
            return glue
        y, order = ygens[k]
        for x in elems:
            if (_q(P, x) + _q(D, y)) % 2 != 0:
                continue
            if any(Fraction(order * a).denominator != 1 for a in x):
                continue
            if any((pair(P, x, chosen[j]) + pair(D, y, ygens[j][0])).denominator != 1 for j in range(k)):
                continue
            res = search(k + 1, chosen + [x])
            if res is not None:
                return res
        return None

    glued = search(0, [])
    ensure(glued is not None, STAGE, "P + Delta glue to an even unimodular lattice", disc=disc_d)
    fp = fingerprint(glued)
    ensure(fp == k3_fingerprint(), STAGE, "glued lattice is E8^2 + U^2", fingerprint=repr(fp))
    logging.debug("glued P and Delta along a group of order %d" % disc_d)
    return GlueResult(True, fp, disc_d)


@lru_cache(maxsize=None)
def k3_fingerprint() -> tuple:
    """Fingerprint of E8^2 + U^2, the even unimodular lattice of signature (2, 18)."""
    E8 = cartan_gram("E", 8)
    return fingerprint(IntLattice(direct_sum(E8, E8, hyperbolic_plane(), hyperbolic_plane())))


def _overlattice(P: IntLattice, D: IntLattice, xs, ys) -> Optional[IntLattice]:
    n = P.rank + D.rank
    G = zeros(n, n)
    G[:P.rank, :P.rank] = P.gram
    G[P.rank:, P.rank:] = D.gram
    rows = [list(r) for r in identity(n)]
    rows += [list(x) + list(y) for x, y in zip(xs, ys)]
    N = rational.lcm_denominator(rows)
    H = row_basis(rational.to_int(np.array(rows, dtype=object) * N))
    B = np.array(H[:n], dtype=object) * Fraction(1, N)
    gram = B @ G @ B.T
    if not rational.is_integral(gram):
        return None
    L = IntLattice(rational.to_int(gram))
    if not L.is_even() or abs(L.det()) != 1:
        return None
    return L


def fingerprint_p(tower: TypeIIITower, bound=2) -> tuple:
    return fingerprint(IntLattice(tower.P.basis @ tower.Lbar.gram @ tower.P.basis.T), bound)
