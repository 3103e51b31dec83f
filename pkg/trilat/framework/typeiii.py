"""
The combinatorial Type III surface of a triangulation and its cohomology tower.

Each vertex of degree d becomes a del Pezzo surface of degree d, written as
a blow-up of the plane with Picard basis (L, E_1, ..., E_{9-d}). Its cycle of
double curves is attached to the darts at the vertex in rotation order, so
every dart carries one curve class. From the direct sum H of the Picard
lattices we build

    D      edge classes  class(d) - class(alpha d)
    L      the orthogonal complement of D in H
    K      span of the vertex sums xi_i, equal to D cap L
    Lbar   L / Sat(K), even of signature (1, 18)
    h      sum of all dart classes, h^2 = 3t
    P      h-orthogonal part of Lbar
    R      image of the residual root lattices of the components
    Q      orthogonal complement of R in P
"""
from functools import lru_cache
from itertools import product
from typing import List, NamedTuple

import numpy as np
from absl import logging

from trilat.errors import InvariantBreach, ensure
from trilat.lattice import rational
from trilat.lattice.roots import RootComponent, decompose_roots, format_root_type, roots
from trilat.lattice.zlattice import (IntLattice, Sublattice, identity, intmat,
                                     kernel, left_kernel, quotient_by_isotropic, row_basis, row_rank,
                                     same_span, zeros)
from trilat.surface.triangulation import Triangulation, degree_type, phi

STAGE = "typeiii"

RESIDUAL_TYPES = {6: "0", 5: "0", 4: "A2", 3: "D4", 2: "E6", 1: "E8"}


class DelPezzoModel(NamedTuple):
    degree: int
    gram: np.ndarray      # diag(1, -1, ..., -1)
    cycle: np.ndarray     # rows in rotation order
    residual: np.ndarray  # basis of the orthogonal complement of the cycle
    components: List[RootComponent]


def pic_gram(d) -> np.ndarray:
    n = 10 - d
    G = zeros(n, n)
    G[0, 0] = 1
    for i in range(1, n):
        G[i, i] = -1
    return G


def anticanonical(d) -> np.ndarray:
    return intmat([[3] + [-1] * (9 - d)])[0]


def cycle_pairing(d, a, b) -> int:
    """Intersection of cycle classes a and b of a degree-d component."""
    return -int(a == b) + int((a + 1) % d == b) + int((b + 1) % d == a)


def check_cycle(d, cycle) -> bool:
    G = pic_gram(d)
    cycle = intmat(cycle, ncols=10 - d)
    if cycle.shape[0] != d:
        return False
    for a in range(d):
        for b in range(d):
            if cycle[a] @ G @ cycle[b] != cycle_pairing(d, a, b):
                return False
    return bool((sum(cycle) == anticanonical(d)).all())


@lru_cache(maxsize=None)
def del_pezzo_model(d) -> DelPezzoModel:
    """Model of the degree-d component with its cycle and residual lattice.

    Raises:
      ValueError: d outside [1, 6].
    """
    if d not in RESIDUAL_TYPES:
        raise ValueError("component degree must lie in [1, 6], got %r" % d)
    G = pic_gram(d)
    found = find_cycle(d)
    assert found is not None, "no anticanonical cycle in degree %d" % d
    cycle = intmat(found)
    residual = kernel(cycle @ G) if row_rank(cycle) < 10 - d else zeros(0, 10 - d)
    comps = []
    if residual.shape[0]:
        R = IntLattice(residual @ G @ residual.T)
        comps = [RootComponent(c.letter, c.rank, c.simple_roots @ residual) for c in decompose_roots(R)]
        assert format_root_type([(c.letter, c.rank) for c in comps]) == RESIDUAL_TYPES[d]
    return DelPezzoModel(d, G, cycle, residual, comps)


def _candidate_classes(d):
    """Classes aL - sum b_i E_i with a <= 3, anticanonical degree 1 and square -1 (or 1 if d = 1)."""
    n = 9 - d
    square = 1 if d == 1 else -1
    out = []
    for a in range(4):
        for bs in product(range(-1, a + 1), repeat=n):
            if 3 * a - sum(bs) == 1 and a * a - sum(b * b for b in bs) == square:
                out.append((a,) + tuple(-b for b in bs))
    return out


@lru_cache(maxsize=None)
def find_cycle(d):
    """First anticanonical cycle of d curves in candidate order, as (L, E_1, ..., E_{9-d}) coefficients."""
    if d == 1:
        nodal = anticanonical(1)
        return [tuple(int(x) for x in nodal)] if check_cycle(1, [nodal]) else None
    G = pic_gram(d)
    cands = [intmat([c])[0] for c in _candidate_classes(d)]

    def extend(chain):
        if len(chain) == d:
            return chain if check_cycle(d, chain) else None
        k = len(chain)
        for c in cands:
            if any((c == x).all() for x in chain):
                continue
            if all(c @ G @ chain[j] == cycle_pairing(d, k, j) for j in range(k)):
                found = extend(chain + [c])
                if found:
                    return found
        return None

    chain = extend([])
    return [tuple(int(x) for x in c) for c in chain] if chain else None


class TypeIIITower(object):
    """Cohomology tower of the Type III surface of a triangulation."""

    def __init__(self, T: Triangulation):
        self.T = T
        self.models = [del_pezzo_model(T.degree(v)) for v in range(T.n)]
        self.offsets = np.cumsum([0] + [10 - m.degree for m in self.models]).tolist()
        self.rank_H = self.offsets[-1]
        G = zeros(self.rank_H, self.rank_H)
        for v, m in enumerate(self.models):
            o = self.offsets[v]
            G[o:o + m.gram.shape[0], o:o + m.gram.shape[0]] = m.gram
        self.H = IntLattice(G)
        self.dart_class = zeros(T.n_darts, self.rank_H)
        for v, darts in enumerate(T.vertex_darts):
            o, m = self.offsets[v], self.models[v]
            for j, d in enumerate(darts):
                self.dart_class[d, o:o + m.cycle.shape[1]] = m.cycle[j]
        self.edge_rep = [a for a, _ in T.edge_darts]

    def embed(self, v, x) -> np.ndarray:
        out = zeros(1, self.rank_H)[0]
        o = self.offsets[v]
        out[o:o + len(x)] = x
        return out

    def build(self):
        T, G = self.T, self.H.gram
        logging.debug("type III tower".center(60, "-"))
        self.D = intmat([self.dart_class[a] - self.dart_class[b] for a, b in T.edge_darts])
        self.xi = intmat([sum((self.dart_class[d] - self.dart_class[T.alpha[d]] for d in darts),
                              zeros(1, self.rank_H)[0]) for darts in T.vertex_darts])
        self.L = kernel(self.D @ G)
        # rational left inverse of the basis of L
        self._L_pinv = self.L.T @ rational.inverse(self.L @ self.L.T)
        self.L_lattice = IntLattice(self.L @ G @ self.L.T)
        self.K = self.xi
        self.quotient = quotient_by_isotropic(self.L_lattice, [self.to_L(x) for x in self.xi])
        self.Lbar = self.quotient.lattice
        self.h = sum(self.dart_class)
        self.h_bar = self.to_lbar(self.h)
        self._build_residual()
        self.P = Sublattice(self.Lbar, kernel(intmat([self.h_bar]) @ self.Lbar.gram))
        normals = np.concatenate([self.R, intmat([self.h_bar])], axis=0)
        self.Q = Sublattice(self.Lbar, kernel(normals @ self.Lbar.gram))
        self.check()
        logging.info("tower t=%d n=%d: rank L=%d, Lbar %s, R=%s"
                     % (T.t, T.n, self.L.shape[0], self.Lbar.signature(), self.root_type_string()))
        return self

    def _build_residual(self):
        rows, comps = [], []
        for v, m in enumerate(self.models):
            for r in m.residual:
                rows.append(self.embed(v, r))
            for c in m.components:
                simple = intmat([self.to_lbar(self.embed(v, r)) for r in c.simple_roots])
                comps.append((v, RootComponent(c.letter, c.rank, simple)))
        self.R_H = intmat(rows, ncols=self.rank_H)
        self.R = intmat([self.to_lbar(r) for r in self.R_H], ncols=self.Lbar.rank)
        self.components = comps

    def to_L(self, x) -> np.ndarray:
        """L coordinates of an integral vector of H lying in L."""
        c = np.array(x, dtype=object) @ self._L_pinv
        if not rational.is_integral(c) or (rational.to_int(c) @ self.L != np.array(x, dtype=object)).any():
            raise InvariantBreach(STAGE, "vector lies in L", vector=[str(a) for a in x])
        return rational.to_int(c)

    def to_lbar(self, x) -> np.ndarray:
        return self.quotient.project(self.to_L(x))

    def to_lbar_rational(self, x) -> np.ndarray:
        """Image in Lbar (x) Q of a rational vector of L (x) Q."""
        c = np.array(x, dtype=object) @ self._L_pinv
        return c @ self.quotient.project_matrix

    def from_lbar(self, y) -> np.ndarray:
        """A lift to H of Lbar coordinates."""
        return self.quotient.lift(y) @ self.L

    def deg(self, x) -> np.ndarray:
        """Degrees of an element of L on the double curves, indexed by edge."""
        reps = self.dart_class[self.edge_rep]
        return np.array(x, dtype=object) @ self.H.gram @ reps.T

    def root_type_string(self):
        return format_root_type([(c.letter, c.rank) for _, c in self.components])

    def check(self):
        T, G = self.T, self.H.gram
        n, t = T.n, T.t
        ensure(self.H.signature() == (n, 3 * n + 12) and abs(self.H.det()) == 1,
               STAGE, "H odd unimodular of signature (n, 3n+12)", n=n)
        ensure(self.L.shape[0] == 18 + n, STAGE, "rank L = 18 + n", rank=self.L.shape[0], n=n)
        ensure(not any(sum(self.xi)), STAGE, "sum of xi vanishes")
        # D cap L is the radical of D
        gram_D = self.D @ G @ self.D.T
        radical = left_kernel(gram_D)
        ensure(same_span(radical @ self.D, self.K), STAGE, "D cap L = K")
        dk = quotient_by_isotropic(IntLattice(gram_D), radical).lattice
        ok = (dk.rank == t - 1 and dk.is_negative_definite() and dk.is_even()
              and dk.disc_group() == ([t] if t > 1 else []))
        if ok and t <= 8:
            ok = len(roots(dk)) == t * (t - 1)
        ensure(ok, STAGE, "D/K isometric to A_{t-1}", t=t, rank=dk.rank, disc=dk.disc_group())
        ensure(self.Lbar.rank == 19 and self.Lbar.is_even() and self.Lbar.signature() == (1, 18),
               STAGE, "Lbar even of signature (1, 18)", signature=list(self.Lbar.signature()))
        ensure(self.h @ G @ self.h == 3 * t, STAGE, "h^2 = 3t", t=t)
        ensure(all(x % 2 == 0 for x in (intmat([self.h_bar]) @ self.Lbar.gram)[0]), STAGE, "h.Lbar even")
        ensure(all(self.h @ G @ c == 1 for c in self.dart_class), STAGE, "h has degree 1 on double curves")
        for e, (a, b) in enumerate(T.edge_darts):
            ensure(triple_point_value(self, a, b) == triple_point_expected(T, a, b), STAGE,
                   "triple point formula", edge=e)
        gram_R_H = self.R_H @ G @ self.R_H.T
        ensure((self.R @ self.Lbar.gram @ self.R.T == gram_R_H).all() and row_rank(self.R) == self.R_H.shape[0],
               STAGE, "R maps isometrically into Lbar")
        ensure(all(x == 0 for x in self.R @ self.Lbar.gram @ self.h_bar), STAGE, "R lies in P")
        ensure(self.Q.rank == 2 * len(T.singular_vertices()) - 6, STAGE, "rank Q = 2l - 6",
               rank=self.Q.rank, l=len(T.singular_vertices()))


def triple_point_value(tower, a, b) -> int:
    G = tower.H.gram
    return int(tower.dart_class[a] @ G @ tower.dart_class[a] + tower.dart_class[b] @ G @ tower.dart_class[b])


def triple_point_expected(T, a, b) -> int:
    """-2, or 0 when one side of the edge is the nodal curve of a degree-1 vertex."""
    nodal = sum(1 for d in (a, b) if T.degree(T.tail(d)) == 1)
    return -2 + 2 * nodal


def build_tower(T: Triangulation) -> TypeIIITower:
    """Build and check the tower.

    Raises:
      InvariantBreach: one of the structural identities fails.
    """
    return TypeIIITower(T).build()


def primitivity_index(tower: TypeIIITower) -> int:
    t = tower.T.t
    disc = 1
    for x in tower.Lbar.disc_group():
        disc *= x
    ensure(t % disc == 0, STAGE, "|disc Lbar| divides t", t=t, disc=disc)
    k = t // disc
    ensure(t % (2 * k * k) == 0, STAGE, "2k^2 divides t", t=t, k=k)
    return k


class HexRelations(NamedTuple):
    C: np.ndarray        # basis of the hexagonal-relation kernel in Z^E
    zeta: np.ndarray     # deg xi_i
    C_prime: np.ndarray  # {x in C : sigma(x) integral}
    index: int           # [C : C']
    image_rank: int      # rank of deg(L)


def hex_relation_rows(T: Triangulation) -> np.ndarray:
    rows = []
    for v in T.hexagonal_vertices():
        u = T.vertex_darts[v]
        for p, q, r, s in ((0, 3, 2, 5), (2, 5, 4, 1)):
            row = [0] * T.e
            row[T.edge_of[u[p]]] += 1
            row[T.edge_of[u[q]]] -= 1
            row[T.edge_of[u[r]]] -= 1
            row[T.edge_of[u[s]]] += 1
            rows.append(row)
    return intmat(rows, ncols=T.e)


def zeta_vectors(T: Triangulation) -> np.ndarray:
    out = zeros(T.n, T.e)
    for v, darts in enumerate(T.vertex_darts):
        for d in darts:
            out[v, T.edge_of[d]] += 1
            out[v, T.edge_of[phi(d)]] -= 1
    return out


def sigma_section(tower: TypeIIITower, x) -> np.ndarray:
    """Rational vector of L (x) Q supported on the double curves with degrees x.

    Raises:
      InvariantBreach: x violates a hexagonal relation.
    """
    T = tower.T
    out = rational.as_field(zeros(1, tower.rank_H))[0]
    for v, darts in enumerate(T.vertex_darts):
        d = len(darts)
        gram = intmat([[cycle_pairing(d, a, b) for b in range(d)] for a in range(d)])
        rhs = [x[T.edge_of[u]] for u in darts]
        try:
            c = rational.solve_left(gram, rational.as_field([rhs])[0])
        except ValueError:
            raise InvariantBreach(STAGE, "hexagonal relations", vertex=v)
        for j, u in enumerate(darts):
            out = out + c[j] * tower.dart_class[u]
    return out


def hex_relations(tower: TypeIIITower) -> HexRelations:
    T, G = tower.T, tower.H.gram
    rows = hex_relation_rows(T)
    C = kernel(rows) if rows.shape[0] else identity(T.e)
    zeta = zeta_vectors(T)
    ensure((zeta == tower.deg(tower.xi)).all(), STAGE, "zeta = deg xi")
    ensure(all(rows.shape[0] == 0 or not (rows @ z).any() for z in zeta), STAGE, "zeta lies in C")
    degs = tower.deg(tower.L)
    image_rank = row_rank(degs)
    ensure(image_rank == C.shape[0], STAGE, "rank Im(L -> C1) = rank C", image=image_rank, C=C.shape[0])
    ensure(all(rows.shape[0] == 0 or not (rows @ y).any() for y in degs), STAGE, "Im(L -> C1) inside C")
    ker = left_kernel(degs) @ tower.L if degs.shape[0] else zeros(0, tower.rank_H)
    ensure(same_span(ker, tower.R_H), STAGE, "ker(L -> C1) = R")
    S = [sigma_section(tower, c) for c in C]
    for s, c in zip(S, C):
        ensure((tower.deg(s) == c).all(), STAGE, "deg sigma(x) = x")
        ensure(not (tower.R_H @ G @ s).any(), STAGE, "sigma(C) orthogonal to R")
    C_prime, index = _integral_part(S, C)
    disc_R = 1
    for v, m in enumerate(tower.models):
        if m.residual.shape[0]:
            disc_R *= abs(IntLattice(m.residual @ m.gram @ m.residual.T).det())
    ensure(disc_R % index == 0, STAGE, "[C : C'] divides |A_R|", index=index, disc=disc_R)
    logging.debug("hexagonal relations: rank C=%d, [C:C']=%d, |A_R|=%d" % (C.shape[0], index, disc_R))
    return HexRelations(C, zeta, C_prime, index, image_rank)


def _integral_part(S, C):
    """Basis (in Z^E) of {x in C : sigma(x) integral} and its index in C."""
    r = len(S)
    if r == 0:
        return zeros(0, C.shape[1]), 1
    N = rational.lcm_denominator(S)
    scaled = rational.to_int(np.array(S, dtype=object) * N)
    m = scaled.shape[1]
    stacked = np.concatenate([scaled, N * identity(m)], axis=0)
    coeffs = row_basis(left_kernel(stacked)[:, :r])
    index = abs(int(rational.det(coeffs)))
    return coeffs @ C, index


def tower_summary(tower: TypeIIITower) -> dict:
    T = tower.T
    return {
        "t": T.t,
        "n": T.n,
        "degree_type": list(degree_type(T).partition),
        "rank_H": tower.rank_H,
        "rank_L": tower.L.shape[0],
        "rank_Lbar": tower.Lbar.rank,
        "signature_Lbar": list(tower.Lbar.signature()),
        "disc_Lbar": tower.Lbar.disc_group(),
        "h_squared": int(tower.h @ tower.H.gram @ tower.h),
        "root_type_R": tower.root_type_string(),
        "rank_P": tower.P.rank,
        "rank_Q": tower.Q.rank,
        "k": primitivity_index(tower),
    }
