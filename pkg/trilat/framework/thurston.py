"""
Eigencycles of the flat cone metric: pseudo-geodesics lifted with their
(conjugate) unit tangent as coefficient.

Every edge carries an intrinsic lift e~ = (edge) x conj(tangent), the same
for both of its darts, and a geodesic lifts to the sum of the lifts of its
edges. The hermitian form h (linear in the first argument) is the sum of

  * germ terms for two ends at a singular vertex of degree d, the second m
    steps counterclockwise from the first:
        exp(i(m pi/3 - d pi/6)) / (sqrt 3 sin(d pi/6)),
    and the real value cot(d pi/6)/sqrt 3 for an end paired with itself;
  * crossing terms -(2i/sqrt 3) exp(i psi) at hexagonal vertices, psi the
    counterclockwise angle in (0, pi) between the two lines.

All values lie in Q(omega). The real part of h is the intersection form of
the lattice side. Triangles give the relations e~_0 + w e~_1 + w^2 e~_2, and
at a hexagonal vertex a cycle satisfies sum_j x_{e(u_j)} conj(zeta)^j = 0.

The lift table fixes a frame per face (a direction in Z/6 for every dart)
and records the frame changes across edges. The angles between tangents at a
shared vertex are read off the table, so h is built from it; the table is
checked on every triangle and around every vertex.
"""
from collections import deque
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional

import numpy as np
from absl import logging

from trilat.errors import ensure
from trilat.framework.geodesics import PseudoGeodesic, endpoint_term
from trilat.lattice import rational
from trilat.lattice.eisenstein import conj_mat
from trilat.lattice.qomega import OMEGA, ONE, THETA, UNITS, ZERO, QOmega, zeta_power
from trilat.lattice.zlattice import integral_solve
from trilat.surface.triangulation import Triangulation, phi, phi_inv

STAGE = "thurston"

ETA = QOmega(Fraction(2, 3), Fraction(1, 3))  # 1/2 + theta/6
SIN_ODD = {1: Fraction(1, 2), 3: Fraction(1), 5: Fraction(1, 2)}
CROSSING = {1: ONE - THETA / 3, 2: ONE + THETA / 3}
KAPPA = THETA * Fraction(2, 3)
SCALE = Fraction(3, 2)


def germ(d, m) -> QOmega:
    """h of two geodesic ends at a degree-d vertex, the second m steps counterclockwise."""
    m %= d
    if m == 0:
        return QOmega(endpoint_term(d, 0))
    n = 2 * m - d
    if d % 2:
        return ETA * zeta_power((n - 1) // 2) / SIN_ODD[d]
    return zeta_power(n // 2) * Fraction(2, 3)


def crossing(line_a, line_b) -> QOmega:
    return CROSSING[(line_b - line_a) % 3]


class LiftTable(NamedTuple):
    dirs: List[int]         # direction of every dart in the frame of its face, in units of pi/3
    jumps: List[int]        # frame change across the edge at each dart
    tree: frozenset         # edges used by the search
    base: int               # geodesic with phase 1
    phases: List[QOmega]    # frame coefficient of the first segment of each geodesic
    geodesics: tuple


def phase_section(T: Triangulation, geodesics, base=0, corrupt_edge=None) -> LiftTable:
    """Frames by breadth-first search over faces, normalised at the base geodesic.

    `corrupt_edge` shifts the recorded frame change of one edge; it exists to
    exercise the consistency checks.
    """
    dirs = [None] * T.n_darts
    for s in range(3):
        dirs[s] = 2 * s
    tree = set()
    queue = deque([0])
    seen = {0}
    while queue:
        f = queue.popleft()
        for s in range(3):
            d = 3 * f + s
            a = T.alpha[d]
            g = a // 3
            if g in seen:
                continue
            seen.add(g)
            tree.add(T.edge_of[d])
            dirs[a] = (dirs[d] + 3) % 6
            dirs[phi(a)] = (dirs[a] + 2) % 6
            dirs[phi_inv(a)] = (dirs[a] + 4) % 6
            queue.append(g)
    shift = dirs[geodesics[base].darts[0]] if geodesics else 0
    dirs = [(x - shift) % 6 for x in dirs]
    jumps = [(dirs[T.alpha[d]] - dirs[d] - 3) % 6 for d in range(T.n_darts)]
    if corrupt_edge is not None:
        d, a = T.edge_darts[corrupt_edge]
        jumps[d] = (jumps[d] + 1) % 6
        logging.warning("lift table corrupted at edge %d" % corrupt_edge)
    phases = [zeta_power(-dirs[g.darts[0]]) for g in geodesics]
    return LiftTable(dirs, jumps, frozenset(tree), base, phases, tuple(geodesics))


def relative_phase(T: Triangulation, lt: LiftTable, d, k) -> QOmega:
    """Tangent of sigma^k(alpha d) over the tangent of d, transported through the table."""
    x, jumps = T.alpha[d], lt.jumps[d]
    for _ in range(k):
        y = phi_inv(x)
        jumps += lt.jumps[y]
        x = T.alpha[y]
    return zeta_power(lt.dirs[x] - lt.dirs[d] - jumps)


def turn(T: Triangulation, lt: LiftTable, out, steps) -> int:
    """Angle in units of pi/3 from the dart `out` to sigma^steps(out), read off the table."""
    rel = relative_phase(T, lt, T.alpha[out], steps)
    return next(e for e in range(6) if zeta_power(e + 3) == rel)


def herm_pairing(T: Triangulation, lt: LiftTable, a: PseudoGeodesic, b: PseudoGeodesic) -> QOmega:
    """h(a~, b~); the angles between the tangents at shared vertices come from the lift table."""
    total = ZERO
    for p in a.ends(T):
        out = T.vertex_darts[p.vertex][p.position]
        for q in b.ends(T):
            if p.vertex == q.vertex:
                d = T.degree(p.vertex)
                total = total + germ(d, turn(T, lt, out, (q.position - p.position) % d))
    for p in a.passes(T):
        for q in b.passes(T):
            if p.vertex == q.vertex and p.line != q.line:
                steps = (T.position(q.dart) - T.position(p.dart)) % 6
                total = total + crossing(0, turn(T, lt, p.dart, steps))
    return total


def herm_gram_lifts(T: Triangulation, lt: LiftTable) -> np.ndarray:
    """Hermitian Gram matrix of the lifts of the table's geodesics.

    Raises:
      InvariantBreach: a self-pairing is not real.
    """
    geodesics = lt.geodesics
    m = len(geodesics)
    G = np.empty((m, m), dtype=object)
    for a in range(m):
        for b in range(a, m):
            G[a, b] = herm_pairing(T, lt, geodesics[a], geodesics[b])
            G[b, a] = G[a, b].conj() if a != b else G[a, b]
    for a in range(m):
        ensure(G[a, a].b == 0, STAGE, "self-pairing real", geodesic=a)
    return G


def triangle_relation(T: Triangulation, f) -> np.ndarray:
    """e~(d0) + w e~(d1) + w^2 e~(d2) over the edges."""
    r = np.empty(T.e, dtype=object)
    r[:] = ZERO
    for s in range(3):
        d = 3 * f + s
        r[T.edge_of[d]] = r[T.edge_of[d]] + OMEGA ** s
    return r


def _frame_relation(T: Triangulation, lt: LiftTable, f) -> np.ndarray:
    """Boundary of the face with constant frame coefficient 1, in intrinsic edge coordinates."""
    r = np.empty(T.e, dtype=object)
    r[:] = ZERO
    for s in range(3):
        d = 3 * f + s
        e = T.edge_of[d]
        rep = T.edge_darts[e][0]
        coeff = ONE if d == rep else -zeta_power(lt.jumps[rep])
        r[e] = r[e] + coeff * zeta_power(lt.dirs[rep])
    return r


def hex_functionals(T: Triangulation) -> np.ndarray:
    """Columns: x -> sum_j x_{e(u_j)} conj(zeta)^j, one per hexagonal vertex."""
    hexes = T.hexagonal_vertices()
    F = np.empty((T.e, len(hexes)), dtype=object)
    F[:] = ZERO
    for k, v in enumerate(hexes):
        for j, u in enumerate(T.vertex_darts[v]):
            F[T.edge_of[u], k] = F[T.edge_of[u], k] + zeta_power(-j)
    return F


def edge_matrix(T: Triangulation, geodesics) -> np.ndarray:
    """Geodesic lifts (rows) in intrinsic edge coordinates."""
    M = np.empty((len(geodesics), T.e), dtype=object)
    for i, g in enumerate(geodesics):
        for j, x in enumerate(g.edge_vector(T)):
            M[i, j] = QOmega(x)
    return M


def consistency(T: Triangulation, lt: LiftTable, geodesics, G) -> Dict[str, int]:
    """Triangle relations and vertex loops of the lift table.

    Raises:
      InvariantBreach: naming the first triangle or vertex that fails.
    """
    for f in range(T.t):
        d0 = 3 * f
        expected = triangle_relation(T, f) * zeta_power(lt.dirs[d0])
        ensure(all(a == b for a, b in zip(_frame_relation(T, lt, f), expected)), STAGE,
               "triangle relation of the lift table", triangle=f)
    for v, darts in enumerate(T.vertex_darts):
        total = len(darts) + sum(lt.jumps[phi_inv(u)] for u in darts)
        ensure(total % 6 == 0, STAGE, "vertex loop closes", vertex=v)
    hex_free = not T.hexagonal_vertices()
    if hex_free:
        M = edge_matrix(T, geodesics)
        for f in range(T.t):
            # every edge is a geodesic here
            coeffs = rational.solve_left(M, triangle_relation(T, f))
            ensure(not any(x != 0 for x in G @ conj_mat(coeffs)), STAGE, "triangle relation in the radical",
                   triangle=f)
    for f in range(T.t):
        r = triangle_relation(T, f)
        e0, e1, e2 = (_unit_edge(T, 3 * f + s) for s in range(3))
        lhs = OMEGA * (e0 - e2) - (e1 - e0)
        ensure(all(a == b for a, b in zip(lhs, (ONE + OMEGA) * r)), STAGE, "omega-compatibility", triangle=f)
    return {"vertices": T.n, "triangles": T.t, "hex_free": int(hex_free)}


def _unit_edge(T: Triangulation, d) -> np.ndarray:
    x = np.empty(T.e, dtype=object)
    x[:] = ZERO
    x[T.edge_of[d]] = ONE
    return x


class EigenHomology(NamedTuple):
    generators: np.ndarray  # geodesic lifts in edge coordinates
    relations: np.ndarray   # triangle relations
    gram: np.ndarray
    rank: int


def eigen_homology(T: Triangulation, geodesics, G) -> EigenHomology:
    """Cycles modulo triangle relations, presented on the geodesic lifts.

    Raises:
      InvariantBreach: a dimension count or the radical check fails.
    """
    l = len(T.singular_vertices())
    h = len(T.hexagonal_vertices())
    M = edge_matrix(T, geodesics)
    B = np.array([triangle_relation(T, f) for f in range(T.t)], dtype=object)
    F = hex_functionals(T)
    if h:
        ensure(not any(x != 0 for x in (M @ F).flat), STAGE, "geodesic lifts are cycles")
        ensure(not any(x != 0 for x in (B @ F).flat), STAGE, "triangle relations are cycles")
        dim_z = T.e - rational.rank(F)
    else:
        dim_z = T.e
    ensure(dim_z == T.e - h, STAGE, "one independent condition per hexagonal vertex")
    dim_b = rational.rank(B)
    ensure(dim_b == T.t, STAGE, "triangle relations independent", rank=dim_b, t=T.t)
    ensure(dim_z - dim_b == l - 2, STAGE, "rank of eigenhomology is l - 2", rank=dim_z - dim_b, l=l)
    ensure(rational.rank(np.concatenate([M, B], axis=0)) == dim_z, STAGE, "geodesic lifts span the homology")
    rank = rational.rank(G)
    ensure(rank == l - 2, STAGE, "Gram rank l - 2", rank=rank, l=l)
    ensure(rational.rank(rational.realify(G)) == 2 * (l - 2), STAGE, "realified Gram rank 2(l - 2)")
    # combinations of lifts that are boundaries are exactly the radical
    stacked = np.concatenate([M, -B], axis=0)
    boundary_combos = rational.left_nullspace(stacked)[:, :len(geodesics)]
    for a in boundary_combos:
        ensure(not any(x != 0 for x in a @ G), STAGE, "boundaries lie in the radical")
    ensure(rational.rank(boundary_combos) == len(geodesics) - rank, STAGE, "radical equals the boundaries")
    logging.debug("eigenhomology of rank %d on %d lifts" % (rank, len(geodesics)))
    return EigenHomology(M, B, G, rank)


def compare_real(T: Triangulation, G, closed) -> Dict[str, int]:
    """Real part of the lift Gram against the lattice intersection numbers."""
    m = G.shape[0]
    for a in range(m):
        for b in range(m):
            ensure(G[a, b].real() == closed[a, b], STAGE, "Re h equals the intersection form",
                   pair=[a, b], herm=repr(G[a, b]), lattice=str(closed[a, b]))
    return {"entries": m * m}


def scaled_gram_report(T: Triangulation, geodesics, G) -> Dict[str, bool]:
    """Integrality of 3/2 G; required on geodesics joining two degree-5 vertices."""
    scaled = G * SCALE
    integral = all(x.is_integral() for x in scaled.flat)
    for i, g in enumerate(geodesics):
        ends = g.ends(T)
        if all(T.degree(e.vertex) == 5 for e in ends):
            ensure(scaled[i, i].is_integral(), STAGE, "scaled self-pairing integral", geodesic=i)
            if g.length == 1 and ends[0].vertex != ends[1].vertex:
                ensure(scaled[i, i] == -3, STAGE, "unit geodesic between degree-5 vertices is a root",
                       geodesic=i, value=repr(scaled[i, i]))
    return {"integral": integral}


class DeltaSolution(NamedTuple):
    basis: List[int]          # geodesics carrying the coordinates
    coords: List[QOmega]      # canonical unit multiple
    norm: QOmega              # Thurston scale; 3/2 of it in the M^E scale
    integral: bool


def _greedy_basis(G, rank) -> List[int]:
    chosen = []
    for i in range(G.shape[0]):
        if rational.rank(G[chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
        if len(chosen) == rank:
            break
    return chosen


def _in_eisenstein_span(G, w) -> bool:
    R = rational.realify(G)
    v = rational.real_coords(w)
    N = rational.lcm_denominator(np.concatenate([R.flatten(), np.array(v, dtype=object)]))
    basis = rational.to_int(R * N)
    target = rational.to_int(np.array(v, dtype=object) * N)
    return integral_solve(basis, target) is not None


def canonical_unit(coords) -> List[QOmega]:
    options = [[u * c for c in coords] for u in UNITS]
    return min(options, key=lambda cs: [c.key() for c in cs])


def solve_delta(T: Triangulation, geodesics, hom: EigenHomology, k: int = 1) -> DeltaSolution:
    """The class lambda with h(gamma, lambda) = (2 theta / 3) length(gamma) for every geodesic.

    Raises:
      InvariantBreach: the system is inconsistent, the norm is not t, or
        lambda is not integral although the index k is 1.
    """
    G = hom.gram
    lengths = [g.length for g in geodesics]
    basis = _greedy_basis(G, hom.rank)
    GB = G[np.ix_(basis, basis)]
    rhs = np.array([KAPPA * lengths[i] for i in basis], dtype=object)
    nu = rational.inverse(GB) @ rhs
    full = G[:, basis] @ nu
    ensure(all(full[i] == KAPPA * lengths[i] for i in range(len(geodesics))), STAGE,
           "length pairings consistent")
    mu = [x.conj() for x in nu]
    norm = sum((KAPPA * m * lengths[i] for m, i in zip(mu, basis)), ZERO)
    ensure(norm == T.t, STAGE, "norm of delta equals t", norm=repr(norm), t=T.t)
    w = np.array(mu, dtype=object) @ G[basis, :]
    integral = _in_eisenstein_span(G, w)
    if k == 1:
        ensure(integral, STAGE, "delta integral", coords=[repr(x) for x in mu])
    elif not integral:
        logging.warning("delta is not integral; index k=%d" % k)
    return DeltaSolution(basis, canonical_unit(mu), norm, integral)


def rank_identity(hom: EigenHomology, tower) -> int:
    r_e = tower.R.shape[0] // 2
    total = hom.rank + r_e
    ensure(total == 10, STAGE, "rank eigenhomology + rank R^E = 10", total=total)
    return total


def thurston_dump(lt: LiftTable, G, solution: Optional[DeltaSolution]) -> dict:
    out = {
        "phases": [p.triple() for p in lt.phases],
        "herm_gram": [[x.triple() for x in row] for row in G],
    }
    if solution is not None:
        out["delta"] = {
            "basis": solution.basis,
            "coords": [c.triple() for c in solution.coords],
            "norm": solution.norm.triple(),
            "norm_scaled": (solution.norm * SCALE).triple(),
            "integral": solution.integral,
        }
    return out
