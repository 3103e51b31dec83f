"""
Exact linear algebra over the integers.

Integer matrices are numpy arrays with dtype=object so that entries are
arbitrary precision Python ints. Lattice vectors are rows throughout: a
sublattice is given by a matrix whose rows generate it in ambient
coordinates, and a linear map acts as x -> x @ F. Normal forms come from
sympy's DomainMatrix over ZZ.

Sign convention: definite lattices are negative definite, roots have norm -2.
"""
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from absl import logging
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix, normalforms

from trilat.lattice import rational


def intmat(rows, ncols=None) -> np.ndarray:
    """Integer matrix from nested sequences; `ncols` fixes the width of an empty one."""
    m = np.array(rows, dtype=object)
    if m.ndim != 2:
        if m.size == 0:
            return np.zeros((0, ncols or 0), dtype=object)
        m = m.reshape(1, -1)
    out = np.empty(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        out[idx] = int(x)
    return out


def identity(n) -> np.ndarray:
    m = np.zeros((n, n), dtype=object)
    for i in range(n):
        m[i, i] = 1
    return m


def zeros(r, c) -> np.ndarray:
    m = np.empty((r, c), dtype=object)
    m[:] = 0
    return m


def _int2d(m) -> np.ndarray:
    return intmat(m, ncols=np.shape(m)[1] if np.ndim(m) == 2 else 0)


def to_domain(m) -> DomainMatrix:
    """DomainMatrix over ZZ of an integer matrix."""
    m = _int2d(m)
    return DomainMatrix([[ZZ(x) for x in row] for row in m], m.shape, ZZ)


def from_domain(dm: DomainMatrix) -> np.ndarray:
    out = zeros(*dm.shape)
    for i, row in enumerate(dm.to_list()):
        for j, x in enumerate(row):
            out[i, j] = int(x)
    return out


def row_rank(m) -> int:
    return rational.rank(_int2d(m))


def row_basis(m) -> np.ndarray:
    """Canonical basis of the row span of m: its Hermite normal form, transposed.

    Every row ends in a positive pivot and the pivots move strictly to the
    right. In a pivot column the earlier rows are zero and the later rows are
    reduced into [0, pivot).
    """
    m = _int2d(m)
    if not m.any():
        return zeros(0, m.shape[1])
    return from_domain(normalforms.hermite_normal_form(to_domain(m.T))).T.copy()


def smith_form(m) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form.

    Returns:
      (D, U, V) with U, V unimodular, U @ m @ V == D, D diagonal with
      non-negative entries d_1 | d_2 | ... and the zeros last.
    """
    m = _int2d(m)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return m.copy(), identity(rows), identity(cols)
    _, s, t = normalforms.smith_normal_decomp(to_domain(m))
    U, V = from_domain(s), from_domain(t)
    D = U @ m @ V
    for i in range(min(rows, cols)):
        if D[i, i] < 0:
            D[i], U[i] = -D[i], -U[i]
    off = D.copy()
    for i in range(min(rows, cols)):
        off[i, i] = 0
    assert not off.any(), "smith decomposition is not diagonal"
    return D, U, V


def invariant_factors(m) -> List[int]:
    m = _int2d(m)
    if 0 in m.shape:
        return []
    return [abs(int(d)) for d in normalforms.invariant_factors(to_domain(m)) if d != 0]


def kernel(m) -> np.ndarray:
    """Saturated basis (rows, canonical) of {x integral : m @ x = 0}.

    With U @ m @ V == D it is spanned by the columns of V at the zero
    diagonal positions of D.
    """
    m = _int2d(m)
    rows, cols = m.shape
    D, _, V = smith_form(m)
    free = [j for j in range(cols) if j >= rows or D[j, j] == 0]
    if not free:
        return zeros(0, cols)
    return row_basis(V[:, free].T)


def left_kernel(m) -> np.ndarray:
    """Saturated basis of {x integral : x @ m = 0}."""
    return kernel(_int2d(m).T)


def saturation(basis, n=None) -> np.ndarray:
    """Smallest primitive sublattice of Z^n containing the row span of `basis`."""
    basis = intmat(basis, ncols=n)
    n = basis.shape[1]
    if row_rank(basis) == 0:
        return zeros(0, n)
    normals = kernel(basis)
    if normals.shape[0] == 0:
        return identity(n)
    return kernel(normals)


def is_primitive(basis) -> bool:
    return same_span(saturation(basis), basis)


def same_span(a, b) -> bool:
    ra, rb = row_basis(a), row_basis(b)
    return ra.shape == rb.shape and (ra == rb).all()


def integral_solve(basis, v):
    """Integer coefficients c with c @ basis == v, or None if v is not in the span.

    With U @ basis @ V == D this is y @ D == v @ V and c = y @ U.
    """
    v = list(v)
    if not rational.is_integral(v):
        return None
    basis = intmat(basis, ncols=len(v))
    k, n = basis.shape
    D, U, V = smith_form(basis)
    w = intmat([v], ncols=n)[0] @ V
    y = zeros(1, k)[0]
    for j in range(n):
        d = D[j, j] if j < k else 0
        if d == 0:
            if w[j] != 0:
                return None
        elif w[j] % d:
            return None
        else:
            y[j] = w[j] // d
    return y @ U


def in_span(basis, v) -> bool:
    return integral_solve(basis, v) is not None


def index_in(sub, sup) -> int:
    """[sup : sub] for sub contained in sup of the same rank."""
    coeffs = intmat([integral_solve(sup, row) for row in sub])
    return abs(int(rational.det(coeffs)))


def complete_basis(primitive) -> Tuple[np.ndarray, np.ndarray]:
    """Extend a primitive basis to a basis of Z^n.

    Returns:
      (W, Winv): W unimodular whose first rows are `primitive`, and its inverse.
    """
    S = intmat(primitive)
    s, n = S.shape
    D, U, V = smith_form(S)
    assert all(D[i, i] == 1 for i in range(s)), "basis is not primitive"
    Vinv = rational.to_int(rational.inverse(V))
    W = np.concatenate([S, Vinv[s:]], axis=0) if s < n else S.copy()
    Winv = rational.to_int(rational.inverse(W))
    return W, Winv


class IntLattice(object):
    """A free Z-module with a symmetric integral bilinear form."""

    def __init__(self, gram):
        self.gram = intmat(gram, ncols=len(gram))
        assert (self.gram == self.gram.T).all(), "gram must be symmetric"

    @property
    def rank(self):
        return self.gram.shape[0]

    def pair(self, x, y):
        return (np.array(x, dtype=object) @ self.gram @ np.array(y, dtype=object))

    def det(self):
        if self.rank == 0:
            return 1
        return int(rational.det(self.gram))

    def is_even(self):
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def is_nondegenerate(self):
        return self.rank == 0 or self.det() != 0

    def signature(self) -> Tuple[int, int]:
        p, q, _ = signature_of(self.gram)
        return p, q

    def disc_group(self) -> List[int]:
        """Cyclic decomposition of the discriminant group (invariant factors > 1)."""
        if not self.is_nondegenerate():
            raise ValueError("discriminant group of a degenerate lattice")
        return [d for d in invariant_factors(self.gram) if d != 1]

    def disc_generators(self):
        """Generators of L*/L as rational rows, with their orders.

        With U @ G @ V = D the classes U[i] / d_i generate, d_i the order.
        """
        D, U, _ = smith_form(self.gram)
        gens = []
        for i in range(self.rank):
            d = D[i, i]
            if d > 1:
                gens.append(([Fraction(x, d) for x in U[i]], d))
        return gens

    def is_negative_definite(self):
        return self.signature() == (0, self.rank)

    def sublattice(self, basis):
        return Sublattice(self, basis)

    def __repr__(self):
        return "IntLattice(rank=%d, sig=%s)" % (self.rank, self.signature())


def signature_of(gram) -> Tuple[int, int, int]:
    """(positive, negative, radical) counts of a symmetric integer matrix.

    The characteristic polynomial has real roots only, so its sign changes
    count the positive ones (Descartes) and its trailing zeros the radical.
    """
    G = _int2d(gram)
    n = G.shape[0]
    if n == 0:
        return 0, 0, 0
    coeffs = [int(c) for c in to_domain(G).charpoly()]
    radical = 0
    while coeffs[-1] == 0:
        coeffs.pop()
        radical += 1
    signs = [c > 0 for c in coeffs if c != 0]
    pos = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return pos, n - radical - pos, radical


class Sublattice(object):
    """Rows of `basis` generate a sublattice of `ambient` in ambient coordinates."""

    def __init__(self, ambient: IntLattice, basis):
        self.ambient = ambient
        self.basis = intmat(basis, ncols=ambient.rank)

    @property
    def rank(self):
        return self.basis.shape[0]

    def reduce(self):
        return Sublattice(self.ambient, row_basis(self.basis))

    def gram(self) -> np.ndarray:
        return self.basis @ self.ambient.gram @ self.basis.T

    def lattice(self) -> IntLattice:
        return IntLattice(self.gram())

    def saturation(self):
        return Sublattice(self.ambient, saturation(self.basis, self.ambient.rank))

    def orth_complement(self):
        """Primitive sublattice of ambient vectors pairing to zero with every generator."""
        if self.rank == 0:
            return Sublattice(self.ambient, identity(self.ambient.rank))
        return Sublattice(self.ambient, kernel(self.basis @ self.ambient.gram))

    def coordinates(self, v):
        """Integer coordinates of an ambient vector in this basis, or None."""
        return integral_solve(self.basis, v)

    def contains(self, other) -> bool:
        return all(in_span(self.basis, row) for row in other.basis)

    def __eq__(self, other):
        return same_span(self.basis, other.basis)

    def __repr__(self):
        return "Sublattice(rank=%d in %d)" % (self.rank, self.ambient.rank)


def saturation_sublattice(s: Sublattice) -> Sublattice:
    return s.saturation()


def orth_complement(s: Sublattice) -> Sublattice:
    return s.orth_complement()


class Quotient(object):
    """L / Sat(K) for K inside the radical of L.

    `transversal` rows (in L coordinates) map to the quotient basis and
    `project` sends L coordinates to quotient coordinates.
    """

    def __init__(self, lattice, sat_k, transversal, project):
        self.lattice = lattice
        self.sat_k = sat_k
        self.transversal = transversal
        self.project_matrix = project

    def project(self, x):
        return np.array(x, dtype=object) @ self.project_matrix

    def lift(self, y):
        return np.array(y, dtype=object) @ self.transversal


def quotient_by_isotropic(L: IntLattice, k_rows) -> Quotient:
    """Quotient of L by the saturation of K.

    Raises:
      ValueError: K is not orthogonal to all of L.
    """
    K = intmat(k_rows, ncols=L.rank)
    if K.shape[0] and not (K @ L.gram == 0).all():
        raise ValueError("K must pair to zero with every vector of L")
    sat = saturation(K, L.rank)
    s = sat.shape[0]
    if s == 0:
        return Quotient(L, sat, identity(L.rank), identity(L.rank))
    W, Winv = complete_basis(sat)
    T = W[s:]
    proj = Winv[:, s:]
    gram = T @ L.gram @ T.T
    q = IntLattice(gram)
    logging.debug("quotient by isotropic rank %d: %d -> %d" % (s, L.rank, q.rank))
    return Quotient(q, sat, T, proj)
