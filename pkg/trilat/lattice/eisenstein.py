"""
Eisenstein lattices and their dictionary with Z-lattices carrying a
fixed-point-free isometry of order 3.

Conventions (fixed project wide):
  * omega acts on a Z-lattice as x -> x @ rho (row vectors);
  * the hermitian form is h(x, y) = (3<x,y> + theta <x, rho y - rho^2 y>) / 2,
    which is linear in x and conjugate-linear in y;
  * in Q(omega)-coordinates h(x, y) = x @ G @ conj(y), G[k][l] = h(b_k, b_l);
  * <x, y> = (2/3) Re h(x, y).
"""
from fractions import Fraction
from typing import List

import numpy as np
from absl import logging

from trilat.errors import InvariantBreach
from trilat.lattice import rational
from trilat.lattice.qomega import OMEGA, ONE, THETA, THETA_BAR, ZERO, QOmega
from trilat.lattice.zlattice import IntLattice, identity, intmat


def qmat(rows) -> np.ndarray:
    m = np.array(rows, dtype=object)
    out = np.empty(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        out[idx] = QOmega.coerce(x)
    return out


def conj_mat(m) -> np.ndarray:
    out = np.empty(np.shape(m), dtype=object)
    for idx, x in np.ndenumerate(np.asarray(m, dtype=object)):
        out[idx] = QOmega.coerce(x).conj()
    return out


class ZwithRho(object):
    """A Z-lattice with a fixed-point-free isometry rho of order 3."""

    def __init__(self, lattice: IntLattice, rho):
        self.lattice = lattice
        self.rho = intmat(rho, ncols=lattice.rank)

    def check(self):
        G, r = self.lattice.gram, self.rho
        n = self.lattice.rank
        if not (r @ G @ r.T == G).all():
            raise ValueError("rho is not an isometry")
        if not (r @ r @ r == identity(n)).all() or (n and (r == identity(n)).all()):
            raise ValueError("rho does not have order 3")
        if rational.rank(r - identity(n)) != n:
            raise ValueError("rho has fixed vectors")
        return self


class HermLattice(object):
    """A Z[omega]-lattice given by its hermitian Gram on a Z[omega]-basis."""

    def __init__(self, gram, zbasis=None):
        self.gram = qmat(gram)
        # Z-coordinates of the Z[omega]-basis, when it came from a ZwithRho
        self.zbasis = zbasis
        m = self.rank
        for k in range(m):
            for l in range(m):
                assert self.gram[k, l] == self.gram[l, k].conj(), "gram is not hermitian"

    @property
    def rank(self):
        return self.gram.shape[0]

    @property
    def integral_theta(self):
        return all(x.in_theta_ideal() for x in self.gram.flat)

    def h(self, x, y) -> QOmega:
        total = ZERO
        for k in range(self.rank):
            for l in range(self.rank):
                total = total + QOmega.coerce(x[k]) * self.gram[k, l] * QOmega.coerce(y[l]).conj()
        return total

    def norm(self, x) -> QOmega:
        return self.h(x, x)

    def det(self) -> QOmega:
        return rational.det(self.gram)

    def __repr__(self):
        return "HermLattice(rank=%d)" % self.rank


def _h_value(G, rho, x, y) -> QOmega:
    a = x @ G @ y
    yr = y @ rho
    b = x @ G @ (yr - yr @ rho)
    val = QOmega(Fraction(3 * a + b, 2), b)
    if not val.is_integral():
        raise InvariantBreach("eisenstein", "hermitian value in Z[omega]", value=repr(val))
    return val


def _qomega_basis(z: ZwithRho):
    """Vectors v_k with {v_k, v_k rho} a Q-basis."""
    n = z.lattice.rank
    chosen, span = [], np.zeros((0, n), dtype=object)
    for i in range(n):
        e = identity(n)[i]
        trial = np.concatenate([span, [e, e @ z.rho]], axis=0)
        if rational.rank(trial) == trial.shape[0]:
            chosen.append(e)
            span = trial
        if span.shape[0] == n:
            break
    return chosen, span


def eisenstein_row_basis(rows) -> List[List[QOmega]]:
    """Basis of the Z[omega]-span of integral rows (Euclidean elimination)."""
    M = [list(map(QOmega.coerce, r)) for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: M[i][c].norm())
            M[r], M[p] = M[p], M[r]
            clean = True
            for i in range(r + 1, len(M)):
                if M[i][c] != 0:
                    q = (M[i][c] / M[r][c]).round()
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    clean = clean and M[i][c] == 0
            if clean:
                break
        if r < len(M) and M[r][c] != 0:
            r += 1
    return [row for row in M[:r]]


def hermitian_from_symmetric(z: ZwithRho) -> HermLattice:
    """Eisenstein lattice of a Z-lattice with fixed-point-free order-3 isometry.

    Raises:
      ValueError: rho fails the isometry / order / fixed point checks.
      InvariantBreach: some value of h leaves Z[omega].
    """
    z.check()
    n = z.lattice.rank
    if n == 0:
        return HermLattice(np.zeros((0, 0), dtype=object), zbasis=intmat([], ncols=0))
    chosen, span = _qomega_basis(z)
    m = len(chosen)
    # Q(omega)-coordinates of the standard basis of Z^n
    Y = rational.solve_left(span, rational.as_field(identity(n)))
    coords = [[QOmega(Y[i, 2 * k], Y[i, 2 * k + 1]) for k in range(m)] for i in range(n)]
    den = rational.lcm_denominator([[c.a for c in row] + [c.b for c in row] for row in coords])
    scaled = [[c * den for c in row] for row in coords]
    basis = [[c / den for c in row] for row in eisenstein_row_basis(scaled)]
    assert len(basis) == m
    zrows = []
    for row in basis:
        v = sum((c.a * span[2 * k] + c.b * span[2 * k + 1] for k, c in enumerate(row)),
                np.zeros(n, dtype=object))
        zrows.append(rational.to_int(v))
    zbasis = intmat(zrows)
    full = np.concatenate([zbasis, zbasis @ z.rho], axis=0)
    assert abs(rational.det(full)) == 1, "Z[omega]-basis does not span the lattice"
    G = z.lattice.gram
    gram = [[_h_value(G, z.rho, zbasis[k], zbasis[l]) for l in range(m)] for k in range(m)]
    herm = HermLattice(gram, zbasis=zbasis)
    logging.debug("hermitian lattice of rank %d, integral-theta=%s" % (m, herm.integral_theta))
    return herm


def symmetric_from_hermitian(herm: HermLattice) -> ZwithRho:
    """Underlying Z-lattice on the basis (b_1, w b_1, b_2, w b_2, ...).

    Raises:
      ValueError: the lattice is not integral-theta.
    """
    if not herm.integral_theta:
        raise ValueError("symmetric_from_hermitian needs an integral-theta lattice")
    m = herm.rank
    powers = [ONE, OMEGA]
    G = np.zeros((2 * m, 2 * m), dtype=object)
    for k in range(m):
        for l in range(m):
            for i in range(2):
                for j in range(2):
                    val = powers[i] * herm.gram[k, l] * powers[j].conj()
                    x = Fraction(2, 3) * val.real()
                    assert x.denominator == 1
                    G[2 * k + i, 2 * l + j] = int(x)
    rho = np.zeros((2 * m, 2 * m), dtype=object)
    for k in range(m):
        rho[2 * k, 2 * k + 1] = 1
        rho[2 * k + 1, 2 * k] = -1
        rho[2 * k + 1, 2 * k + 1] = -1
    return ZwithRho(IntLattice(G), rho)


def reflect(herm: HermLattice, z, x):
    """Order-3 complex reflection s_z(x) = x - (1 - w) h(x,z)/h(z,z) z.

    Raises:
      ValueError: z is not a root (norm -3).
    """
    hz = herm.norm(z)
    if hz != -3:
        raise ValueError("reflection needs a root of norm -3, got %r" % hz)
    c = (ONE - OMEGA) * herm.h(x, z) / hz
    return [QOmega.coerce(a) - c * QOmega.coerce(b) for a, b in zip(x, z)]


def chain_gram(j) -> np.ndarray:
    """j roots in a chain: -3 on the diagonal, theta-bar above, theta below."""
    G = np.empty((j, j), dtype=object)
    G[:] = ZERO
    for k in range(j):
        G[k, k] = QOmega(-3)
        if k + 1 < j:
            G[k, k + 1] = THETA_BAR
            G[k + 1, k] = THETA
    return G


STANDARD_CHAINS = {"A2": 1, "D4": 2, "E6": 3, "E8": 4, "M": 10}


def standard_lattice(name) -> HermLattice:
    if name == "H":
        return HermLattice([[ZERO, THETA], [THETA_BAR, ZERO]])
    if name not in STANDARD_CHAINS:
        raise ValueError("unknown standard lattice %s" % name)
    return HermLattice(chain_gram(STANDARD_CHAINS[name]))


def looijenga_moduli(herm: HermLattice) -> np.ndarray:
    """|H(z_k, z_l)|^2 for H = -h / (2 sqrt 3), i.e. N(h) / 12."""
    out = np.empty(herm.gram.shape, dtype=object)
    for idx, x in np.ndenumerate(herm.gram):
        out[idx] = x.norm() / 12
    return out
