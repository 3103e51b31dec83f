"""
Exact linear algebra over Q and Q(omega) on numpy object arrays.

Entries are ints and `fractions.Fraction`s, or `QOmega`. Vectors are rows; a
system is written X @ A = B. Rational matrices are handed to sympy's
DomainMatrix over QQ. A Q(omega) matrix A is replaced by its realification R,
the rational matrix with real(mu @ A) == real(mu) @ R, where real(a + b w) is
the pair (a, b); R is multiplicative, so ranks halve and inverses carry over.
"""
from fractions import Fraction
from math import gcd
from typing import List

import numpy as np
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from trilat.lattice.qomega import ONE, QOmega

W = sympy.Symbol("w")


def as_field(m, convert=Fraction):
    m = np.array(m, dtype=object)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else np.zeros((0, 0), dtype=object)
    out = np.empty(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        out[idx] = convert(x)
    return out


def _matrix(m) -> np.ndarray:
    m = np.array(m, dtype=object)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    return m


def _is_qomega(m) -> bool:
    return any(isinstance(x, QOmega) for x in np.asarray(m, dtype=object).flat)


def to_domain(m) -> DomainMatrix:
    """DomainMatrix over QQ of a rational array."""
    m = _matrix(m)

    def qq(x):
        x = Fraction(x)
        return QQ(x.numerator, x.denominator)

    return DomainMatrix([[qq(x) for x in row] for row in m], m.shape, QQ)


def from_domain(dm: DomainMatrix) -> np.ndarray:
    out = np.empty(dm.shape, dtype=object)
    for i, row in enumerate(dm.to_list()):
        for j, x in enumerate(row):
            out[i, j] = Fraction(int(QQ.numer(x)), int(QQ.denom(x)))
    return out


def realify(A) -> np.ndarray:
    """Rational 2m x 2n matrix R with real(mu @ A) == real(mu) @ R."""
    A = _matrix(A)
    m, n = A.shape
    R = np.empty((2 * m, 2 * n), dtype=object)
    R[:] = Fraction(0)
    for (k, j), c in np.ndenumerate(A):
        c = QOmega.coerce(c)
        R[2 * k, 2 * j], R[2 * k, 2 * j + 1] = c.a, c.b
        R[2 * k + 1, 2 * j], R[2 * k + 1, 2 * j + 1] = -c.b, c.a - c.b
    return R


def real_coords(vec) -> List[Fraction]:
    out = []
    for x in vec:
        x = QOmega.coerce(x)
        out.extend([x.a, x.b])
    return out


def complex_rows(X) -> np.ndarray:
    """Inverse of real_coords, row by row."""
    X = _matrix(X)
    out = np.empty((X.shape[0], X.shape[1] // 2), dtype=object)
    for i in range(X.shape[0]):
        for k in range(out.shape[1]):
            out[i, k] = QOmega(X[i, 2 * k], X[i, 2 * k + 1])
    return out


def rref(m):
    """Reduced row echelon form of a rational matrix.

    Returns:
      (R, pivots): R of the shape of m with the pivot rows first, every
      pivot equal to 1, and the list of pivot columns.
    """
    m = _matrix(m)
    if m.size == 0:
        return m.copy(), []
    R, pivots = to_domain(m).rref()
    R = from_domain(R)
    for i, c in enumerate(pivots):
        R[i] = R[i] / R[i, c]
    return R, list(pivots)


def rank(m) -> int:
    m = _matrix(m)
    if m.size == 0:
        return 0
    if _is_qomega(m):
        return rank(realify(m)) // 2
    return to_domain(m).rank()


def nullspace(m):
    """Basis (rows) of {x : m @ x = 0}."""
    return left_nullspace(_matrix(m).T)


def left_nullspace(m):
    """Basis (rows) of {x : x @ m = 0}."""
    m = _matrix(m)
    rows, cols = m.shape
    if _is_qomega(m):
        spanning = complex_rows(left_nullspace(realify(m))) if rows else np.zeros((0, 0), dtype=object)
        return _independent(spanning, rows)
    if rows == 0:
        return np.zeros((0, 0), dtype=object)
    if cols == 0:
        return as_field([[int(i == j) for j in range(rows)] for i in range(rows)])
    return from_domain(to_domain(m.T).nullspace())


def _independent(rows, width) -> np.ndarray:
    """Q(omega)-independent subset of a Q-spanning set."""
    chosen = []
    for row in rows:
        if rank(np.array(chosen + [row], dtype=object)) == len(chosen) + 1:
            chosen.append(row)
    return np.array(chosen, dtype=object) if chosen else np.zeros((0, width), dtype=object)


def solve_left(A, B):
    """One solution X of X @ A = B (any, if A has dependent rows).

    Raises:
      ValueError: the system is inconsistent.
    """
    A = np.array(A, dtype=object)
    B = np.array(B, dtype=object)
    squeeze = B.ndim == 1
    if squeeze:
        B = B.reshape(1, -1)
    if _is_qomega(A) or _is_qomega(B):
        real_b = np.array([real_coords(row) for row in B], dtype=object).reshape(B.shape[0], -1)
        X = complex_rows(solve_left(realify(A), real_b))
        return X[0] if squeeze else X
    # X @ A = B  <=>  A.T @ X.T = B.T
    aug = np.concatenate([A.T, B.T], axis=1)
    R, pivots = rref(aug)
    n = A.shape[0]
    if any(p >= n for p in pivots):
        raise ValueError("inconsistent linear system")
    X = np.empty((B.shape[0], n), dtype=object)
    X[:] = Fraction(0)
    for i, pc in enumerate(pivots):
        X[:, pc] = R[i, n:]
    return X[0] if squeeze else X


def inverse(m):
    m = _matrix(m)
    if m.shape[0] != m.shape[1] or rank(m) != m.shape[0]:
        raise ValueError("matrix is singular")
    if _is_qomega(m):
        return complex_rows(inverse(realify(m))[::2])
    if m.size == 0:
        return m.copy()
    return from_domain(to_domain(m).inv())


def det(m):
    m = _matrix(m)
    n = m.shape[0]
    if _is_qomega(m):
        return _det_qomega(m) if n else ONE
    if n == 0:
        return Fraction(1)
    d = to_domain(m).det()
    return Fraction(int(QQ.numer(d)), int(QQ.denom(d)))


def _det_qomega(m) -> QOmega:
    """Division-free determinant in Q[w], reduced modulo w^2 + w + 1."""

    def expr(x):
        x = QOmega.coerce(x)
        return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * W

    M = sympy.Matrix(m.shape[0], m.shape[1], lambda i, j: expr(m[i, j]))
    reduced = sympy.Poly(sympy.rem(sympy.expand(M.det(method="berkowitz")), W ** 2 + W + 1, W), W, domain=QQ)
    return QOmega(from_sympy(reduced.coeff_monomial(1)), from_sympy(reduced.coeff_monomial(W)))


def from_sympy(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def lcm_denominator(m):
    den = 1
    for x in np.array(m, dtype=object).flat:
        q = Fraction(x).denominator
        den = den * q // gcd(den, q)
    return den


def to_int(m):
    """Integer array from an integral rational array; raises on fractions."""
    m = np.array(m, dtype=object)
    out = np.empty(m.shape, dtype=object)
    for idx, x in np.ndenumerate(m):
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError("non-integral entry %s" % x)
        out[idx] = int(x.numerator)
    return out


def is_integral(m):
    return all(Fraction(x).denominator == 1 for x in np.array(m, dtype=object).flat)
