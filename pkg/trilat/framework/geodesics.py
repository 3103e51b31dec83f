"""
Pseudo-geodesics: straight edge paths between singular vertices.

A path leaves a singular vertex along some dart and continues straight
through every hexagonal vertex, i.e. it leaves along the dart opposite to the
one it arrived by (sigma^3 of the reversed incoming dart), until it reaches a
singular vertex again.
"""
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Tuple

import numpy as np
import sympy
from absl import logging

from trilat.errors import DegenerateError, ensure
from trilat.framework.typeiii import sigma_section
from trilat.lattice import rational
from trilat.lattice.zlattice import zeros
from trilat.surface.triangulation import Triangulation

STAGE = "geodesics"


class End(NamedTuple):
    vertex: int
    position: int


class Pass(NamedTuple):
    vertex: int
    line: int  # rotation position of the incoming side mod 3
    dart: int  # the incoming side, leaving the vertex


class PseudoGeodesic(NamedTuple):
    darts: Tuple[int, ...]

    @property
    def length(self):
        return len(self.darts)

    def ends(self, T: Triangulation) -> List[End]:
        first, last = self.darts[0], T.alpha[self.darts[-1]]
        return [End(T.tail(first), T.position(first)), End(T.tail(last), T.position(last))]

    def passes(self, T: Triangulation) -> List[Pass]:
        out = []
        for d in self.darts[:-1]:
            back = T.alpha[d]
            out.append(Pass(T.tail(back), T.position(back) % 3, back))
        return out

    def reverse(self, T: Triangulation):
        return PseudoGeodesic(tuple(T.alpha[d] for d in reversed(self.darts)))

    def edge_vector(self, T: Triangulation) -> np.ndarray:
        x = zeros(1, T.e)[0]
        for d in self.darts:
            x[T.edge_of[d]] += 1
        return x


def _straight(T: Triangulation, d):
    """Dart leaving the head of d opposite to the arrival."""
    x = T.alpha[d]
    for _ in range(3):
        x = T.sigma[x]
    return x


def trace(T: Triangulation) -> List[PseudoGeodesic]:
    """All pseudo-geodesics, each once, in a fixed orientation.

    Raises:
      DegenerateError: fewer than three singular vertices.
    """
    l = len(T.singular_vertices())
    if l < 3:
        raise DegenerateError("pseudo-geodesics need at least 3 singular vertices, found %d" % l)
    found = {}
    for d in range(T.n_darts):
        if T.degree(T.tail(d)) == 6:
            continue
        path = [d]
        while T.degree(T.head(path[-1])) == 6:
            path.append(_straight(T, path[-1]))
            assert len(path) <= T.n_darts, "pseudo-geodesic does not terminate"
        g = PseudoGeodesic(tuple(path))
        key = min(g.darts, g.reverse(T).darts)
        found[key] = PseudoGeodesic(key)
    out = [found[k] for k in sorted(found, key=lambda k: (len(k), k))]
    ensure(len(out) == 3 * l - 6, STAGE, "3l - 6 pseudo-geodesics", count=len(out), l=l)
    logging.debug("traced %d pseudo-geodesics, lengths %s" % (len(out), length_spectrum(out)))
    return out


def length_spectrum(geodesics) -> List[int]:
    return sorted(g.length for g in geodesics)


@lru_cache(maxsize=None)
def endpoint_term(d, j) -> Fraction:
    """Contribution of two ends at a degree-d vertex j rotation steps apart.

    -cos(j pi/3 + k pi/6) / (sqrt 3 sin(k pi/6)) with k = 6 - d, evaluated exactly.
    """
    if not 1 <= d <= 5:
        raise ValueError("endpoint term needs a singular degree, got %r" % d)
    k = 6 - d
    value = -sympy.cos(sympy.pi * (j % d) / 3 + sympy.pi * k / 6) / (sympy.sqrt(3) * sympy.sin(sympy.pi * k / 6))
    return rational.from_sympy(sympy.simplify(value))


def intersection(T: Triangulation, g1: PseudoGeodesic, g2: PseudoGeodesic) -> Fraction:
    """Closed-form intersection number of two pseudo-geodesics."""
    total = Fraction(0)
    for a in g1.ends(T):
        for b in g2.ends(T):
            if a.vertex == b.vertex:
                total += endpoint_term(T.degree(a.vertex), b.position - a.position)
    return total + hexagonal_crossings(T, g1, g2)


def hexagonal_crossings(T: Triangulation, g1: PseudoGeodesic, g2: PseudoGeodesic) -> int:
    return sum(1 for a in g1.passes(T) for b in g2.passes(T) if a.vertex == b.vertex and a.line != b.line)


def lifts(tower, geodesics) -> List[np.ndarray]:
    """Rational lifts sigma(gamma) in L (x) Q."""
    return [sigma_section(tower, g.edge_vector(tower.T)) for g in geodesics]


def gram(T: Triangulation, geodesics) -> np.ndarray:
    m = len(geodesics)
    out = np.empty((m, m), dtype=object)
    for a in range(m):
        for b in range(m):
            out[a, b] = intersection(T, geodesics[a], geodesics[b])
    return out


def h_pairing(tower, g: PseudoGeodesic) -> int:
    """h . gamma, checked against twice the length."""
    value = sigma_section(tower, g.edge_vector(tower.T)) @ tower.H.gram @ tower.h
    ensure(value == 2 * g.length, STAGE, "h.gamma = 2 length", length=g.length, value=str(value))
    return int(value)


def check(tower, geodesics) -> np.ndarray:
    """Closed form against the lattice pairing, the h-degree and the span of Lbar/R.

    Returns the geodesic Gram.
    """
    T = tower.T
    closed = gram(T, geodesics)
    S = lifts(tower, geodesics)
    exact = np.array(S, dtype=object) @ tower.H.gram @ np.array(S, dtype=object).T
    for a in range(len(geodesics)):
        for b in range(len(geodesics)):
            ensure(closed[a, b] == exact[a, b], STAGE, "closed form equals lattice pairing",
                   pair=[a, b], closed=str(closed[a, b]), lattice=str(exact[a, b]))
    for g in geodesics:
        h_pairing(tower, g)
    images = [tower.to_lbar_rational(s) for s in S]
    span = np.concatenate([rational.as_field(tower.R) if tower.R.shape[0] else
                           np.zeros((0, tower.Lbar.rank), dtype=object),
                           np.array(images, dtype=object)], axis=0)
    ensure(rational.rank(span) == tower.Lbar.rank, STAGE, "geodesics span Lbar/R over Q",
           rank=rational.rank(span))
    return closed


def scaled_gram(closed) -> Tuple[np.ndarray, bool]:
    """3/2 times the Gram, and whether it is integral."""
    scaled = np.array(closed, dtype=object) * Fraction(3, 2)
    return scaled, rational.is_integral(scaled)


def geodesic_dump(T: Triangulation, geodesics, closed) -> dict:
    scaled, integral = scaled_gram(closed)
    return {
        "count": len(geodesics),
        "lengths": length_spectrum(geodesics),
        "geodesics": [list(g.darts) for g in geodesics],
        "gram": [[str(x) for x in row] for row in closed],
        "scaled_gram_integral": integral,
    }
