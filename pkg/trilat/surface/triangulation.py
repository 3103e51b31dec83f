"""
Triangulations of the 2-sphere as oriented combinatorial maps.

Dart 3f+s is side s of face f, running counterclockwise from corner s to
corner s+1. The face permutation phi sends 3f+s to 3f+(s+1)%3, alpha is the
edge involution, and sigma = alpha o phi^-1 is the counterclockwise rotation
of darts around their tail. A dart d and sigma(d) bound the face of d at the
common tail.
"""
from collections import namedtuple

from trilat.errors import CurvatureError, TopologyError

DegreeType = namedtuple("DegreeType", ["partition", "l", "hex_count"])


def phi(d):
    return 3 * (d // 3) + (d % 3 + 1) % 3


def phi_inv(d):
    return 3 * (d // 3) + (d % 3 + 2) % 3


class Triangulation(object):
    """Immutable oriented triangulated sphere.

    `labels` optionally maps each dart to the id of its tail vertex as given
    in an input file; vertices are otherwise numbered by their smallest dart.
    """

    def __init__(self, alpha, labels=None, name=None):
        self.alpha = tuple(int(a) for a in alpha)
        self.name = name
        n_darts = len(self.alpha)
        if n_darts == 0 or n_darts % 3:
            raise TopologyError("number of darts must be a positive multiple of 3")
        self.t = n_darts // 3
        for d, a in enumerate(self.alpha):
            if not 0 <= a < n_darts or a == d or self.alpha[a] != d:
                raise TopologyError("edge involution is broken at dart %d" % d, face=d // 3)
        self.sigma = tuple(self.alpha[phi_inv(d)] for d in range(n_darts))
        self._build_vertices(labels)
        self._build_edges()
        self.validate()

    def _build_vertices(self, labels):
        n_darts = len(self.alpha)
        seen = [False] * n_darts
        orbits = []
        for d in range(n_darts):
            if seen[d]:
                continue
            orbit, x = [], d
            while not seen[x]:
                seen[x] = True
                orbit.append(x)
                x = self.sigma[x]
            orbits.append(orbit)
        if labels is not None:
            by_label = {}
            for orbit in orbits:
                ids = {labels[d] for d in orbit}
                if len(ids) != 1:
                    raise TopologyError("darts of one vertex carry several ids %s" % sorted(ids),
                                        vertex=min(ids))
                v = ids.pop()
                if v in by_label:
                    raise TopologyError("vertex %d is not a disc (pinched)" % v, vertex=v)
                by_label[v] = orbit
            missing = [v for v in range(len(by_label)) if v not in by_label]
            if missing:
                raise TopologyError("vertex ids are not contiguous", vertex=missing[0])
            orbits = [by_label[v] for v in range(len(by_label))]
        self.vertex_darts = tuple(tuple(o) for o in orbits)
        vertex_of = [0] * n_darts
        for v, orbit in enumerate(orbits):
            for d in orbit:
                vertex_of[d] = v
        self.vertex_of = tuple(vertex_of)

    def _build_edges(self):
        edge_of = [-1] * len(self.alpha)
        edges = []
        for d, a in enumerate(self.alpha):
            if edge_of[d] < 0:
                edge_of[d] = edge_of[a] = len(edges)
                edges.append((d, a))
        self.edge_of = tuple(edge_of)
        self.edge_darts = tuple(edges)

    def validate(self):
        """Connectedness, Euler characteristic 2, degrees in [1, 6]."""
        n_darts = len(self.alpha)
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for x in (self.sigma[d], self.alpha[d], phi(d)):
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        if len(seen) != n_darts:
            raise TopologyError("the gluing is not connected",
                                face=min(set(range(n_darts)) - seen) // 3)
        if self.n - self.e + self.t != 2:
            raise TopologyError("Euler characteristic %d, expected 2" % (self.n - self.e + self.t))
        for v, darts in enumerate(self.vertex_darts):
            if len(darts) > 6:
                raise CurvatureError("vertex %d has degree %d > 6" % (v, len(darts)),
                                     vertex=v, degree=len(darts))
        assert self.e == 3 * self.n - 6 and self.t == 2 * self.n - 4

    @property
    def n(self):
        return len(self.vertex_darts)

    @property
    def e(self):
        return len(self.edge_darts)

    @property
    def n_darts(self):
        return len(self.alpha)

    def tail(self, d):
        return self.vertex_of[d]

    def head(self, d):
        return self.vertex_of[self.alpha[d]]

    def degree(self, v):
        return len(self.vertex_darts[v])

    def degrees(self):
        return [len(ds) for ds in self.vertex_darts]

    def faces(self):
        return [tuple(self.vertex_of[3 * f + s] for s in range(3)) for f in range(self.t)]

    def position(self, d):
        """Index of d in the rotation at its tail, counted from the smallest dart."""
        return self.vertex_darts[self.vertex_of[d]].index(d)

    def singular_vertices(self):
        return [v for v in range(self.n) if self.degree(v) < 6]

    def hexagonal_vertices(self):
        return [v for v in range(self.n) if self.degree(v) == 6]

    def relabel(self, perm):
        """Isomorphic copy under a face permutation and per-face side rotations.

        `perm` maps old dart -> new dart and must send faces to faces keeping
        the cyclic order of sides.
        """
        alpha = [0] * self.n_darts
        for d in range(self.n_darts):
            alpha[perm[d]] = perm[self.alpha[d]]
        return Triangulation(alpha, name=self.name)

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.alpha == other.alpha

    def __hash__(self):
        return hash(self.alpha)

    def __repr__(self):
        return "Triangulation(%sn=%d, e=%d, t=%d)" % (
            "%s, " % self.name if self.name else "", self.n, self.e, self.t)


def degree_type(T: Triangulation) -> DegreeType:
    partition = tuple(sorted((6 - d for d in T.degrees() if d < 6), reverse=True))
    assert sum(partition) == 12, "curvature must sum to 12"
    return DegreeType(partition, len(partition), T.n - len(partition))
