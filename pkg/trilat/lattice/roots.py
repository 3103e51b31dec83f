"""
Short vectors, ADE recognition and isometry fingerprints of definite lattices.
"""
from collections import Counter
from fractions import Fraction
from math import isqrt
from typing import List, NamedTuple, Tuple

import numpy as np
import sympy

from trilat.lattice import rational
from trilat.lattice.zlattice import IntLattice, identity, intmat, zeros


class RootComponent(NamedTuple):
    letter: str
    rank: int
    simple_roots: np.ndarray  # rows, standard (Bourbaki) order


def cartan_gram(letter, n) -> np.ndarray:
    """Negative definite Gram of a simply laced root lattice in Bourbaki labelling."""
    edges = []
    if letter == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif letter == "D":
        assert n >= 4
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif letter == "E":
        assert n in (6, 7, 8)
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    else:
        raise ValueError("unknown root system %s%d" % (letter, n))
    G = zeros(n, n)
    for i in range(n):
        G[i, i] = -2
    for a, b in edges:
        G[a, b] = G[b, a] = 1
    return G


def hyperbolic_plane() -> np.ndarray:
    return intmat([[0, 1], [1, 0]])


def direct_sum(*grams) -> np.ndarray:
    n = sum(np.shape(g)[0] for g in grams)
    G = zeros(n, n)
    o = 0
    for g in grams:
        k = np.shape(g)[0]
        G[o:o + k, o:o + k] = intmat(g, ncols=k)
        o += k
    return G


def pair_reduce(Q) -> np.ndarray:
    """Unimodular U making U @ Q @ U.T pairwise reduced (Q positive definite)."""
    Q = intmat(Q, ncols=len(Q))
    n = Q.shape[0]
    U = identity(n)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j or Q[j, j] == 0:
                    continue
                if 2 * abs(Q[i, j]) > Q[j, j]:
                    q = int(round(Fraction(Q[i, j], Q[j, j])))
                    # b_i -> b_i - q b_j
                    U[i] -= q * U[j]
                    Q[i] -= q * Q[j]
                    Q[:, i] -= q * Q[:, j]
                    changed = True
    order = sorted(range(n), key=lambda i: Q[i, i])
    return U[order]


def short_vectors(L: IntLattice, bound: int) -> List[Tuple[int, ...]]:
    """All nonzero vectors of norm >= -bound in a negative definite lattice.

    Fincke-Pohst enumeration over the exact LDL decomposition of -gram,
    after pairwise size reduction of the basis.

    Raises:
      ValueError: the lattice is not negative definite.
    """
    if L.rank == 0:
        return []
    if not L.is_negative_definite():
        raise ValueError("short_vectors needs a negative definite lattice")
    U = pair_reduce(-L.gram)
    # -gram = low @ diag @ low.T, so x -> sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
    low, diag = sympy.Matrix((U @ (-L.gram) @ U.T).tolist()).LDLdecomposition()
    n = L.rank
    d = [rational.from_sympy(diag[i, i]) for i in range(n)]
    mu = [[rational.from_sympy(low[j, i]) if j > i else Fraction(0) for j in range(n)] for i in range(n)]

    found = []
    x = [0] * n

    def search(i, budget):
        if i < 0:
            if any(x):
                found.append(tuple(x))
            return
        c = -sum(mu[i][j] * x[j] for j in range(i + 1, n))
        r = budget / d[i]
        s = isqrt(int(r)) + 1
        lo, hi = int(c) - s - 1, int(c) + s + 1
        for v in range(lo, hi + 1):
            t = d[i] * (v - c) ** 2
            if t <= budget:
                x[i] = v
                search(i - 1, budget - t)
        x[i] = 0

    search(n - 1, Fraction(bound))
    vecs = [tuple(int(a) for a in intmat([v])[0] @ U) for v in found]
    return sorted(vecs)


def norm_histogram(L: IntLattice, bound: int):
    return dict(sorted(Counter(int(L.pair(v, v)) for v in short_vectors(L, bound)).items()))


def roots(L: IntLattice) -> List[Tuple[int, ...]]:
    return [v for v in short_vectors(L, 2) if L.pair(v, v) == -2]


def simple_roots(L: IntLattice, root_list=None) -> np.ndarray:
    """Simple roots for the positive system 'first nonzero coordinate > 0'."""
    rs = roots(L) if root_list is None else root_list
    positive = [r for r in rs if next(a for a in r if a != 0) > 0]
    pos_set = set(positive)
    composite = set()
    for a in range(len(positive)):
        for b in range(a + 1, len(positive)):
            s = tuple(x + y for x, y in zip(positive[a], positive[b]))
            if s in pos_set:
                composite.add(s)
    simple = [r for r in positive if r not in composite]
    return intmat(simple, ncols=L.rank)


def _arm(adj, start, prev):
    arm = [start]
    while True:
        nxt = [v for v in adj[arm[-1]] if v != prev]
        if not nxt:
            return arm
        prev = arm[-1]
        arm.append(nxt[0])


def _label_component(nodes, adj):
    """(letter, ordered nodes) for a connected simply laced Dynkin diagram."""
    n = len(nodes)
    branch = [v for v in nodes if len(adj[v]) >= 3]
    if not branch:
        ends = sorted(v for v in nodes if len(adj[v]) <= 1)
        if n == 1:
            return "A", list(nodes)
        return "A", _arm(adj, ends[0], None)
    if len(branch) > 1 or len(adj[branch[0]]) != 3:
        raise ValueError("not a finite simply laced Dynkin diagram")
    b = branch[0]
    arms = sorted((_arm(adj, v, b) for v in adj[b]), key=lambda a: (len(a), a[0]))
    lengths = tuple(len(a) for a in arms)
    if lengths[0] == 1 and lengths[1] == 1:
        return "D", list(reversed(arms[2])) + [b, arms[0][0], arms[1][0]]
    if lengths[:2] == (1, 2) and lengths[2] in (2, 3, 4):
        short, mid, long_ = arms
        return "E", [mid[1], short[0], mid[0], b] + long_
    raise ValueError("not a finite simply laced Dynkin diagram: arms %s" % (lengths,))


def decompose_roots(L: IntLattice) -> List[RootComponent]:
    """Root sublattice as an ordered list of irreducible components."""
    simple = simple_roots(L)
    k = simple.shape[0]
    if k == 0:
        return []
    G = simple @ L.gram @ simple.T
    adj = {i: [j for j in range(k) if j != i and G[i, j] != 0] for i in range(k)}
    seen, comps = set(), []
    for i in range(k):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        letter, order = _label_component(sorted(comp), adj)
        comps.append(RootComponent(letter, len(order), simple[order]))
    comps.sort(key=lambda c: ("EDA".index(c.letter), -c.rank, tuple(c.simple_roots[0])))
    return comps


def root_type(L: IntLattice) -> List[Tuple[str, int]]:
    """ADE multiset of the root sublattice, largest components first."""
    return [(c.letter, c.rank) for c in decompose_roots(L)]


def format_root_type(rt) -> str:
    if not rt:
        return "0"
    counts = Counter("%s%d" % x for x in rt)
    seen, parts = set(), []
    for letter, n in rt:
        name = "%s%d" % (letter, n)
        if name in seen:
            continue
        seen.add(name)
        parts.append(name if counts[name] == 1 else "%s^%d" % (name, counts[name]))
    return "+".join(parts)


def diagram_automorphisms(letter, n) -> List[List[int]]:
    """Permutations p of Bourbaki positions; node i goes to p[i]."""
    ident = list(range(n))
    if letter == "A":
        return [ident] if n == 1 else [ident, ident[::-1]]
    if letter == "D" and n == 4:
        perms = []
        for a, b, c in [(0, 2, 3), (0, 3, 2), (2, 0, 3), (2, 3, 0), (3, 0, 2), (3, 2, 0)]:
            p = [0] * 4
            p[0], p[1], p[2], p[3] = a, 1, b, c
            perms.append(p)
        return perms
    if letter == "D":
        swap = ident[:]
        swap[n - 2], swap[n - 1] = n - 1, n - 2
        return [ident, swap]
    if letter == "E" and n == 6:
        return [ident, [5, 1, 4, 3, 2, 0]]
    return [ident]


def fingerprint(L: IntLattice, bound: int = 2) -> tuple:
    """Sound (not complete) isometry invariant.

    (rank, signature, discriminant group, evenness) and, for definite
    lattices, the norm histogram up to `bound` and the root type.
    """
    sig = L.signature()
    parts = [("rank", L.rank), ("signature", sig), ("even", L.is_even())]
    if L.is_nondegenerate():
        parts.append(("disc_group", tuple(L.disc_group())))
    if L.rank and sig in ((0, L.rank), (L.rank, 0)):
        M = L if sig[1] else IntLattice(-L.gram)
        parts.append(("norms", tuple(norm_histogram(M, bound).items())))
        parts.append(("root_type", format_root_type(root_type(M))))
    return tuple(parts)
