"""
Isomorph-free generation of non-negatively curved sphere triangulations.

Faces are glued one side at a time: the smallest open side is matched either
with another open side of a placed face or with side 0 of a fresh face. A
partial gluing is abandoned once a vertex has more than six corners or the
partial surface has positive genus; both conditions only get worse as the
gluing grows. Complete gluings are deduplicated by canonical code.
"""
from typing import Dict, Iterator, List

from absl import logging
from tqdm import tqdm

from trilat.errors import ValidationError
from trilat.surface.canonical import canonical_code, canonical_form
from trilat.surface.triangulation import Triangulation, phi, phi_inv

MAX_DEGREE = 6


def _vertex_chains(alpha, n_darts):
    """Corner counts of the vertices of a partial gluing, and whether any exceeds 6.

    sigma(x) = alpha(phi^-1 x) is defined when phi^-1 x is glued. Open chains
    start at an unglued dart; what remains are closed orbits.
    """
    seen = [False] * n_darts
    sizes = []
    for d in range(n_darts):
        if alpha[d] is None and not seen[d]:
            size, x = 0, d
            while True:
                seen[x] = True
                size += 1
                y = alpha[phi_inv(x)]
                if y is None:
                    break
                x = y
            sizes.append(size)
    for d in range(n_darts):
        if not seen[d]:
            size, x = 0, d
            while not seen[x]:
                seen[x] = True
                size += 1
                x = alpha[phi_inv(x)]
            sizes.append(size)
    return sizes


def _boundary_cycles(alpha, n_darts):
    open_darts = [d for d in range(n_darts) if alpha[d] is None]
    nxt = {}
    for d in open_darts:
        x = phi(d)
        while alpha[x] is not None:
            x = phi(alpha[x])
        nxt[d] = x
    seen, cycles = set(), 0
    for d in open_darts:
        if d in seen:
            continue
        cycles += 1
        while d not in seen:
            seen.add(d)
            d = nxt[d]
    return cycles


def partial_genus(alpha, faces):
    """Genus of the partial surface built from the first `faces` faces."""
    n_darts = 3 * faces
    sub = alpha[:n_darts]
    V = len(_vertex_chains(sub, n_darts))
    glued = sum(1 for a in sub if a is not None)
    E = glued // 2 + (n_darts - glued)
    b = _boundary_cycles(sub, n_darts)
    chi = V - E + faces
    return (2 - chi - b) // 2


def _viable(alpha, faces):
    sub = alpha[:3 * faces]
    if max(_vertex_chains(sub, 3 * faces)) > MAX_DEGREE:
        return False
    return partial_genus(alpha, faces) == 0


def _search(t, alpha, faces) -> Iterator[List[int]]:
    d = next((x for x in range(3 * faces) if alpha[x] is None), None)
    if d is None:
        if faces == t:
            yield list(alpha)
        return
    candidates = [e for e in range(d + 1, 3 * faces) if alpha[e] is None]
    if faces < t:
        candidates.append(3 * faces)
    for e in candidates:
        grown = faces + 1 if e == 3 * faces else faces
        alpha[d], alpha[e] = e, d
        if _viable(alpha, grown):
            yield from _search(t, alpha, grown)
        alpha[d] = alpha[e] = None


def _classes(gluings, mirror) -> Dict[bytes, Triangulation]:
    found = {}
    for alpha in gluings:
        try:
            T = Triangulation(alpha)
        except ValidationError:
            continue
        code = canonical_code(T, mirror)
        if code not in found:
            found[code] = canonical_form(T, mirror)
    return found


def enumerate_t(t: int, mirror: bool = False) -> List[Triangulation]:
    """Canonical representatives of all classes with exactly t faces, sorted by code."""
    if t < 2 or t % 2:
        return []
    alpha = [None] * (3 * t)
    found = _classes(_search(t, alpha, 1), mirror)
    logging.info("t=%d: %d classes" % (t, len(found)))
    return [found[c] for c in sorted(found)]


def enumerate_triangulations(t_max: int, mirror: bool = False, progress=False) -> Iterator[Triangulation]:
    """Yield one representative per class for every even t <= t_max.

    Raises:
      ValueError: t_max < 2.
    """
    if t_max < 2:
        raise ValueError("t_max must be at least 2, got %r" % t_max)
    sizes = list(range(2, t_max + 1, 2))
    for t in tqdm(sizes, disable=not progress, desc="enumerate"):
        yield from enumerate_t(t, mirror)


def _rooted_gluings(t: int) -> Iterator[List[int]]:
    """Every connected gluing of t faces, each rooted map once, with no pruning.

    Faces are numbered in the order they are reached; a fresh face always
    enters through its side 0.
    """
    alpha = [None] * (3 * t)
    stack = [(alpha, 1)]
    while stack:
        alpha, faces = stack.pop()
        open_sides = [x for x in range(3 * faces) if alpha[x] is None]
        if not open_sides:
            if faces == t:
                yield alpha
            continue
        d = open_sides[0]
        partners = open_sides[1:] + ([3 * faces] if faces < t else [])
        for e in partners:
            grown = list(alpha)
            grown[d], grown[e] = e, d
            stack.append((grown, faces + 1 if e == 3 * faces else faces))


def brute_force(t: int, mirror: bool = False) -> Dict[bytes, Triangulation]:
    """All classes with t faces, from every rooted gluing left to validation; an oracle for small t."""
    return _classes(_rooted_gluings(t), mirror)
