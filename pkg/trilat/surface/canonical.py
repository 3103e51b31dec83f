"""
Isomorphism-invariant codes for oriented maps.

A breadth-first search from a start dart over (sigma, alpha) labels every
dart; the code lists (label(sigma d), label(alpha d)) in label order. The
canonical code is the minimum over all start darts, and optionally also over
the mirror map (sigma replaced by its inverse).
"""
from trilat.surface.triangulation import Triangulation


def _inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def _bfs_order(sigma, alpha, start):
    label = [-1] * len(sigma)
    label[start] = 0
    order = [start]
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        for x in (sigma[d], alpha[d]):
            if label[x] < 0:
                label[x] = len(order)
                order.append(x)
    return label, order


def _code_from(sigma, alpha, start):
    label, order = _bfs_order(sigma, alpha, start)
    code = []
    for d in order:
        code.append(label[sigma[d]])
        code.append(label[alpha[d]])
    return tuple(code)


def _best_start(T: Triangulation, mirror: bool):
    """(code, start, mirrored) minimising the code."""
    sigmas = [(False, list(T.sigma))]
    if mirror:
        sigmas.append((True, _inverse(T.sigma)))
    best = None
    for mirrored, sigma in sigmas:
        for start in range(T.n_darts):
            code = _code_from(sigma, T.alpha, start)
            if best is None or code < best[0]:
                best = (code, start, mirrored)
    return best


def canonical_code(T: Triangulation, mirror: bool = False) -> bytes:
    code, _, _ = _best_start(T, mirror)
    return ("tri:%d:" % T.t).encode() + ",".join(map(str, code)).encode()


def canonical_form(T: Triangulation, mirror: bool = False) -> Triangulation:
    """The canonical representative of the isomorphism class of T.

    Faces are numbered in order of first appearance in the minimising search,
    each starting at the first of its darts reached.
    """
    _, start, mirrored = _best_start(T, mirror)
    sigma = _inverse(T.sigma) if mirrored else list(T.sigma)
    # face permutation of the (possibly mirrored) map: phi = sigma^-1 o alpha
    sigma_inv = _inverse(sigma)
    face_next = [sigma_inv[T.alpha[d]] for d in range(T.n_darts)]
    _, order = _bfs_order(sigma, T.alpha, start)
    new = [-1] * T.n_darts
    faces = 0
    for d in order:
        if new[d] >= 0:
            continue
        x = d
        for s in range(3):
            new[x] = 3 * faces + s
            x = face_next[x]
        faces += 1
    alpha = [0] * T.n_darts
    for d in range(T.n_darts):
        alpha[new[d]] = new[T.alpha[d]]
    return Triangulation(alpha, name=T.name)


def is_isomorphic(a: Triangulation, b: Triangulation, mirror: bool = False) -> bool:
    return a.t == b.t and canonical_code(a, mirror) == canonical_code(b, mirror)

