"""
k-fold subdivision: every side is cut into k equal intervals and every
triangle into k^2 triangles.
"""
from absl import logging

from trilat.surface.triangulation import Triangulation


def _small_triangles(k):
    """Corners of the k^2 sub-triangles in barycentric weights, counterclockwise."""
    tris = []
    for a in range(k):
        for b in range(k - a):
            c = k - 1 - a - b
            tris.append(((a + 1, b, c), (a, b + 1, c), (a, b, c + 1)))
    for a in range(k - 1):
        for b in range(k - 1 - a):
            c = k - 2 - a - b
            tris.append(((a, b + 1, c + 1), (a + 1, b, c + 1), (a + 1, b + 1, c)))
    return tris


def subdivide(T: Triangulation, k: int) -> Triangulation:
    """Triangulation with k^2 t faces; the new vertices all have degree 6.

    Raises:
      ValueError: k < 1.
    """
    if k < 1:
        raise ValueError("subdivision factor must be positive, got %r" % k)
    tris = _small_triangles(k)
    per_face = len(tris)
    assert per_face == k * k
    n_darts = 3 * per_face * T.t
    alpha = [None] * n_darts
    boundary = {}
    for f in range(T.t):
        inner = {}
        for i, corners in enumerate(tris):
            for s in range(3):
                dart = 3 * (f * per_face + i) + s
                p, q = corners[s], corners[(s + 1) % 3]
                side = next((j for j in range(3) if p[(j + 2) % 3] == 0 and q[(j + 2) % 3] == 0), None)
                if side is not None:
                    boundary[(3 * f + side, k - p[side])] = dart
                else:
                    inner[(p, q)] = dart
        for (p, q), dart in inner.items():
            alpha[dart] = inner[(q, p)]
    for (big, m), dart in boundary.items():
        alpha[dart] = boundary[(T.alpha[big], k - 1 - m)]
    out = Triangulation(alpha, name="%s/%d" % (T.name, k) if T.name else None)
    logging.debug("subdivided t=%d by %d into t=%d" % (T.t, k, out.t))
    return out
