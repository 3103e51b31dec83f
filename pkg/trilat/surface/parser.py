"""
Reader and writer for the `tri v1` text format.

    tri v1
    faces:
    0 1 2          # counterclockwise corners
    ...
    rotation:      # optional
    0: 0 5 7       # darts around vertex 0, counterclockwise

Dart 3f+s of face line f runs from its s-th to its (s+1)-th corner.
"""
from collections import defaultdict

from absl import logging

from trilat.errors import InputError, ParseError, TopologyError
from trilat.surface.triangulation import Triangulation, phi

HEADER = "tri v1"


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(tokens, lineno):
    try:
        vals = [int(x) for x in tokens]
    except ValueError:
        raise ParseError("line %d: expected integers, got %r" % (lineno, " ".join(tokens)), line=lineno)
    if any(v < 0 for v in vals):
        raise ParseError("line %d: ids must be non-negative" % lineno, line=lineno)
    return vals


def infer_alpha(faces):
    """Edge involution from a face list, or raise when the gluing is ambiguous.

    A dart u->v pairs with the unique dart v->u; a loop pairs with the other
    loop dart at its vertex.
    """
    tails = [f[s] for f in faces for s in range(3)]
    heads = [f[(s + 1) % 3] for f in faces for s in range(3)]
    by_key = defaultdict(list)
    for d, (u, v) in enumerate(zip(tails, heads)):
        by_key[(u, v)].append(d)
    alpha = [None] * len(tails)
    for d, (u, v) in enumerate(zip(tails, heads)):
        if alpha[d] is not None:
            continue
        if u == v:
            loops = by_key[(u, u)]
            if len(loops) != 2:
                raise ParseError("ambiguous gluing of %d loop sides at vertex %d; add a rotation: section"
                                 % (len(loops), u), vertex=u)
            a, b = loops
            alpha[a], alpha[b] = b, a
            continue
        fwd, back = by_key[(u, v)], by_key[(v, u)]
        if not back:
            raise TopologyError("side %d->%d of face %d has no partner" % (u, v, d // 3),
                                vertex=u, face=d // 3)
        if len(fwd) != 1 or len(back) != 1:
            raise ParseError("ambiguous gluing along %d-%d; add a rotation: section" % (u, v), vertex=u)
        alpha[d], alpha[back[0]] = back[0], d
    return alpha


def _alpha_from_rotation(faces, rotation, labels):
    n_darts = 3 * len(faces)
    sigma = [None] * n_darts
    for v, (lineno, darts) in rotation.items():
        for d in darts:
            if d >= n_darts:
                raise ParseError("line %d: dart %d does not exist" % (lineno, d), line=lineno)
            if labels[d] != v:
                raise ParseError("line %d: dart %d does not start at vertex %d" % (lineno, d, v),
                                 line=lineno, vertex=v)
            if sigma[d] is not None:
                raise ParseError("line %d: dart %d listed twice" % (lineno, d), line=lineno)
        for i, d in enumerate(darts):
            sigma[d] = darts[(i + 1) % len(darts)]
    missing = [d for d in range(n_darts) if sigma[d] is None]
    if missing:
        raise TopologyError("rotation section misses dart %d" % missing[0],
                            vertex=labels[missing[0]], face=missing[0] // 3)
    # alpha = sigma o phi
    return [sigma[phi(d)] for d in range(n_darts)]


def parse_triangulation(text, name=None) -> Triangulation:
    """Parse and validate a triangulation.

    Raises:
      ParseError: malformed line or ambiguous gluing.
      TopologyError: the gluing is not a sphere.
      CurvatureError: a vertex of degree > 6.
    """
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != HEADER:
        raise ParseError("first line must be %r" % HEADER, line=lines[0][0] if lines else 1)
    faces, rotation = [], {}
    section = None
    for lineno, line in lines[1:]:
        if line in ("faces:", "rotation:"):
            section = line[:-1]
            continue
        if section == "faces":
            vals = _ints(line.split(), lineno)
            if len(vals) != 3:
                raise ParseError("line %d: face must have 3 corners, got %d" % (lineno, len(vals)),
                                 line=lineno, face=len(faces))
            faces.append(tuple(vals))
        elif section == "rotation":
            head, _, rest = line.partition(":")
            if not _:
                raise ParseError("line %d: expected 'v: d0 d1 ...'" % lineno, line=lineno)
            v = _ints([head], lineno)[0]
            if v in rotation:
                raise ParseError("line %d: vertex %d listed twice" % (lineno, v), line=lineno, vertex=v)
            rotation[v] = (lineno, _ints(rest.split(), lineno))
        else:
            raise ParseError("line %d: data before a section header" % lineno, line=lineno)
    if not faces:
        raise ParseError("no faces", line=lines[-1][0])
    labels = [f[s] for f in faces for s in range(3)]
    if rotation:
        alpha = _alpha_from_rotation(faces, rotation, labels)
    else:
        alpha = infer_alpha(faces)
    T = Triangulation(alpha, labels=labels, name=name)
    logging.debug("parsed %r" % T)
    return T


def load_triangulation(path) -> Triangulation:
    """Read a .tri file.

    Raises:
      InputError: the file cannot be read.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError("cannot read %s: %s" % (path, exc), path=str(path))
    return parse_triangulation(text, name=str(path))


def format_triangulation(T: Triangulation) -> str:
    """Text form; a rotation section is written when the face list alone is ambiguous."""
    faces = T.faces()
    out = [HEADER, "faces:"]
    out.extend("%d %d %d" % f for f in faces)
    try:
        explicit = infer_alpha(faces) != list(T.alpha)
    except (ParseError, TopologyError):
        explicit = True
    if explicit:
        out.append("rotation:")
        for v, darts in enumerate(T.vertex_darts):
            out.append("%d: %s" % (v, " ".join(str(d) for d in darts)))
    return "\n".join(out) + "\n"
