from trilat.surface.parser import parse_triangulation
from trilat.surface.triangulation import Triangulation

_ICOSAHEDRON = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 6, 2), (2, 7, 3), (3, 8, 4), (4, 9, 5), (5, 10, 1),
    (2, 6, 7), (3, 7, 8), (4, 8, 9), (5, 9, 10), (1, 10, 6),
    (11, 7, 6), (11, 8, 7), (11, 9, 8), (11, 10, 9), (11, 6, 10),
]

complex_registry = {
    "tetrahedron": {
        "faces": [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)],
        "degree_type": (3, 3, 3, 3),
        "t": 4,
    },
    "octahedron": {
        "faces": [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
                  (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4)],
        "degree_type": (2, 2, 2, 2, 2, 2),
        "t": 8,
    },
    "icosahedron": {
        "faces": _ICOSAHEDRON,
        "degree_type": (1,) * 12,
        "t": 20,
    },
    "T1": {
        "faces": [(0, 2, 2), (1, 2, 2)],
        "degree_type": (5, 5, 2),
        "t": 2,
    },
    "T2": {
        "faces": [(0, 1, 2), (0, 2, 1)],
        "degree_type": (4, 4, 4),
        "t": 2,
    },
}


def get_complex_registry():
    return complex_registry


def get_complex_params(name):
    registry = get_complex_registry()
    if name not in registry:
        raise KeyError("unknown complex %r, choose from %s" % (name, sorted(registry)))
    return registry[name]


def named_text(name) -> str:
    faces = get_complex_params(name)["faces"]
    return "tri v1\nfaces:\n" + "".join("%d %d %d\n" % f for f in faces)


def named_triangulation(name) -> Triangulation:
    return parse_triangulation(named_text(name), name=name)
