import json
from fractions import Fraction

import numpy as np
from absl import logging

from trilat.lattice.qomega import QOmega


def banner(title):
    logging.debug(title.center(60, "-"))


def jsonable(obj):
    """Plain JSON data: integers and rationals become decimal strings, Q(omega) values triples."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, QOmega):
        return obj.triple()
    if isinstance(obj, (int, np.integer, Fraction)):
        return str(obj)
    if isinstance(obj, bytes):
        return obj.decode()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(x) for x in obj]
    return obj


def canonical_json(obj) -> str:
    """Byte-stable serialisation: sorted keys, no whitespace variation."""
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
