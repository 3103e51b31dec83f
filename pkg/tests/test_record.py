import json
import random
from fractions import Fraction

import pytest

from trilat.errors import InvariantBreach
from trilat.framework.record import (COMPARED_FIELDS, compare, invariant_record, pipeline_report, run_pipeline,
                                     separation_audit, subdivision_law)
from trilat.surface.canonical import canonical_code
from trilat.surface.subdivide import subdivide


def _shuffle(T):
    perm = [0] * T.n_darts
    for f in range(T.t):
        for s in range(3):
            perm[3 * f + s] = 3 * (T.t - 1 - f) + (s + 1) % 3
    return T.relabel(perm)


@pytest.fixture(scope="module")
def t2_record(named):
    return invariant_record(named("T2"))


def test_t2_record(t2_record):
    r = t2_record
    assert (r.t, r.n, r.l, r.k) == (2, 3, 3, 1)
    assert r.degree_type == (4, 4, 4)
    assert r.disc_lbar == (2,)
    assert r.root_type_R == "E6^3"
    assert r.length_spectrum == (1, 1, 1)
    assert r.delta_norm == Fraction(3)
    assert r.h_decomposition == (1, 2)
    assert r.flags == ()
    assert len(r.herm_P) == 9
    assert r.delta_herm == [[3]]
    assert r.as_dict()["delta_herm"] == [[["3", "0", "1"]]]


def test_record_json_is_canonical(t2_record):
    text = t2_record.to_json()
    assert json.loads(text) == t2_record.as_dict()
    assert text == json.dumps(json.loads(text), sort_keys=True, separators=(",", ":"))
    assert set(t2_record.compared()) == set(COMPARED_FIELDS)


def test_record_is_label_invariant(named):
    T = named("octahedron")
    assert invariant_record(_shuffle(T)).as_dict() == invariant_record(T).as_dict()


def test_compare_isomorphic(named):
    T = named("octahedron")
    assert compare(T, _shuffle(T)).verdict == "isomorphic"


def test_compare_by_size(named):
    T = named("T2")
    v = compare(T, subdivide(T, 2))
    assert v.verdict == "distinguished" and v.fields == ["t"]


def test_compare_t1_t2(named):
    v = compare(named("T1"), named("T2"))
    assert v.verdict == "distinguished"
    assert "fingerprint_P" in v.fields and "degree_type" in v.fields and "root_type_R" in v.fields
    assert "t" not in v.fields


def test_separation_audit(named):
    records = {canonical_code(named(n)): invariant_record(named(n)) for n in ("T1", "T2")}
    audit = separation_audit(records)
    assert audit["classes"] == 2 and audit["distinct_records"] == 2
    assert audit["indistinguishable-by-fingerprint"] == []


def test_pipeline_report(named):
    p = run_pipeline(named("T2"), deep=True)
    report = pipeline_report(p)
    assert report["k"] == 1 and report["eigen_rank"] == 1
    assert report["rank_Q"] == 0 and report["scale_ratio"] is None
    assert report["glue"]["found"] and report["glue"]["order"] == 3
    assert report["thurston"]["delta"]["norm_scaled"] == ["3", "0", "1"]


def test_subdivision_law(named):
    law = subdivision_law(named("T2"), 2)
    assert law == {"k": 2, "t": 2, "t_sub": 8, "k_T": 1, "k_sub": 2, "lengths_sub": [2, 2, 2]}


def _random_relabel(T, rng):
    """Faces in a random order, each turned by a random rotation of its sides."""
    order = list(range(T.t))
    rng.shuffle(order)
    turns = [rng.randrange(3) for _ in range(T.t)]
    perm = [0] * T.n_darts
    for f in range(T.t):
        for s in range(3):
            perm[3 * f + s] = 3 * order[f] + (s + turns[f]) % 3
    return T.relabel(perm)


@pytest.mark.parametrize("name", ["T2", "tetrahedron"])
@pytest.mark.parametrize("seed", range(4))
def test_record_survives_random_relabelling(name, seed, named):
    T = named(name)
    U = _random_relabel(T, random.Random(seed))
    assert canonical_code(U) == canonical_code(T)
    assert invariant_record(U).as_dict() == invariant_record(T).as_dict()


@pytest.mark.parametrize("name, k", [
    ("tetrahedron", 2),
    pytest.param("tetrahedron", 3, marks=pytest.mark.slow),
    pytest.param("octahedron", 2, marks=pytest.mark.slow),
    pytest.param("octahedron", 3, marks=pytest.mark.slow),
    pytest.param("icosahedron", 2, marks=pytest.mark.slow),
    pytest.param("icosahedron", 3, marks=pytest.mark.slow),
])
def test_subdivision_law_on_the_platonic_solids(name, k, named):
    T = named(name)
    law = subdivision_law(T, k)
    assert law["t_sub"] == k * k * T.t
    assert law["k_sub"] == k * law["k_T"]
    assert law["t_sub"] % (2 * law["k_sub"] ** 2) == 0
    assert min(law["lengths_sub"]) >= k


def test_corrupt_lift_breaches(named):
    with pytest.raises(InvariantBreach) as info:
        run_pipeline(named("T2"), corrupt_lift=True)
    assert info.value.record["stage"] == "thurston"
    assert info.value.exit_code == 3


@pytest.mark.slow
def test_records_of_named_complexes(named):
    for name in ("tetrahedron", "octahedron", "icosahedron", "T1"):
        r = invariant_record(named(name))
        assert r.t == named(name).t
        assert r.delta_norm == Fraction(3 * r.t, 2)
