"""
The full invariant pipeline on the canonical form of a triangulation, and
the record it produces.

Only basis-free fields take part in comparisons; the hermitian Gram of P^E
and the coordinates of delta^E depend on the bases chosen along the way and
are carried for inspection.
"""
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional

from absl import logging
from deepdiff import DeepDiff

from trilat.errors import ensure
from trilat.framework import geodesics as geo
from trilat.framework import rho as rh
from trilat.framework import thurston as th
from trilat.framework.typeiii import build_tower, hex_relations, primitivity_index, tower_summary
from trilat.framework.utils import banner, canonical_json, jsonable
from trilat.surface.canonical import canonical_code, canonical_form, is_isomorphic
from trilat.surface.subdivide import subdivide
from trilat.surface.triangulation import Triangulation, degree_type

STAGE = "record"

COMPARED_FIELDS = ("t", "n", "l", "k", "degree_type", "disc_lbar", "root_type_R", "fingerprint_P",
                   "length_spectrum", "delta_norm")


class Pipeline(NamedTuple):
    T: Triangulation
    tower: object
    hex_relations: object
    k: int
    geodesics: list
    closed_gram: object
    descent: object
    extension: object
    delta: object
    lift_table: object
    herm_gram: object
    homology: object
    solution: object
    scaled: dict
    glue: Optional[object]


def run_pipeline(T: Triangulation, mirror=False, deep=False, corrupt_lift=False) -> Pipeline:
    """Every stage on the canonical form of T.

    Raises:
      InvariantBreach: the first structural identity that fails.
    """
    T = canonical_form(T, mirror)
    banner("tower t=%d" % T.t)
    tower = build_tower(T)
    hexrel = hex_relations(tower)
    k = primitivity_index(tower)
    banner("geodesics")
    geods = geo.trace(T)
    closed = geo.check(tower, geods)
    banner("rho")
    tm = rh.build_rho(T)
    descent = rh.descend_to_Q(T, tm, tower)
    extension = rh.extend_to_P(descent, tower)
    delta = rh.build_delta(T.t)
    banner("eigencycles")
    lt = th.phase_section(T, geods, corrupt_edge=0 if corrupt_lift else None)
    G = th.herm_gram_lifts(T, lt)
    th.consistency(T, lt, geods, G)
    hom = th.eigen_homology(T, geods, G)
    th.compare_real(T, G, closed)
    scaled = th.scaled_gram_report(T, geods, G)
    solution = th.solve_delta(T, geods, hom, k)
    th.rank_identity(hom, tower)
    glue = rh.glue_check(extension.lattice, delta) if deep else None
    return Pipeline(T, tower, hexrel, k, geods, closed, descent, extension, delta, lt, G, hom, solution,
                    scaled, glue)


class InvariantRecord(NamedTuple):
    t: int
    n: int
    l: int
    k: int
    degree_type: tuple
    disc_lbar: tuple
    root_type_R: str
    fingerprint_P: tuple
    length_spectrum: tuple
    delta_norm: Fraction        # M^E scale
    herm_P: list
    delta_gram: list
    delta_herm: list            # Delta^E over Z[omega]
    h_decomposition: tuple
    delta_E: list
    flags: tuple

    def as_dict(self) -> dict:
        return jsonable(self._asdict())

    def compared(self) -> dict:
        return {k: v for k, v in self.as_dict().items() if k in COMPARED_FIELDS}

    def to_json(self) -> str:
        return canonical_json(self._asdict())


def record_from(p: Pipeline, norm_bound=2) -> InvariantRecord:
    T, tower = p.T, p.tower
    flags = []
    if p.k > 1:
        flags.append("k>1: 2-divisibility of h - delta checked on the abstract Gram only")
    if not p.solution.integral:
        flags.append("delta^E not integral")
    if not p.scaled["integral"]:
        flags.append("3/2 geodesic Gram not integral")
    return InvariantRecord(
        t=T.t,
        n=T.n,
        l=len(T.singular_vertices()),
        k=p.k,
        degree_type=degree_type(T).partition,
        disc_lbar=tuple(tower.Lbar.disc_group()),
        root_type_R=tower.root_type_string(),
        fingerprint_P=rh.fingerprint_p(tower, norm_bound),
        length_spectrum=tuple(geo.length_spectrum(p.geodesics)),
        delta_norm=(p.solution.norm * th.SCALE).real(),
        herm_P=[list(row) for row in p.extension.herm.gram],
        delta_gram=[list(row) for row in p.delta.lattice.gram],
        delta_herm=[list(row) for row in p.delta.herm.gram],
        h_decomposition=tuple(p.delta.h),
        delta_E=list(p.solution.coords),
        flags=tuple(flags),
    )


def invariant_record(T: Triangulation, mirror=False, norm_bound=2) -> InvariantRecord:
    return record_from(run_pipeline(T, mirror), norm_bound)


class Verdict(NamedTuple):
    verdict: str  # isomorphic | distinguished | indistinguishable-by-fingerprint
    fields: List[str]


def compare(a: Triangulation, b: Triangulation, mirror=False, norm_bound=2) -> Verdict:
    if a.t != b.t:
        return Verdict("distinguished", ["t"])
    if is_isomorphic(a, b, mirror):
        return Verdict("isomorphic", [])
    ra, rb = invariant_record(a, mirror, norm_bound), invariant_record(b, mirror, norm_bound)
    diff = DeepDiff(ra.compared(), rb.compared())
    if not diff:
        return Verdict("indistinguishable-by-fingerprint", [])
    fields = sorted({path.split("]")[0].split("['")[-1].rstrip("'") for change in diff.values()
                     for path in change})
    logging.info("distinguished by %s" % ", ".join(fields))
    return Verdict("distinguished", fields)


def separation_audit(records: Dict[bytes, InvariantRecord]) -> dict:
    """Classes whose compared fields collide; keys are canonical codes of distinct classes."""
    groups = defaultdict(list)
    for code in sorted(records):
        groups[canonical_json(records[code].compared())].append(code.decode())
    collisions = [codes for codes in groups.values() if len(codes) > 1]
    return {
        "classes": len(records),
        "distinct_records": len(groups),
        "indistinguishable-by-fingerprint": sorted(collisions),
    }


def subdivision_law(T: Triangulation, k: int) -> dict:
    """t' = k^2 t, k' = k k_T, lengths times k and 2k'^2 | t'."""
    base = build_tower(T)
    k_T = primitivity_index(base)
    S = subdivide(T, k)
    sub = build_tower(S)
    k_S = primitivity_index(sub)
    lengths_T = geo.length_spectrum(geo.trace(T))
    lengths_S = geo.length_spectrum(geo.trace(S))
    ensure(S.t == k * k * T.t, STAGE, "t' = k^2 t", t=T.t, t_sub=S.t, k=k)
    ensure(k_S == k * k_T, STAGE, "k' = k k_T", k_T=k_T, k_sub=k_S, k=k)
    ensure(lengths_S == [k * x for x in lengths_T], STAGE, "lengths scale by k")
    ensure(S.t % (2 * k_S * k_S) == 0, STAGE, "2k'^2 divides t'", t_sub=S.t, k_sub=k_S)
    return {"k": k, "t": T.t, "t_sub": S.t, "k_T": k_T, "k_sub": k_S, "lengths_sub": lengths_S}


def pipeline_report(p: Pipeline) -> dict:
    """Summary of every stage for the deep verification output."""
    out = tower_summary(p.tower)
    out["hex_index"] = p.hex_relations.index
    out["geodesics"] = geo.geodesic_dump(p.T, p.geodesics, p.closed_gram)
    out["scale_ratio"] = p.descent.ratio
    out["rho_choices"] = p.extension.choices
    out["eigen_rank"] = p.homology.rank
    out["thurston"] = th.thurston_dump(p.lift_table, p.herm_gram, p.solution)
    if p.glue is not None:
        out["glue"] = {"found": p.glue.found, "order": p.glue.glue_order,
                       "fingerprint": p.glue.fingerprint}
    out["code"] = canonical_code(p.T)
    return out
