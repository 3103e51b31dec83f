"""
Command-line entry point: `python -m trilat.run_trilat <command> ...`.

Exit codes: 0 success, 1 input/output, 2 validation, 3 invariant breach (the
breach record goes to stderr as canonical JSON).
"""
import sys
from collections import Counter

from absl import logging

from trilat.config import get_config, make_run_config
from trilat.errors import InvariantBreach, TrilatError, ensure
from trilat.framework.record import (compare, invariant_record, pipeline_report, record_from, run_pipeline,
                                     separation_audit, subdivision_law)
from trilat.framework.utils import canonical_json, jsonable
from trilat.framework.workers import run_tasks
from trilat.surface.canonical import canonical_code
from trilat.surface.degree_types import census
from trilat.surface.enumeration import enumerate_triangulations
from trilat.surface.parser import format_triangulation, load_triangulation
from trilat.surface.subdivide import subdivide
from trilat.surface.triangulation import Triangulation, degree_type


def emit(report, cfg, out=None):
    out = sys.stdout if out is None else out
    if cfg.output_format == "json":
        out.write(canonical_json(report) + "\n")
        return
    data = jsonable(report)
    for key in sorted(data):
        out.write("%s: %s\n" % (key, canonical_json(data[key]) if isinstance(data[key], (dict, list)) else data[key]))


def cmd_validate(cfg):
    T = load_triangulation(cfg.paths[0])
    dt = degree_type(T)
    return {"valid": True, "t": T.t, "n": T.n, "degree_type": dt.partition, "hexagonal": dt.hex_count,
            "code": canonical_code(T, cfg.mirror)}


def cmd_invariants(cfg):
    T = load_triangulation(cfg.paths[0])
    return invariant_record(T, cfg.mirror, cfg.norm_bound).as_dict()


def cmd_compare(cfg):
    a, b = (load_triangulation(p) for p in cfg.paths)
    verdict = compare(a, b, cfg.mirror, cfg.norm_bound)
    return {"verdict": verdict.verdict, "fields": verdict.fields}


def cmd_enumerate(cfg):
    found = list(enumerate_triangulations(cfg.t_max, cfg.mirror, progress=True))
    by_t = Counter(T.t for T in found)
    types = census(found)
    return {
        "t_max": cfg.t_max,
        "classes": {t: by_t[t] for t in sorted(by_t)},
        "codes": [canonical_code(T, cfg.mirror) for T in found],
        "degree_types": {" ".join(map(str, p)): c for p, c in sorted(types.items())},
    }


def _verify_one(task):
    alpha, mirror, norm_bound = task
    p = run_pipeline(Triangulation(alpha), mirror, deep=True)
    law = subdivision_law(p.T, 2)
    return canonical_code(p.T, mirror), record_from(p, norm_bound), p.descent.ratio, law["k_sub"]


def cmd_verify(cfg):
    if cfg.paths:
        T = load_triangulation(cfg.paths[0])
        p = run_pipeline(T, cfg.mirror, deep=cfg.deep, corrupt_lift=cfg.corrupt_lift)
        report = {"record": record_from(p, cfg.norm_bound).as_dict(), "passed": True}
        if cfg.deep:
            report["stages"] = pipeline_report(p)
            report["subdivision"] = subdivision_law(T, 2)
        return report
    corpus = list(enumerate_triangulations(cfg.t_max, cfg.mirror))
    tasks = [(T.alpha, cfg.mirror, cfg.norm_bound) for T in corpus]
    results = run_tasks(_verify_one, tasks, cfg.workers, progress=True)
    results.sort(key=lambda r: r[0])
    ratios = sorted({r for _, _, r, _ in results if r is not None})
    ensure(len(ratios) <= 1, "rho", "scale ratio constant across the corpus", ratios=[str(r) for r in ratios])
    records = {code: record for code, record, _, _ in results}
    return {
        "t_max": cfg.t_max,
        "classes": len(results),
        "by_t": dict(sorted(Counter(record.t for record in records.values()).items())),
        "scale_ratio": ratios[0] if ratios else None,
        "glued": len(results),
        "subdivision_k_sub": dict(sorted(Counter(k for _, _, _, k in results).items())),
        "audit": separation_audit(records),
        "census": {" ".join(map(str, p)): c for p, c in sorted(census(corpus).items())},
        "passed": True,
    }


def cmd_subdivide(cfg):
    T = load_triangulation(cfg.paths[0])
    return format_triangulation(subdivide(T, cfg.k))


COMMANDS = {
    "validate": cmd_validate,
    "invariants": cmd_invariants,
    "compare": cmd_compare,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "subdivide": cmd_subdivide,
}


def main(argv=None, environ=None):
    parser = get_config()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 1
    try:
        cfg = make_run_config(args, environ)
    except ValueError as exc:
        parser.error(str(exc))
    logging.set_verbosity(cfg.verbosity)
    logging.info(("trilat %s" % cfg.command).center(60, "-"))
    try:
        report = COMMANDS[cfg.command](cfg)
    except InvariantBreach as exc:
        sys.stderr.write(canonical_json(exc.record) + "\n")
        return exc.exit_code
    except TrilatError as exc:
        sys.stderr.write(canonical_json(dict(error=type(exc).__name__, message=str(exc), **exc.details)) + "\n")
        return exc.exit_code
    if isinstance(report, str):
        sys.stdout.write(report)
    else:
        emit(report, cfg)
    return 0


if __name__ == "__main__":
    sys.exit(main())
