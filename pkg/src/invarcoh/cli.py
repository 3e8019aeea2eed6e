"""Job-file driven command line front end.

Every subcommand accepts --job pointing at a JSON job file; individual flags
override job fields (flags win).  Each run writes <out>.json, <out>.md, CSV
tables, and PNG figures.  Exit codes: 0 success, 1 verification mismatch,
2 input error, 3 NotStabilized when the job demanded stabilization.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from random import Random

from .cech import IdealSpec, LCEngine, STABILIZED
from .equivariant import (
    check_fixed_commutes_with_homology,
    random_equivariant_complex,
)
from .errors import (
    InvarcohError,
    NotStabilized,
    ParseError,
    ValidationError,
)
from .fields import QQ, field_from_json
from .groups import (
    FiniteMatrixGroup,
    SquareMatrix,
    close_group,
    is_in_SL,
    molien_coefficients,
    stock_group,
)
from .invariants import hilbert_series, minimal_generators
from .oracles import run_oracle_suite, MATCH
from .polynomials import PolyRing
from .report import (
    ResultDocument,
    bar_figure,
    cache_key,
    cache_load,
    cache_store,
    payload_hash,
    timed,
    write_outputs,
)

log = logging.getLogger("invarcoh")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_NOT_STABILIZED = 3


def _load_job(args) -> dict:
    job = {}
    if args.job:
        try:
            with open(args.job) as fh:
                job = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read job file {args.job}: {exc}")
        if not isinstance(job, dict):
            raise ValidationError("job file must hold a JSON object")
    # flags win over job fields
    for key, value in vars(args).items():
        if key in ("job", "out", "func", "command") or value is None:
            continue
        job[key] = value
    return job


def _field_of(job):
    spec = job.get("field", {"kind": "Q"})
    if isinstance(spec, str):
        if spec == "Q":
            spec = {"kind": "Q"}
        elif spec.startswith("GFp:"):
            spec = {"kind": "GFp", "p": int(spec.split(":", 1)[1])}
        else:
            raise ValidationError(f"unknown field spec {spec!r}")
    return field_from_json(spec)


def _group_of(job, field) -> FiniteMatrixGroup:
    if "stock_group" in job:
        if field is not QQ:
            raise ValidationError("stock groups are defined over Q")
        return stock_group(job["stock_group"])
    gens_spec = job.get("group_generators")
    if not gens_spec:
        raise ValidationError("job needs group_generators or stock_group")
    gens = []
    for rows in gens_spec:
        entries = [[field.parse(str(e)) for e in row] for row in rows]
        gens.append(SquareMatrix(field, entries))
    return close_group(gens, max_order=int(job.get("max_order", 10000)))


def _ring_of(job, field) -> PolyRing:
    return PolyRing(field, int(job.get("n", 2)))


def _parse_polys(ring, items, what):
    if isinstance(items, str):
        items = [s for s in items.split(",") if s.strip()]
    if not items:
        raise ValidationError(f"job needs {what}")
    return [ring.parse(s) for s in items]


def _ideal_of(job, ring, group=None) -> IdealSpec:
    gens = _parse_polys(ring, job.get("ideal"), "an ideal generator list")
    return IdealSpec(ring, gens, group=group)


# --- subcommands -------------------------------------------------------------

def cmd_group_info(job):
    field = _field_of(job)
    group = _group_of(job, field)
    in_sl = is_in_SL(group)
    payload = {
        "order": group.order,
        "n": group.n,
        "determinants": sorted(field.to_str(d) for d in group.determinants()),
        "in_SL": in_sl,
        "gorenstein_by_watanabe": in_sl,
        "elements": [
            [[field.to_str(e) for e in row] for row in m.entries]
            for m in group.elements
        ],
    }
    tables = {
        "Group": (
            ["order", "n", "in_SL", "gorenstein_by_watanabe"],
            [[group.order, group.n, in_sl, in_sl]],
        )
    }
    return payload, tables, {}, {}


def cmd_molien(job):
    field = _field_of(job)
    group = _group_of(job, field)
    max_deg = int(job.get("max_deg", 10))
    coeffs = molien_coefficients(group, max_deg)
    payload = {"max_deg": max_deg, "coefficients": coeffs}
    tables = {"Molien coefficients": (["degree", "dim"], list(enumerate(coeffs)))}
    figures = {
        "molien": bar_figure(
            "Molien coefficients", "degree", "dim (R^G)_d", range(max_deg + 1), coeffs
        )
    }
    return payload, tables, figures, {}


def cmd_invariants(job):
    field = _field_of(job)
    group = _group_of(job, field)
    max_deg = int(job.get("max_deg", 10))
    key = cache_key(
        "invariants",
        field.to_json(),
        [[ [field.to_str(e) for e in row] for row in m.entries] for m in group.elements],
        max_deg,
    )
    payload = cache_load(key)
    if payload is None:
        pres = minimal_generators(group, max_deg)
        payload = {
            "max_deg": max_deg,
            "generators": [
                {"degree": deg, "polynomial": str(g)} for deg, g in pres.generators
            ],
            "hilbert_series": hilbert_series(group, max_deg),
            "hilbert_numerator": pres.hilbert_numerator,
        }
        cache_store(key, payload)
    tables = {
        "Generators": (
            ["degree", "polynomial"],
            [[g["degree"], g["polynomial"]] for g in payload["generators"]],
        ),
        "Hilbert series": (
            ["degree", "dim"], list(enumerate(payload["hilbert_series"]))
        ),
    }
    figures = {
        "hilbert": bar_figure(
            "Hilbert series of R^G",
            "degree",
            "dim",
            range(max_deg + 1),
            payload["hilbert_series"],
        )
    }
    return payload, tables, figures, {"cache_key": key}


def _engine_of(job):
    field = _field_of(job)
    ring = _ring_of(job, field)
    group = None
    if "stock_group" in job or "group_generators" in job:
        group = _group_of(job, field)
    ideal = _ideal_of(job, ring, group=group)
    t_max = int(job.get("t_max", 12))
    window = int(job.get("window", 3))
    return LCEngine(ideal, t_max=t_max, window=window), ring


def cmd_lc(job):
    engine, ring = _engine_of(job)
    i = int(job["i"])
    deg_from, deg_to = int(job["deg_from"]), int(job["deg_to"])
    want_invariant = bool(job.get("invariant_part", False))
    if want_invariant and (engine.ideal.group is None or not engine.ideal.invariant_flag):
        raise ValidationError(
            "--invariant-part needs a group and G-invariant ideal generators"
        )
    rows = []
    per_degree = {}
    demanded = bool(job.get("require_stabilized", True))
    any_unstable = False
    for d in range(deg_from, deg_to + 1):
        piece = engine.piece(i, d)
        entry = {
            "status": piece.status,
            "dim": piece.stable_dim,
            "level_reached": piece.level_reached,
        }
        if want_invariant:
            entry["invariant_dim"] = piece.invariant_dim
        if piece.status != STABILIZED:
            any_unstable = True
        per_degree[str(d)] = entry
        rows.append(
            [d, entry["status"], entry["dim"], entry.get("invariant_dim", ""),
             entry["level_reached"]]
        )
    payload = {
        "i": i,
        "deg_from": deg_from,
        "deg_to": deg_to,
        "invariant_part": want_invariant,
        "per_degree": per_degree,
    }
    tables = {
        "Local cohomology piece dimensions": (
            ["degree", "status", "dim", "invariant_dim", "level_reached"], rows
        )
    }
    xs = list(range(deg_from, deg_to + 1))
    dims = [per_degree[str(d)]["dim"] or 0 for d in xs]
    figures = {
        "dims": bar_figure(
            f"dim H^{i}_I(R)_d", "degree", "dim", xs, dims
        )
    }
    provenance = {
        "t_max": engine.t_max,
        "window": engine.window,
        "levels_reached": {
            str(d): per_degree[str(d)]["level_reached"] for d in xs
        },
    }
    if any_unstable and demanded:
        raise NotStabilized("a requested piece did not stabilize", payload)
    return payload, tables, figures, provenance


def cmd_socle(job):
    engine, ring = _engine_of(job)
    i = int(job["i"])
    deg_from, deg_to = int(job["deg_from"]), int(job["deg_to"])
    gens = _parse_polys(ring, job.get("m_gens"), "maximal-ideal generators (m_gens)")
    invariant_part = bool(job.get("invariant_part", False))
    result = engine.socle_dims(i, deg_from, deg_to, gens, invariant_part=invariant_part)
    payload = {
        "i": i,
        "invariant_part": invariant_part,
        "per_degree": {str(d): v for d, v in result["per_degree"].items()},
        "total": result["total"],
    }
    xs = sorted(result["per_degree"])
    tables = {
        "Socle dimensions": (
            ["degree", "socle_dim"], [[d, result["per_degree"][d]] for d in xs]
        )
    }
    figures = {
        "socle": bar_figure(
            "socle dimensions", "degree", "dim", xs, [result["per_degree"][d] for d in xs]
        )
    }
    return payload, tables, figures, {"t_max": engine.t_max, "window": engine.window}


def cmd_verify_fixed_commute(job):
    trials = int(job.get("trials", 20))
    seed = int(job.get("seed", 0))
    rng = Random(seed)
    group_names = job.get("groups", ["minus_identity", "c3", "c4"])
    rows = []
    failures = 0
    for trial in range(trials):
        name = group_names[trial % len(group_names)]
        group = stock_group(name)
        length = rng.randint(2, 4)
        dims = [rng.randint(1, 6) for _ in range(length)]
        complex_ = random_equivariant_complex(group, dims, rng)
        report = check_fixed_commutes_with_homology(complex_)
        ok = all(r["equal"] and r["inclusion_injective"] for r in report)
        if not ok:
            failures += 1
        rows.append([trial, name, "x".join(map(str, dims)), "pass" if ok else "FAIL"])
    payload = {
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "rows": [{"trial": r[0], "group": r[1], "dims": r[2], "result": r[3]} for r in rows],
    }
    tables = {"Fixed-commutes-with-homology": (["trial", "group", "dims", "result"], rows)}
    return payload, tables, {}, {"groups": group_names}


def cmd_verify(job):
    reports = run_oracle_suite(job.get("oracle_config"))
    mismatches = [r for r in reports if r.verdict != MATCH]
    payload = {
        "suite": job.get("suite", "all"),
        "reports": [r.to_json() for r in reports],
        "mismatches": len(mismatches),
    }
    rows = [
        [r.name, json.dumps(r.inputs, sort_keys=True), r.engine_value, r.oracle_value, r.verdict]
        for r in reports
    ]
    tables = {
        "Oracle comparisons": (
            ["oracle", "inputs", "engine", "oracle_value", "verdict"], rows
        )
    }
    return payload, tables, {}, {}


COMMANDS = {
    "group-info": cmd_group_info,
    "molien": cmd_molien,
    "invariants": cmd_invariants,
    "lc": cmd_lc,
    "socle": cmd_socle,
    "verify-fixed-commute": cmd_verify_fixed_commute,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invarcoh",
        description="Exact invariant rings and graded local cohomology of finite matrix groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--job", help="JSON job file; flags override its fields")
        p.add_argument("--out", default=None, help="output path prefix")
        p.add_argument("--field", dest="field", default=None,
                       help='field spec: "Q" or "GFp:7"')
        p.add_argument("--n", type=int, default=None, help="number of variables")
        p.add_argument("--stock-group", dest="stock_group", default=None,
                       help="named rational group: trivial, minus_identity, swap, c3, c4, d4")

    p = sub.add_parser("group-info", help="order, determinants, SL membership")
    common(p)
    p = sub.add_parser("molien", help="Molien series coefficients over Q")
    common(p)
    p.add_argument("--max-deg", dest="max_deg", type=int, default=None)
    p = sub.add_parser("invariants", help="minimal generators and Hilbert series of R^G")
    common(p)
    p.add_argument("--max-deg", dest="max_deg", type=int, default=None)
    p = sub.add_parser("lc", help="graded pieces of local cohomology")
    common(p)
    p.add_argument("--ideal", default=None, help='comma-separated generators, e.g. "x^2,y^2"')
    p.add_argument("--i", dest="i", type=int, default=None)
    p.add_argument("--deg-from", dest="deg_from", type=int, default=None)
    p.add_argument("--deg-to", dest="deg_to", type=int, default=None)
    p.add_argument("--t-max", dest="t_max", type=int, default=None)
    p.add_argument("--window", dest="window", type=int, default=None)
    p.add_argument("--invariant-part", dest="invariant_part", action="store_const",
                   const=True, default=None)
    p = sub.add_parser("socle", help="socle (zeroth Bass number) table")
    common(p)
    p.add_argument("--ideal", default=None)
    p.add_argument("--i", dest="i", type=int, default=None)
    p.add_argument("--deg-from", dest="deg_from", type=int, default=None)
    p.add_argument("--deg-to", dest="deg_to", type=int, default=None)
    p.add_argument("--m-gens", dest="m_gens", default=None,
                   help="comma-separated maximal-ideal generators")
    p.add_argument("--t-max", dest="t_max", type=int, default=None)
    p.add_argument("--window", dest="window", type=int, default=None)
    p.add_argument("--invariant-part", dest="invariant_part", action="store_const",
                   const=True, default=None)
    p = sub.add_parser("verify-fixed-commute",
                       help="randomized fixed-points-commute-with-homology checks")
    common(p)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p = sub.add_parser("verify", help="run the oracle suite")
    common(p)
    p.add_argument("--suite", default=None)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    logging.getLogger("matplotlib").setLevel(logging.WARNING)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = _load_job(args)
        handler = COMMANDS[args.command]
        (payload, tables, figures, provenance), elapsed = timed(lambda: handler(job))
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotStabilized as exc:
        print(f"not stabilized: {exc.args[0]}", file=sys.stderr)
        return EXIT_NOT_STABILIZED
    except InvarcohError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    doc = ResultDocument(
        command=args.command,
        job=job,
        payload=payload,
        provenance=provenance,
        timing_seconds=elapsed,
    )
    out_prefix = args.out or f"invarcoh_{args.command.replace('-', '_')}"
    written = write_outputs(doc, out_prefix, tables, figures)
    for path in written:
        print(f"wrote {path}")
    print(f"payload sha256: {payload_hash(payload)}")
    if args.command == "verify" and payload.get("mismatches", 0) > 0:
        print("verification mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    if args.command == "verify-fixed-commute" and payload.get("failures", 0) > 0:
        print("verification mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
