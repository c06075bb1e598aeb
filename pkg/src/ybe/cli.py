"""Command-line interface and batch runner.

Subcommands:

    list                     catalog entries, parameters, available checks
    build                    export G-hat / C-hat / R(s) / r(s) as matrix JSON
    verify                   run one check against one entry or pair
    expand                   write the h-expansion coefficient matrices
    fit                      recover the coefficient shift constant
    grassmann verify         composed-operator checks
    run MANIFEST             replay a batch of jobs from a JSON manifest

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage
error, 3 internal error.  Reports are emitted as JSON (default) or a
fixed-width text table; JSON output is byte-stable for identical inputs
apart from the elapsed-time field.  The environment variable YBE_SEED
overrides the default sampler seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import catalog
from .errors import ParamOutOfRange, YbeError
from .grassmann import check_qybe_grassmann, expansion_check_grassmann
from .liepairs import (
    curvature_from_pair,
    grassmann_pair,
    verify_curvature_casimir,
)
from .semiclassical import expand_R, fit_entry
from .tensor import LegMatrix
from .verifiers import (
    SamplerConfig,
    VerificationReport,
    check_cybe,
    check_cybe_index,
    check_identity_suite,
    check_qybe,
    check_unitarity,
)

ENTRY_CHECKS = ("qybe", "cybe", "identities", "unitarity", "crosscheck",
                "classical-limit")
PAIR_CHECKS = ("cybe-index", "curvature-casimir")
ALL_CHECKS = ENTRY_CHECKS + PAIR_CHECKS

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class JobSpec:
    """One validated check invocation."""

    check: str
    entry: str = None
    params: dict = field(default_factory=dict)
    mode: str = "exact"
    seed: int = None
    num_points: int = 5
    algebra: str = "real"

    def to_json_dict(self) -> dict:
        out = {"check": self.check, "params": self.params, "mode": self.mode}
        if self.entry:
            out["entry"] = self.entry
        if self.seed is not None:
            out["seed"] = self.seed
        if self.algebra != "real":
            out["algebra"] = self.algebra
        return out


def default_seed() -> int:
    env = os.environ.get("YBE_SEED")
    return int(env) if env else 0


def _collect_params(args) -> dict:
    params = {}
    for key in ("n", "k", "p", "q"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    return params


def validate_job(check: str, entry: str, params: dict, mode: str = "exact",
                 seed: int = None, num_points: int = 5,
                 algebra: str = "real") -> JobSpec:
    if check in ("grassmann-qybe", "grassmann-expansion"):
        p, q = params.get("p"), params.get("q")
        for name, val in (("p", p), ("q", q)):
            if not isinstance(val, int) or val < 1:
                raise ParamOutOfRange(f"grassmann checks need {name} >= 1")
        return JobSpec(check, None, {"p": p, "q": q}, mode, seed, num_points,
                       algebra)
    if check in PAIR_CHECKS:
        p, q = params.get("p"), params.get("q")
        for name, val in (("p", p), ("q", q)):
            if not isinstance(val, int) or val < 1:
                raise ParamOutOfRange(f"{check} needs {name} >= 1")
        return JobSpec(check, None, {"p": p, "q": q}, "exact", seed)
    if check == "fit":
        entry_obj = catalog.validate_params(entry, params)
        return JobSpec(check, entry, entry_obj.params, "exact", seed)
    if check not in ENTRY_CHECKS:
        raise ParamOutOfRange(f"unknown check {check!r}")
    if entry is None:
        raise ParamOutOfRange(f"check {check!r} needs --entry")
    entry_obj = catalog.validate_params(entry, params)
    if check == "identities" and entry not in ("sphere", "cpn", "hpn"):
        raise ParamOutOfRange("identity suites exist for sphere, cpn, hpn")
    if mode not in ("exact", "sampled"):
        raise ParamOutOfRange(f"unknown mode {mode!r}")
    return JobSpec(check, entry, entry_obj.params, mode, seed, num_points)


def run_job(spec: JobSpec):
    """Dispatch one job; returns a list of VerificationReports."""
    seed = spec.seed if spec.seed is not None else default_seed()
    sampler = SamplerConfig(seed=seed, num_points=spec.num_points)
    if spec.check == "qybe":
        rmat = catalog.assemble_R(spec.entry, spec.params)
        return [check_qybe(rmat.matrix, entry=spec.entry, params=spec.params,
                           mode=spec.mode, sampler=sampler)]
    if spec.check == "cybe":
        rhat = catalog.classical_r(spec.entry, spec.params)
        return [check_cybe(rhat, entry=spec.entry, params=spec.params)]
    if spec.check == "identities":
        return check_identity_suite(spec.entry, spec.params)
    if spec.check == "unitarity":
        rmat = catalog.assemble_R(spec.entry, spec.params)
        return [check_unitarity(rmat.matrix, entry=spec.entry,
                                params=spec.params)]
    if spec.check == "crosscheck":
        try:
            catalog.crosscheck_closed_vs_computed(spec.entry, spec.params)
            return [VerificationReport("crosscheck", spec.entry, spec.params,
                                       "exact", "pass")]
        except YbeError as exc:
            return [VerificationReport("crosscheck", spec.entry, spec.params,
                                       "exact", "fail", str(exc))]
    if spec.check == "classical-limit":
        from .semiclassical import check_classical_limit
        rmat = catalog.assemble_R(spec.entry, spec.params)
        rhat = catalog.classical_r(spec.entry, spec.params)
        return [check_classical_limit(rmat, rhat, entry=spec.entry,
                                      params=spec.params)]
    if spec.check == "cybe-index":
        pair = grassmann_pair(spec.params["p"], spec.params["q"])
        curv = curvature_from_pair(pair)
        return [check_cybe_index(curv, entry=pair.name, params=spec.params)]
    if spec.check == "curvature-casimir":
        pair = grassmann_pair(spec.params["p"], spec.params["q"])
        try:
            result = verify_curvature_casimir(pair)
            return [VerificationReport(
                "curvature-casimir", pair.name, spec.params, "exact", "pass",
                extra={"constant": str(result["constant"])})]
        except YbeError as exc:
            return [VerificationReport("curvature-casimir", pair.name,
                                       spec.params, "exact", "fail",
                                       str(exc))]
    if spec.check == "grassmann-qybe":
        return [check_qybe_grassmann(spec.params["p"], spec.params["q"],
                                     mode=spec.mode, sampler=sampler,
                                     algebra=spec.algebra)]
    if spec.check == "grassmann-expansion":
        return [expansion_check_grassmann(spec.params["p"], spec.params["q"])]
    if spec.check == "fit":
        result = fit_entry(spec.entry, spec.params, seed=seed)
        if result.unconstrained:
            extra = {"constant": "unconstrained",
                     "note": "residual vanishes identically in c"}
        else:
            extra = {"candidates": [str(c) for c in result.candidates],
                     "rejected": [str(c) for c in result.rejected]}
        return [VerificationReport("fit", spec.entry, spec.params, "sampled",
                                   "pass", seed=seed, points=result.points,
                                   extra=extra)]
    raise ParamOutOfRange(f"unknown check {spec.check!r}")


def _run_job_dict(payload: dict):
    return run_job(JobSpec(**payload))


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------

def emit_report(reports, fmt: str = "json", out: str = "-") -> str:
    if fmt == "json":
        text = json.dumps([r.to_json_dict() for r in reports], indent=2,
                          sort_keys=True) + "\n"
    elif fmt == "text":
        widths = (22, 26, 28, 8, 10)
        header = ("check", "entry", "params", "backend", "verdict")
        lines = ["".join(h.ljust(w) for h, w in zip(header, widths))]
        lines.append("-" * sum(widths))
        for r in reports:
            params = ",".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            row = (r.check, r.entry, params, r.backend, r.verdict)
            lines.append("".join(str(c).ljust(w)
                                 for c, w in zip(row, widths)))
        text = "\n".join(lines) + "\n"
    else:
        raise ParamOutOfRange(f"unknown format {fmt!r}")
    if out == "-" or out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _matrix_json(m: LegMatrix) -> str:
    return json.dumps(m.to_json_dict(), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybe",
        description="Exact verification of Yang-Baxter solutions built "
                    "from matrix symmetric pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="catalog entries and available checks")

    def add_entry_params(p):
        p.add_argument("--entry", choices=catalog.ENTRY_IDS)
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--q", type=int)

    b = sub.add_parser("build", help="export catalog matrices as JSON")
    add_entry_params(b)
    b.add_argument("--what", choices=("ghat", "chat", "r", "classical"),
                   default="r")
    b.add_argument("--out", default="-")

    v = sub.add_parser("verify", help="run one verification check")
    add_entry_params(v)
    v.add_argument("--check", required=True,
                   choices=ALL_CHECKS)
    v.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    v.add_argument("--seed", type=int)
    v.add_argument("--points", type=int, default=5)
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--out", default="-")

    e = sub.add_parser("expand", help="h-expansion coefficient matrices")
    add_entry_params(e)
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--out", default="-",
                   help="directory for order_k.json files, or - for stdout")

    f = sub.add_parser("fit", help="recover the coefficient shift constant")
    add_entry_params(f)
    f.add_argument("--seed", type=int)
    f.add_argument("--format", choices=("json", "text"), default="json")
    f.add_argument("--out", default="-")

    g = sub.add_parser("grassmann", help="composed-operator checks")
    gsub = g.add_subparsers(dest="grassmann_command", required=True)
    gv = gsub.add_parser("verify")
    gv.add_argument("--p", type=int, required=True)
    gv.add_argument("--q", type=int, required=True)
    gv.add_argument("--check", choices=("qybe", "expansion"), required=True)
    gv.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    gv.add_argument("--algebra", choices=("real", "complex", "quaternion"),
                    default="real")
    gv.add_argument("--seed", type=int)
    gv.add_argument("--points", type=int, default=5)
    gv.add_argument("--format", choices=("json", "text"), default="json")
    gv.add_argument("--out", default="-")

    r = sub.add_parser("run", help="run a JSON manifest of jobs")
    r.add_argument("manifest")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--format", choices=("json", "text"), default="json")
    r.add_argument("--out", default="-")
    return parser


def _cmd_list(_args) -> int:
    payload = {
        "entries": catalog.list_entries(),
        "checks": {
            "entry": list(ENTRY_CHECKS),
            "pair": list(PAIR_CHECKS),
            "grassmann": ["qybe", "expansion"],
        },
    }
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_PASS


def _cmd_build(args) -> int:
    entry = catalog.validate_params(args.entry, _collect_params(args))
    if args.what in ("ghat", "chat"):
        ghat, chat = catalog.build_GC_closed(args.entry, entry.params)
        matrix = ghat if args.what == "ghat" else chat
    elif args.what == "r":
        matrix = catalog.assemble_R(args.entry, entry.params).matrix
    else:
        matrix = catalog.classical_r(args.entry, entry.params)
    text = _matrix_json(matrix)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_PASS


def _cmd_verify(args) -> int:
    params = _collect_params(args)
    spec = validate_job(args.check, args.entry, params, args.mode,
                        args.seed, args.points)
    reports = run_job(spec)
    emit_report(reports, args.format, args.out)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_expand(args) -> int:
    entry = catalog.validate_params(args.entry, _collect_params(args))
    if args.order < 0:
        raise ParamOutOfRange("--order must be nonnegative")
    rmat = catalog.assemble_R(args.entry, entry.params)
    series = expand_R(rmat, args.order)
    if args.out == "-":
        payload = [m.to_json_dict() for m in series.coeff_mats]
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        os.makedirs(args.out, exist_ok=True)
        for k, m in enumerate(series.coeff_mats):
            path = os.path.join(args.out, f"order_{k}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(_matrix_json(m))
    return EXIT_PASS


def _cmd_fit(args) -> int:
    params = _collect_params(args)
    spec = validate_job("fit", args.entry, params, seed=args.seed)
    reports = run_job(spec)
    emit_report(reports, args.format, args.out)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_grassmann(args) -> int:
    check = "grassmann-qybe" if args.check == "qybe" else "grassmann-expansion"
    spec = validate_job(check, None, {"p": args.p, "q": args.q}, args.mode,
                        args.seed, args.points, args.algebra)
    reports = run_job(spec)
    emit_report(reports, args.format, args.out)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_run(args) -> int:
    with open(args.manifest, encoding="utf-8") as fh:
        manifest = json.load(fh)
    global_seed = manifest.get("seed", default_seed())
    specs = []
    for job in manifest.get("jobs", []):
        spec = validate_job(job["check"], job.get("entry"),
                            dict(job.get("params", {})),
                            job.get("mode", "exact"),
                            job.get("seed", global_seed),
                            job.get("points", 5),
                            job.get("algebra", "real"))
        specs.append(spec)
    if args.jobs > 1 and len(specs) > 1:
        payloads = [spec.__dict__ for spec in specs]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            grouped = list(pool.map(_run_job_dict, payloads))
    else:
        grouped = [run_job(spec) for spec in specs]
    reports = [r for group in grouped for r in group]
    emit_report(reports, args.format, args.out)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "expand":
            return _cmd_expand(args)
        if args.command == "fit":
            return _cmd_fit(args)
        if args.command == "grassmann":
            return _cmd_grassmann(args)
        if args.command == "run":
            return _cmd_run(args)
        parser.error(f"unknown command {args.command!r}")
    except ParamOutOfRange as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INTERNAL
    except YbeError as exc:
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    return EXIT_INTERNAL


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
