"""Command-line front end: ``moprl moments|solve|zeros|verify|scan``.

Every result is a JSON record carrying the SHA-256 fingerprint of the
canonical system serialization.  Records go to stdout as JSON lines, or to
``<out>/<command>.jsonl`` when ``--out`` is given; ``scan`` also writes
``scan.csv`` there.

Exit codes: 0 all good, 1 internal error, 2 non-normal index (solve and
zeros), 3 hypothesis violation, 4 a verify verdict other than Pass,
5 malformed configuration or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Callable

from . import criteria as C
from .config import (
    ConfigError,
    RunConfig,
    canonical_json,
    format_rational,
    grid_indices,
    load_config,
    parse_index,
    parse_polynomial,
    parse_rational,
)
from .errors import HypothesisError, MoprlError, NotNormalError
from .measures import chebyshev_sample_check, moments
from .mop_solver import MultiIndex, build_H, check_support, det_exact, solve_type_i, solve_type_ii
from .poly_core import IsolatingInterval, Polynomial, isolate_real_roots, real_root_multiplicity_total

EXIT_OK, EXIT_INTERNAL, EXIT_NOT_NORMAL, EXIT_HYPOTHESIS, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2, 3, 4, 5
# most severe first when several records disagree
SEVERITY = (EXIT_INTERNAL, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_NOT_NORMAL, EXIT_FAILED)

DEFAULT_WIDTH = Fraction(1, 10**6)
CSV_HEADER = ["index", "status", "normal", "det_sign", "det", "midpoints", "midpoints_decimal"]


# -- serialization ---------------------------------------------------------


def to_json(value: Any) -> Any:
    """Exact JSON rendering: rationals as strings, polynomials as coefficient lists."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Polynomial):
        return [format_rational(c) for c in value.coeffs]
    if isinstance(value, MultiIndex):
        return list(value.parts)
    if isinstance(value, IsolatingInterval):
        return {"lo": format_rational(value.lo), "hi": format_rational(value.hi),
                "multiplicity": value.root_multiplicity}
    if isinstance(value, C.IncreasingPath):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if hasattr(value, "value"):
        return value.value
    return str(value)


def decimal_string(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 5
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, f".{digits}g")


def _record(cfg: RunConfig, command: str, index: Any, outputs: dict, **extra) -> dict:
    rec = {"command": command, "fingerprint": cfg.fingerprint, "index": to_json(index), "outputs": to_json(outputs)}
    rec.update({k: to_json(v) for k, v in extra.items()})
    return rec


def _error(cfg: RunConfig, command: str, index: Any, kind: str, exc: Exception) -> dict:
    return _record(cfg, command, index, {}, error={"kind": kind, "message": str(exc)})


# -- helpers ---------------------------------------------------------------


def _option(args, cfg: RunConfig, name: str, default=None):
    value = getattr(args, name, None)
    return value if value is not None else cfg.options.get(name, default)


def _indices(args, cfg: RunConfig) -> list[MultiIndex]:
    r = cfg.system.r
    if args.index:
        return [parse_index(text, r) for text in args.index]
    if getattr(args, "grid", None):
        bounds = list(parse_index(args.grid, r))
        return grid_indices(bounds)
    if cfg.indices is not None:
        return cfg.indices
    raise ConfigError("no indices: pass --index, --grid or set indices in the config")


def _slot(value, r: int, name: str = "slot") -> int:
    """1-based slot on the command line, 0-based inside the library."""
    if value is None:
        raise ConfigError(f"--{name.replace('_', '-')} is required for this criterion")
    value = int(value)
    if not 1 <= value <= r:
        raise ConfigError(f"{name} must be between 1 and {r}")
    return value - 1


def _type(args, cfg: RunConfig) -> str:
    t = str(_option(args, cfg, "type", "ii")).lower()
    if t not in ("i", "ii"):
        raise ConfigError("type must be i or ii")
    return t


def _intervals(p: Polynomial, width: Fraction, cfg: RunConfig) -> list[dict]:
    out = []
    for iv in isolate_real_roots(p, width):
        entry = to_json(iv)
        if cfg.system.intervals:
            entry["in_intervals"] = [j + 1 for j, g in enumerate(cfg.system.intervals)
                                     if g.lo <= iv.lo and iv.hi <= g.hi]
        out.append(entry)
    return out


def _run_tasks(func: Callable, tasks: list, jobs: int) -> list:
    """Map in order; a process pool when ``jobs > 1``."""
    if jobs <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, tasks))


def _timed(func: Callable[[], tuple[dict, int]], timing: bool) -> tuple[dict, int]:
    start = time.perf_counter()
    rec, code = func()
    if timing:
        rec["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return rec, code


# -- commands ----------------------------------------------------------------


def cmd_moments(args, cfg: RunConfig) -> list[tuple[dict, int]]:
    max_k = int(_option(args, cfg, "max_k", 4))
    if max_k < 0:
        raise ConfigError("max_k must be >= 0")
    rows = [moments(m, max_k + 1) for m in cfg.system.measures]
    return [(_record(cfg, "moments", None, {"max_k": max_k, "rows": rows}), EXIT_OK)]


def _solve_one(cfg: RunConfig, n: MultiIndex, kind: str) -> tuple[dict, int]:
    try:
        if kind == "ii":
            P = solve_type_ii(cfg.system, n)
            return _record(cfg, "solve", n, {"type": "ii", "coefficients": P}), EXIT_OK
        A = solve_type_i(cfg.system, n)
        return _record(cfg, "solve", n, {"type": "i", "coefficients": list(A.polys)}), EXIT_OK
    except NotNormalError as exc:
        return _error(cfg, "solve", n, "not-normal", exc), EXIT_NOT_NORMAL
    except HypothesisError as exc:
        return _error(cfg, "solve", n, "hypothesis", exc), EXIT_HYPOTHESIS


def cmd_solve(args, cfg: RunConfig) -> list[tuple[dict, int]]:
    kind = _type(args, cfg)
    return [_timed(lambda n=n: _solve_one(cfg, n, kind), args.timing) for n in _indices(args, cfg)]


def _zeros_one(cfg: RunConfig, n: MultiIndex, kind: str, width: Fraction, slot: int | None) -> tuple[dict, int]:
    try:
        if kind == "ii":
            polys = [("P", solve_type_ii(cfg.system, n))]
        else:
            A = solve_type_i(cfg.system, n)
            slots = range(cfg.system.r) if slot is None else [slot]
            polys = [(f"A{j + 1}", A[j]) for j in slots]
    except NotNormalError as exc:
        return _error(cfg, "zeros", n, "not-normal", exc), EXIT_NOT_NORMAL
    except HypothesisError as exc:
        return _error(cfg, "zeros", n, "hypothesis", exc), EXIT_HYPOTHESIS
    outputs = {"type": kind, "width": width, "polynomials": []}
    for label, p in polys:
        entry: dict[str, Any] = {"label": label, "coefficients": p, "degree": p.degree}
        if p.is_zero():
            entry.update(real_root_count=None, intervals=[])
        else:
            entry.update(real_root_count=real_root_multiplicity_total(p), intervals=_intervals(p, width, cfg))
        outputs["polynomials"].append(entry)
    return _record(cfg, "zeros", n, outputs), EXIT_OK


def cmd_zeros(args, cfg: RunConfig) -> list[tuple[dict, int]]:
    kind = _type(args, cfg)
    width = parse_rational(_option(args, cfg, "width", str(DEFAULT_WIDTH)), "width")
    if width <= 0:
        raise ConfigError("width must be positive")
    slot = _option(args, cfg, "slot")
    slot = None if slot is None else _slot(slot, cfg.system.r)
    return [_timed(lambda n=n: _zeros_one(cfg, n, kind, width, slot), args.timing) for n in _indices(args, cfg)]


# verify ------------------------------------------------------------------

INDEXED = {
    "zero-ii", "zero-i", "interlace-ii", "interlace-neighbors", "interlace-i", "perturbation",
    "angelesco-count", "at-location", "nikishin-location", "nikishin-interlacing",
    "higher-wronskian", "even-wronskian", "at-chebyshev",
}
UNINDEXED = {"andreief", "quasi-orthogonality"}
CRITERIA = sorted(INDEXED | UNINDEXED)


def _verify_params(args, cfg: RunConfig) -> dict:
    """Resolve criterion parameters once, in the parent process."""
    r = cfg.system.r
    name = _option(args, cfg, "criterion")
    if name not in CRITERIA:
        raise ConfigError(f"criterion must be one of {', '.join(CRITERIA)}, got {name!r}")
    params: dict[str, Any] = {"criterion": name}
    slot = _option(args, cfg, "slot")
    second = _option(args, cfg, "second_slot")
    if name in ("zero-i", "interlace-ii", "nikishin-location", "nikishin-interlacing"):
        params["slot"] = _slot(slot, r)
    if name in ("interlace-neighbors", "interlace-i"):
        params["slot"] = _slot(slot, r)
        params["second_slot"] = _slot(second, r, "second_slot")
    if name in ("higher-wronskian", "even-wronskian"):
        steps = _option(args, cfg, "steps", [])
        if isinstance(steps, str):
            steps = [int(s) for s in steps.split(",") if s.strip()]
        params["steps"] = tuple(_slot(s, r, "steps") for s in steps)
        params["type"] = _type(args, cfg).upper()
        params["slot"] = None if slot is None else _slot(slot, r)
    if name == "perturbation":
        params["q"] = parse_polynomial(cfg.options.get("q", ["0"]), "options.q")
    if name == "at-chebyshev":
        params["trials"] = int(_option(args, cfg, "trials", 20))
    if name == "andreief":
        opts = cfg.options
        params["phis"] = [parse_polynomial(p, f"options.phis[{i}]") for i, p in enumerate(opts.get("phis", []))]
        params["psis"] = [parse_polynomial(p, f"options.psis[{i}]") for i, p in enumerate(opts.get("psis", []))]
        params["A"] = [[parse_rational(x, f"options.A[{i}][{k}]") for k, x in enumerate(row)]
                       for i, row in enumerate(opts.get("A", []))]
    if name == "quasi-orthogonality":
        params["p"] = parse_polynomial(cfg.options.get("p", []), "options.p")
        params["conditions"] = int(cfg.options.get("conditions", 0))
        params["slot"] = 0 if slot is None else _slot(slot, r)
    return params


def _verify_report(cfg: RunConfig, params: dict, n: MultiIndex | None) -> C.CriterionReport:
    S, name = cfg.system, params["criterion"]
    j, k = params.get("slot"), params.get("second_slot")
    if name == "zero-ii":
        return C.verify_zero_criterion_type_ii(S, n)
    if name == "zero-i":
        return C.verify_zero_criterion_type_i(S, n, j)
    if name == "interlace-ii":
        return C.verify_interlace_criterion_type_ii(S, n, j)
    if name == "interlace-neighbors":
        return C.verify_interlace_criterion_neighbors(S, n, j, k)
    if name == "interlace-i":
        return C.verify_interlace_criterion_type_i(S, n, k, j)
    if name == "perturbation":
        return C.verify_perturbation_lemma(S, params["q"], n)
    if name == "angelesco-count":
        return C.verify_angelesco_zero_count(S, n)
    if name == "at-location":
        return C.verify_at_zero_location(S, n)
    if name == "nikishin-location":
        return C.verify_nikishin_type_i_location(S, n, j)
    if name == "nikishin-interlacing":
        return C.verify_nikishin_type_i_interlacing(S, n, j)
    if name in ("higher-wronskian", "even-wronskian"):
        path = C.IncreasingPath(n, params["steps"])
        func = C.verify_higher_wronskian if name == "higher-wronskian" else C.verify_even_wronskian_nonvanishing
        return func(S, path, params["type"], j)
    if name == "at-chebyshev":
        ok = chebyshev_sample_check(S, n, params["trials"], seed=cfg.seed)
        return C.CriterionReport(name, S.summary(), n, C.Verdict.PASS if ok else C.Verdict.FAIL,
                                 (("trials", params["trials"]),))
    if name == "andreief":
        return C.verify_andreief(S.measures[0], params["phis"], params["psis"], params["A"])
    if name == "quasi-orthogonality":
        return C.verify_quasiorthogonality(S.measures[j], params["p"], params["conditions"])
    raise ConfigError(f"unknown criterion {name}")


def _public_params(params: dict) -> dict:
    """Parameters as written on the command line, slots 1-based."""
    out = {}
    for key, value in params.items():
        if key in ("slot", "second_slot") and value is not None:
            value = value + 1
        elif key == "steps":
            value = [s + 1 for s in value]
        out[key] = value
    return out


def _verify_one(task) -> tuple[dict, int]:
    cfg, params, n, timing = task

    def run():
        try:
            rep = _verify_report(cfg, params, n)
        except HypothesisError as exc:
            return _error(cfg, "verify", n, "hypothesis", exc), EXIT_HYPOTHESIS
        except ConfigError:
            raise
        except MoprlError as exc:
            return _error(cfg, "verify", n, "internal", exc), EXIT_INTERNAL
        rec = _record(cfg, "verify", n, {"verdict": rep.verdict, "witnesses": dict(rep.witnesses)},
                      criterion=rep.name, parameters=_public_params(params), seed=cfg.seed)
        return rec, EXIT_OK if rep.passed else EXIT_FAILED

    return _timed(run, timing)


def cmd_verify(args, cfg: RunConfig) -> list[tuple[dict, int]]:
    params = _verify_params(args, cfg)
    indices = [None] if params["criterion"] in UNINDEXED else _indices(args, cfg)
    return _run_tasks(_verify_one, [(cfg, params, n, args.timing) for n in indices], args.jobs)


# scan --------------------------------------------------------------------


def _scan_one(task) -> tuple[dict, int]:
    cfg, n, width, digits = task
    S = cfg.system
    row: dict[str, Any] = {"status": "ok", "normal": None, "det_sign": None, "det": None,
                           "midpoints": [], "midpoints_decimal": []}
    try:
        check_support(S, n)
    except HypothesisError:
        row["status"] = "insufficient support"
        return _record(cfg, "scan", n, row), EXIT_OK
    d = det_exact(build_H(S, n, check=False))
    row.update(normal=d != 0, det_sign=(d > 0) - (d < 0), det=d)
    if d != 0:
        P = solve_type_ii(S, n, check=False)
        mids = [iv.midpoint for iv in isolate_real_roots(P, width)] if not P.is_constant() else []
        row["midpoints"] = mids
        row["midpoints_decimal"] = [decimal_string(m, digits) for m in mids]
    return _record(cfg, "scan", n, row), EXIT_OK


def scan_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        o = rec["outputs"]
        writer.writerow([
            "(" + ",".join(str(p) for p in rec["index"]) + ")",
            o["status"],
            "" if o["normal"] is None else str(o["normal"]).lower(),
            "" if o["det_sign"] is None else o["det_sign"],
            "" if o["det"] is None else o["det"],
            " ".join(o["midpoints"]),
            " ".join(o["midpoints_decimal"]),
        ])
    return buf.getvalue()


def cmd_scan(args, cfg: RunConfig) -> list[tuple[dict, int]]:
    width = parse_rational(_option(args, cfg, "width", str(DEFAULT_WIDTH)), "width")
    digits = int(_option(args, cfg, "precision", 12))
    if width <= 0 or digits < 1:
        raise ConfigError("width must be positive and precision at least 1")
    indices = sorted(_indices(args, cfg))
    return _run_tasks(_scan_one, [(cfg, n, width, digits) for n in indices], args.jobs)


COMMANDS = {
    "moments": cmd_moments,
    "solve": cmd_solve,
    "zeros": cmd_zeros,
    "verify": cmd_verify,
    "scan": cmd_scan,
}


# -- entry point -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="moprl", description="Exact multiple orthogonal polynomials on finite atomic measures.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--index", action="append", help="multi-index such as 1,2 (repeatable)")
    parser.add_argument("--grid", help="inclusive bounds such as 2,2 for every index below them")
    parser.add_argument("--type", choices=["i", "ii"], help="polynomial type (default ii)")
    parser.add_argument("--width", help="isolating interval width as p/q")
    parser.add_argument("--seed", type=int, help="overrides the config seed")
    parser.add_argument("--out", help="directory for output files instead of stdout")
    parser.add_argument("--criterion", choices=CRITERIA, help="criterion for verify")
    parser.add_argument("--slot", type=int, help="1-based slot j")
    parser.add_argument("--second-slot", dest="second_slot", type=int,
                        help="1-based second slot: k for interlace-neighbors, ell for interlace-i")
    parser.add_argument("--steps", help="1-based path steps such as 1,2,1 for the Wronskian criteria")
    parser.add_argument("--max-k", dest="max_k", type=int, help="highest moment for moments")
    parser.add_argument("--precision", type=int, help="significant digits of decimal renderings (default 12)")
    parser.add_argument("--trials", type=int, help="sample count for at-chebyshev")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for verify and scan")
    parser.add_argument("--no-timing", dest="timing", action="store_false", help="omit timing fields")
    return parser


def _emit(records: list[dict], command: str, out_dir: str | None, stdout) -> None:
    lines = "".join(canonical_json(rec) + "\n" for rec in records)
    if out_dir is None:
        stdout.write(lines)
        return
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, f"{command}.jsonl"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(lines)
    if command == "scan":
        with open(os.path.join(out_dir, "scan.csv"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(scan_csv(records))


def main(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("seed must be >= 0")
            cfg.seed = args.seed
        results = COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"moprl: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"moprl: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HypothesisError as exc:
        print(f"moprl: hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except Exception as exc:  # pragma: no cover - reported as an internal error
        print(f"moprl: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    records = [rec for rec, _ in results]
    _emit(records, args.command, args.out, stdout)
    codes = {code for _, code in results}
    for code in SEVERITY:
        if code in codes:
            for rec, c in results:
                if c == code and "error" in rec:
                    print(f"moprl: {rec['error']['kind']}: {rec['error']['message']}", file=sys.stderr)
                    break
            return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
