"""Command-line driver.

Exit codes: 0 clean, 1 verification failure, 2 usage / bad config,
3 budget exceeded, 4 checkpoint mismatch, 10 witness found.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace

from . import bounds, verify
from .arith import MAX_FACTOR, euler_phi, factorize, is_squarefree, omega, schemmel_s2
from .errors import CheckpointMismatchError, ResourceLimitError
from .props import RECORD_FIELDS, classify
from .search import (
    SearchConfig,
    classify_range,
    parse_natural,
    read_checkpoint,
    run,
    validate_checkpoint,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_CHECKPOINT = 4
EXIT_WITNESS = 10

TOTIENT_HEADER = ("n", "phi", "s2", "omega", "squarefree")
BOUND_HEADER = ("k", "expr", "value")
VERIFY_HEADER = ("check", "passed", "detail")
REPORT_HEADER = (
    "examined", "pruned_ratio", "pruned_bound", "pruned_mod3", "pool_exhausted",
    "primes", "primes_m1", "witnesses", "lehmer_witnesses", "cursor", "elapsed_seconds",
)


class UsageError(Exception):
    pass


def _natural(text: str) -> int:
    try:
        return parse_natural(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    return str(v)


class Emitter:
    """Writes rows as ``key=value`` text, JSON lines or CSV."""

    def __init__(self, fmt: str, header, out=None):
        self.fmt = fmt
        self.header = tuple(header)
        self.out = out or sys.stdout
        self._csv = None

    def row(self, d: dict) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps(d, separators=(",", ":")) + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.writer(self.out, lineterminator="\n")
                self._csv.writerow(self.header)
            self._csv.writerow([_fmt_value(d.get(k)) for k in self.header])
        else:
            self.out.write(" ".join(f"{k}={_fmt_value(d.get(k))}" for k in self.header) + "\n")


# ---------------------------------------------------------------- commands


def cmd_totient(args) -> int:
    n = args.n
    if not 1 <= n < MAX_FACTOR:
        raise UsageError("n must satisfy 1 <= n < 2^64")
    f = factorize(n)
    Emitter(args.format, TOTIENT_HEADER).row(
        {"n": n, "phi": euler_phi(f), "s2": schemmel_s2(f), "omega": omega(f), "squarefree": is_squarefree(f)}
    )
    return EXIT_OK


def cmd_check(args) -> int:
    n = args.n
    if not 2 <= n < MAX_FACTOR:
        raise UsageError("n must satisfy 2 <= n < 2^64")
    rec = classify(n)
    Emitter(args.format, RECORD_FIELDS).row(vars(rec))
    return EXIT_WITNESS if rec.is_deaconescu or rec.is_lehmer else EXIT_OK


def cmd_bound(args) -> int:
    k = args.k
    if k < 1:
        raise UsageError("K must be >= 1")
    value = bounds.deaconescu_upper_bound(k)
    e1, e2 = bounds.upper_bound_exponents(k)
    expr = f"2^{e1} - 2^{e2}"
    if args.format == "human":
        print(f"{expr} = {value}")
    else:
        Emitter(args.format, BOUND_HEADER).row({"k": k, "expr": expr, "value": value})
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = verify.run_suite(args.suite, args.limit)
    em = Emitter(args.format, VERIFY_HEADER)
    for c in checks:
        if args.format == "human":
            print(c.line())
        else:
            em.row({"check": c.name, "passed": c.passed, "detail": c.detail})
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"first failing check: {failed[0].name}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _base_config(args) -> dict:
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            return json.load(fh)
    return {}


def _emit_report(args, report) -> int:
    d = report.to_dict()
    if args.format == "json":
        print(report.to_json())
    else:
        flat = {k: d[k] for k in REPORT_HEADER if k not in ("witnesses", "lehmer_witnesses")}
        flat["witnesses"] = len(report.witnesses)
        flat["lehmer_witnesses"] = len(report.lehmer_witnesses)
        flat["elapsed_seconds"] = round(report.elapsed_seconds, 3)
        Emitter(args.format, REPORT_HEADER).row(flat)
        for w in report.witnesses + report.lehmer_witnesses:
            print("WITNESS " + w.to_json(), file=sys.stderr)
    return EXIT_WITNESS if report.witness_count else EXIT_OK


def _config_from(args, mode: str) -> SearchConfig:
    d = _base_config(args)
    d.setdefault("mode", mode)
    if d["mode"] != mode:
        raise UsageError(f"config file is for mode {d['mode']!r}, command needs {mode!r}")
    overrides = {
        "limit": getattr(args, "limit", None),
        "k_range": getattr(args, "k", None),
        "m_candidates": getattr(args, "m", None),
        "n_cap": getattr(args, "n_cap", None),
        "prime_pool_limit": getattr(args, "pool", None),
        "worker_count": getattr(args, "workers", None),
        "checkpoint_path": getattr(args, "checkpoint", None),
        "checkpoint_every": getattr(args, "checkpoint_every", None),
    }
    d.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return SearchConfig.from_dict(d)
    except (TypeError, ValueError) as e:
        raise UsageError(f"bad config: {e}") from None


def _parse_k(text: str):
    parts = text.replace("..", ":").split(":")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad K range {text!r}") from None
    if len(vals) == 1:
        return [vals[0], vals[0]]
    if len(vals) == 2:
        return vals
    raise argparse.ArgumentTypeError(f"bad K range {text!r}")


def _parse_m(text: str):
    if text.strip().lower() == "all":
        return "all"
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multiplier list {text!r}") from None


def cmd_scan(args) -> int:
    config = _config_from(args, "exhaustive")
    if args.records:
        out = sys.stdout if args.records == "-" else open(args.records, "w", encoding="utf-8")
        try:
            for rec in classify_range(2, config.limit):
                out.write(rec.to_json() + "\n")
        finally:
            if out is not sys.stdout:
                out.close()
    report = run(config, stop_at=args.stop_at)
    return _emit_report(args, report)


def cmd_search(args) -> int:
    config = _config_from(args, "dfs")
    report = run(config, stop_at=args.stop_at)
    return _emit_report(args, report)


def cmd_resume(args) -> int:
    token = read_checkpoint(args.checkpoint_file)
    if args.config:
        config = SearchConfig.from_dict(_base_config(args))
    elif "config" in token:
        config = SearchConfig.from_dict(token["config"])
    else:
        raise UsageError("checkpoint carries no config; pass --config")
    config = replace(config, checkpoint_path=args.checkpoint_file)
    if args.workers:
        config = replace(config, worker_count=args.workers)
    partial = validate_checkpoint(token, config)
    report = run(config, initial=partial, stop_at=args.stop_at)
    return _emit_report(args, report)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes for scan/search")
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON search config; flags override it")

    p = argparse.ArgumentParser(prog="deaconescu", description=__doc__, parents=[common],
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("totient", parents=[common], help="phi, S2, omega and squarefreeness of n")
    s.add_argument("n", type=_natural)
    s.set_defaults(func=cmd_totient)

    s = sub.add_parser("check", parents=[common], help="classification record for n")
    s.add_argument("n", type=_natural)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bound", parents=[common], help="upper bound for a Deaconescu number with K prime factors")
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=(*verify.SUITES, "all"))
    s.add_argument("--limit", type=_natural, default=None,
                   help="range limit (oracle, lemma21, thm11) or instance count (nielsen, thm12, thm13)")
    s.set_defaults(func=cmd_verify)

    def search_flags(s):
        s.add_argument("--checkpoint", default=None, help="checkpoint file (written atomically)")
        s.add_argument("--checkpoint-every", type=_natural, default=None)
        s.add_argument("--stop-at", type=_natural, default=None, help="stop at the first cursor >= this")

    s = sub.add_parser("scan", parents=[common], help="exhaustive sieve scan of n <= limit")
    s.add_argument("--limit", type=_natural, default=None)
    s.add_argument("--records", default=None, help="also write every record as JSON lines ('-' for stdout)")
    search_flags(s)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("search", parents=[common], help="pruned DFS over odd prime tuples")
    s.add_argument("--k", type=_parse_k, default=None, help="K or K_lo:K_hi")
    s.add_argument("--m", type=_parse_m, default=None, help="comma list of odd multipliers >= 3, or 'all'")
    s.add_argument("--pool", type=_natural, default=None, help="prime pool limit")
    s.add_argument("--n-cap", type=_natural, default=None)
    search_flags(s)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("resume", parents=[common], help="continue a checkpointed scan or search")
    s.add_argument("checkpoint_file")
    s.add_argument("--stop-at", type=_natural, default=None)
    s.set_defaults(func=cmd_resume)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("format", "human"), ("workers", None), ("config", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except CheckpointMismatchError as e:
        print(f"checkpoint mismatch: {e}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
