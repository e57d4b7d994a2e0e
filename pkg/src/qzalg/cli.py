"""Command-line interface: ``qzalg <verb> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from qzalg import kernels
from qzalg.harness import (ConfigError, character_table, character_text, load_config, reports_from_json,
                           reports_json, reports_text, resolve_workers, run_suite, suite_ok)
from qzalg.reps import ConstructionError, list_constructions
from qzalg.scalar import ScalarDomainError, as_fraction, qk_power_series

DEFAULT_REPORT = "qzalg-report.json"


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def cmd_verify(args) -> int:
    try:
        cfg = load_config(args.config)
        workers = args.workers if args.workers is not None else resolve_workers(cfg)
    except ConfigError as exc:
        for path, msg in exc.errors:
            print(f"config error at {path}: {msg}", file=sys.stderr)
        return 2
    reports = run_suite(cfg, workers)
    wall = args.wall_clock or cfg.get("wall_clock", False)
    js = reports_json(reports, wall)
    text = reports_text(reports, cfg.get("name"))
    out = cfg.get("output", {})
    json_path = args.json_out or out.get("json")
    text_path = args.text_out or out.get("text")
    if json_path:
        _write(json_path, js)
    if text_path:
        _write(text_path, text)
    sys.stdout.write(js if args.format == "json" else text)
    return 0 if suite_ok(reports) else 1


def cmd_list(args) -> int:
    items = list_constructions()
    if args.format == "json":
        print(json.dumps([{"id": cid, "description": doc} for cid, doc in items], indent=2))
    else:
        for cid, doc in items:
            print(f"{cid:8} {doc}")
    return 0


def cmd_character(args) -> int:
    try:
        params = json.loads(args.params) if args.params else {}
        records = character_table(args.construction, params, args.max_degree)
    except (ConstructionError, json.JSONDecodeError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(records, indent=2))
    else:
        sys.stdout.write(character_text(records, f"{args.construction} {params or ''}".strip()))
    return 0


def cmd_expand(args) -> int:
    try:
        a, k = as_fraction(args.a), as_fraction(args.k)
        exp_ = qk_power_series(a, k, args.order, method="exp")
        prod = qk_power_series(a, k, args.order, method="product")
    except (ValueError, ZeroDivisionError, ScalarDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    agree = all(exp_.coeff(n) == prod.coeff(n) for n in range(args.order + 1))
    if args.format == "json":
        print(json.dumps({"a": str(a), "k": str(k), "order": args.order,
                          "exp": [str(exp_.coeff(n)) for n in range(args.order + 1)],
                          "product": [str(prod.coeff(n)) for n in range(args.order + 1)],
                          "agree": agree}, indent=2))
    else:
        def par(x):
            return f"({x})" if x.denominator != 1 else str(x)
        print(f"(1 - z)^({par(a)}/{par(k)}) in base q^{par(2 * k)}, through z^{args.order}")
        for name, s in (("exponential", exp_), ("product", prod)):
            print(f"{name}:")
            for n in range(args.order + 1):
                print(f"  z^{n}: {s.coeff(n)}")
        print("formulas agree" if agree else "formulas DISAGREE")
    return 0 if agree else 1


def cmd_report(args) -> int:
    try:
        with open(args.input) as fh:
            reports = reports_from_json(fh.read())
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: cannot read report {args.input}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(reports_json(reports, any(r.seconds for r in reports)) if args.format == "json"
                     else reports_text(reports))
    return 0 if suite_ok(reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qzalg", description="Exact verification of vertex-operator "
                                "representations of quantum affine algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 (kernels: {kernels.BACKEND})")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--config", required=True, help="suite configuration (JSON)")
    v.add_argument("--workers", type=int, help="worker processes (overrides config and environment)")
    v.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
    v.add_argument("--json-out", help="write the JSON report here")
    v.add_argument("--text-out", help="write the text summary here")
    v.add_argument("--wall-clock", action="store_true", help="include seconds in the JSON timing field")
    v.set_defaults(func=cmd_verify)

    lc = sub.add_parser("list-constructions", help="list the registered constructions")
    lc.add_argument("--format", choices=("text", "json"), default="text")
    lc.set_defaults(func=cmd_list)

    c = sub.add_parser("character", help="graded dimensions of V, K(k) and the vacuum space")
    c.add_argument("--construction", required=True)
    c.add_argument("--max-degree", type=int, required=True, help="depth of the degree window")
    c.add_argument("--params", help='construction parameters as JSON, e.g. \'{"type_": "A", "rank": 2}\'')
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_character)

    e = sub.add_parser("expand-series", help="(1 - z)^{a/k} by the exponential and the product formula")
    e.add_argument("--a", required=True, help="rational p/q")
    e.add_argument("--k", required=True, help="rational p/q, nonzero")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_expand)

    r = sub.add_parser("report", help="render a saved JSON report")
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.add_argument("--input", default=DEFAULT_REPORT, help=f"report file (default {DEFAULT_REPORT})")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
