"""Command-line front end.

Subcommands: ``fan`` (validate a fan, print charts), ``gram`` (pairing
matrix), ``cup`` (degree-zero structure constants) and ``verify``
(verification suites).  Exit status: 0 all pass, 1 verification failure or
invalid fan geometry, 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import symfun
from .exactnum import DEFAULT_Q_ORDER
from .hilb import nakajima_class, pairing_hilb, structure_constants
from .orb import orb_class, orb_pairing, orb_structure_constants
from .partitions import enumerate_multipartitions
from .toric import FanError, NonSmoothConeError, ToricSurface, load_fan, validate_smooth
from .verify import ORACLE_HARD_CAP, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    fan: str = "c2"
    n: int = 1
    suites: list[str] = field(default_factory=list)
    q_order: int = DEFAULT_Q_ORDER
    oracle_bound: int = 6
    cache: str | None = None
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be at least 1")
        if not 1 <= self.oracle_bound <= ORACLE_HARD_CAP:
            raise InputError(f"oracle bound must lie in 1..{ORACLE_HARD_CAP}")
        if self.q_order < 0:
            raise InputError("q-order must be nonnegative")
        if self.fmt not in ("json", "csv", "text"):
            raise InputError(f"unknown format {self.fmt!r}")
        for s in self.suites:
            if s not in SUITES:
                raise InputError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")


def _surface(config: RunConfig) -> ToricSurface:
    try:
        return ToricSurface.from_fan(load_fan(config.fan), name=config.fan)
    except FanError as exc:
        raise InputError(str(exc)) from None


def _emit(config: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _label(lab) -> str:
    return json.dumps(lab, separators=(",", ":"))


def cmd_fan_validate(config: RunConfig) -> int:
    try:
        fan = load_fan(config.fan)
        charts = validate_smooth(fan)
    except NonSmoothConeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except FanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    surface = ToricSurface.from_fan(fan, name=config.fan)
    rows = [{"fixed_point": c.fixed_point_id, "cone": list(fan.cones[c.cone_index]),
             "L": str(c.weight_L), "R": str(c.weight_R)} for c in charts]
    if config.fmt == "json":
        text = json.dumps({"fan": config.fan, "s": len(rows), "compact": surface.compact, "charts": rows}, indent=1)
    elif config.fmt == "csv":
        text = _csv([["fixed_point", "cone", "L", "R"]] +
                     [[r["fixed_point"], _label(r["cone"]), r["L"], r["R"]] for r in rows])
    else:
        lines = [f"{config.fan}: {len(rows)} chart(s), {'compact' if surface.compact else 'non-compact'}"]
        lines += [f"x{r['fixed_point']}  cone {r['cone']}  L = {r['L']}  R = {r['R']}" for r in rows]
        text = "\n".join(lines)
    _emit(config, text)
    return EXIT_OK


def cmd_gram(config: RunConfig, side: str) -> int:
    surface = _surface(config)
    labels = enumerate_multipartitions(config.n, surface.s)
    if side == "orb":
        classes = [orb_class(surface, lab) for lab in labels]
        pair = orb_pairing
    else:
        classes = [nakajima_class(surface, lab) for lab in labels]
        pair = pairing_hilb
    matrix = [[str(pair(a, b)) for b in classes] for a in classes]
    if config.fmt == "json":
        text = json.dumps({"side": side, "basis": "orb_fixed" if side == "orb" else "nakajima",
                           "labels": [lab.to_json() for lab in labels], "matrix": matrix}, indent=1)
    elif config.fmt == "csv":
        text = _csv([["label"] + [_label(lab.to_json()) for lab in labels]] +
                    [[_label(lab.to_json())] + row for lab, row in zip(labels, matrix)])
    else:
        text = "\n".join(f"{_label(lab.to_json())}: {row[k]}" for k, (lab, row) in enumerate(zip(labels, matrix)))
        off = sum(1 for i, row in enumerate(matrix) for j, v in enumerate(row) if i != j and v != "0")
        text += f"\noff-diagonal nonzero entries: {off}"
    _emit(config, text)
    return EXIT_OK


def cmd_cup(config: RunConfig, side: str = "hilb") -> int:
    surface = _surface(config)
    records = structure_constants(surface, config.n) if side == "hilb" else orb_structure_constants(surface, config.n)
    if config.fmt == "json":
        text = json.dumps(records, indent=1)
    elif config.fmt == "csv":
        text = _csv([["basis", "lhs", "mhs", "rhs", "value"]] +
                    [[r["basis"], _label(r["lhs"]), _label(r["mhs"]), _label(r["rhs"]), r["value"]] for r in records])
    else:
        text = "\n".join(f"<{_label(r['lhs'])}, {_label(r['mhs'])}, {_label(r['rhs'])}> = {r['value']}"
                         for r in records)
    _emit(config, text)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    surface = _surface(config)
    suites = config.suites or list(SUITES)
    results = {}
    for name in suites:
        results[name] = run_suite(name, surface, config.n, oracle_bound=config.oracle_bound, q_order=config.q_order)
    failed = any(not r.ok for r in results.values())
    if config.fmt == "json":
        payload = {"fan": config.fan, "n": config.n, "status": "fail" if failed else "pass",
                   "suites": {name: {"pass": r.count("pass"), "fail": r.count("fail"),
                                     "skipped": r.count("skipped"), "records": r.records}
                              for name, r in results.items()}}
        text = json.dumps(payload, indent=1)
    elif config.fmt == "csv":
        rows = [["suite", "check", "labels", "lhs", "rhs", "status"]]
        for name, r in results.items():
            for rec in r.records:
                labels = rec.get("label", rec.get("labels"))
                rows.append([name, rec["check"], _label(labels), rec["lhs"], rec["rhs"], rec["status"]])
        text = _csv(rows)
    else:
        lines = []
        for name, r in results.items():
            status = "FAIL" if not r.ok else "pass"
            lines.append(f"{name}: {status} ({r.count('pass')} pass, {r.count('fail')} fail, "
                         f"{r.count('skipped')} skipped)")
            for rec in r.failures()[:10]:
                lines.append(f"  fail {rec['check']} {rec.get('label', rec.get('labels'))}: "
                             f"{rec['lhs']} != {rec['rhs']}")
        text = "\n".join(lines)
    _emit(config, text)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fan", default="c2", help="builtin name (c2, p2, p1xp1, hirzebruch:a) or fan JSON file")
    common.add_argument("-n", type=int, default=1, help="number of points")
    common.add_argument("--q-order", type=int, default=DEFAULT_Q_ORDER, help="q-series truncation order")
    common.add_argument("--oracle-bound", type=int, default=6, help="size bound for brute-force oracles (max 8)")
    common.add_argument("--cache", default=None, help="Jack cache directory (default: $%s)" % symfun.CACHE_ENV)
    common.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", default=None, help="write output to this file")

    parser = argparse.ArgumentParser(prog="symhilb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("fan", parents=[common], help="validate a fan and print its charts")
    g = sub.add_parser("gram", parents=[common], help="pairing matrix on the orbifold or Hilbert side")
    g.add_argument("--side", choices=["orb", "hilb"], default="hilb")
    c = sub.add_parser("cup", parents=[common], help="degree-zero structure constants")
    c.add_argument("--side", choices=["orb", "hilb"], default="hilb")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", default=[],
                   help="suite name, repeatable or comma separated: " + ", ".join(SUITES))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    suites = [s.strip() for item in getattr(args, "suite", []) for s in item.split(",") if s.strip()]
    try:
        config = RunConfig(fan=args.fan, n=args.n, suites=suites, q_order=args.q_order,
                           oracle_bound=args.oracle_bound, cache=args.cache, fmt=args.fmt, out=args.out)
        cache = config.cache or os.environ.get(symfun.CACHE_ENV)
        symfun.set_default_store(symfun.JackStore(cache))
        if args.command == "fan":
            return cmd_fan_validate(config)
        if args.command == "gram":
            return cmd_gram(config, args.side)
        if args.command == "cup":
            return cmd_cup(config, args.side)
        return cmd_verify(config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
