"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 precision or depth exhausted,
4 degenerate digit set (record still written), 5 failed precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from . import errors
from .beta_core import expand, expansion_of_one
from .cantor_dim import DigitSet, dimension_curve, hausdorff_dimension
from .field import Beta, parse_rational
from .highreal import HighReal
from .local_ifs import (InQ, NotInQ, build_B, build_C_approx, difference_points,
                        invariance_check, member_Q)
from .word_automata import count_admissible

ENV_PREFIX = "BETACANTOR_"

EXIT_OK, EXIT_PARSE, EXIT_DEPTH, EXIT_DEGENERATE, EXIT_PRECONDITION = 0, 2, 3, 4, 5


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    max_depth: int = 4096
    tol: str = "1e-12"
    output_format: str = "json"

    def __post_init__(self):
        if self.precision_bits < 64:
            raise errors.ParseError("precision_bits must be at least 64")
        if self.max_depth < 1:
            raise errors.ParseError("max_depth must be positive")
        if self.tol_fraction <= 0:
            raise errors.ParseError("tol must be positive")
        if self.output_format not in ("json", "csv"):
            raise errors.ParseError("output_format must be json or csv")

    @property
    def tol_fraction(self) -> Fraction:
        try:
            return parse_rational(self.tol)
        except (ValueError, ZeroDivisionError) as exc:
            raise errors.ParseError(f"bad tolerance {self.tol!r}") from exc

    def updated(self, values: dict) -> "RunConfig":
        known = {f.name: f.type for f in fields(self)}
        kw = {}
        for key, raw in values.items():
            key = key.strip().lower().replace("-", "_")
            if key not in known:
                raise errors.ParseError(f"unknown configuration key {key!r}")
            try:
                kw[key] = int(raw) if key in ("precision_bits", "max_depth") else str(raw).strip()
            except ValueError as exc:
                raise errors.ParseError(f"bad value for {key}: {raw!r}") from exc
        return replace(self, **kw)


def read_config_file(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise errors.ParseError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def load_config(args) -> RunConfig:
    """Defaults, then environment, then config file, then flags."""
    cfg = RunConfig()
    env = {f.name: os.environ[ENV_PREFIX + f.name.upper()] for f in fields(RunConfig)
           if ENV_PREFIX + f.name.upper() in os.environ}
    if "BETACANTOR_PRECISION" in os.environ:
        env.setdefault("precision_bits", os.environ["BETACANTOR_PRECISION"])
    cfg = cfg.updated(env)
    if args.config:
        cfg = cfg.updated(read_config_file(args.config))
    flags = {"precision_bits": args.precision_bits, "max_depth": args.max_depth, "tol": args.tol,
             "output_format": args.format}
    return cfg.updated({k: v for k, v in flags.items() if v is not None})


# serialisation helpers

def _num(x: HighReal) -> dict:
    return x.to_json()


def _beta_record(beta: Beta, prec: int) -> dict:
    rec = {"spec": str(beta)}
    rec.update(_num(beta.enclosure(prec)))
    return rec


def _emit_json(out, record):
    out.write(json.dumps(record) + "\n")


def _emit_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _fmt(x) -> str:
    if isinstance(x, HighReal):
        return x.to_json()["mid"]
    return "" if x is None else str(x)


def _rad(x) -> str:
    return x.to_json()["rad"] if isinstance(x, HighReal) else ""


# commands

def cmd_expand(args, cfg: RunConfig, out) -> int:
    beta = Beta.parse(args.beta)
    x = parse_rational(args.x)
    digits = expand(beta, x, args.n, cfg.precision_bits)
    if cfg.output_format == "csv":
        _emit_csv(out, ["beta", "x", "digits"], [[str(beta), str(x), " ".join(map(str, digits))]])
    else:
        _emit_json(out, {"beta": _beta_record(beta, cfg.precision_bits), "x": str(x),
                         "digits": list(digits)})
    return EXIT_OK


def _dimension_record(res, prefix: int) -> dict:
    rec = {
        "beta": _beta_record(res.beta, res.s.prec),
        "theta": list(res.theta.thetas),
        "z": list(res.z.z[:prefix]) if res.z else None,
        "z_period": list(res.z.period) if res.z and res.z.period else None,
        "omega": list(res.omega.omega[:prefix]) if res.omega else None,
        "alpha": _num(res.alpha.alpha) if res.alpha.alpha is not None else None,
        "s": _num(res.s),
        "truncation": res.alpha.truncation,
        "degenerate": res.degenerate,
    }
    return rec


def cmd_dimension(args, cfg: RunConfig, out) -> int:
    beta = Beta.parse(args.beta)
    theta = DigitSet.parse(args.theta)
    res = hausdorff_dimension(beta, theta, cfg.tol_fraction, cfg.precision_bits, cfg.max_depth)
    rec = _dimension_record(res, args.prefix)
    if cfg.output_format == "csv":
        a = res.alpha.alpha
        _emit_csv(out, ["beta", "theta", "s_mid", "s_rad", "alpha_mid", "alpha_rad", "degenerate"],
                  [[str(beta), str(theta), _fmt(res.s), _rad(res.s), _fmt(a), _rad(a),
                    int(res.degenerate)]])
    else:
        _emit_json(out, rec)
    return EXIT_DEGENERATE if res.degenerate else EXIT_OK


CURVE_COLUMNS = ["beta", "beta_float", "s_mid", "s_rad", "alpha_mid", "alpha_rad",
                 "degenerate", "plateau", "error"]


def cmd_curve(args, cfg: RunConfig, out) -> int:
    theta = DigitSet.parse(args.theta)
    lo, hi = parse_rational(args.lo), parse_rational(args.hi)
    rows = dimension_curve(theta, lo, hi, args.samples, cfg.tol_fraction, cfg.precision_bits)
    table = []
    for r in rows:
        res = r.result
        s = res.s if res else None
        a = res.alpha.alpha if res else None
        table.append([str(r.beta), repr(float(r.beta)), _fmt(s), _rad(s), _fmt(a), _rad(a),
                      "" if res is None else int(res.degenerate),
                      "" if r.plateau is None else r.plateau, r.error or ""])
    fmt = args.format or "csv"
    target = open(args.out, "w", encoding="utf-8", newline="") if args.out else out
    try:
        if fmt == "csv":
            _emit_csv(target, CURVE_COLUMNS, table)
        else:
            _emit_json(target, [dict(zip(CURVE_COLUMNS, row)) for row in table])
    finally:
        if args.out:
            target.close()
    return EXIT_OK if any(r.result is not None for r in rows) else EXIT_DEPTH


def _union_record(u, prec: int) -> dict:
    rec = {"intervals": [[_num(a), _num(b)] for a, b in u.enclosures(prec)]}
    if u.beta.is_rational:
        rec["exact"] = [[str(a), str(b)] for a, b in u.to_fractions()]
    return rec


def cmd_localifs(args, cfg: RunConfig, out) -> int:
    beta = Beta.parse(args.beta)
    prec = cfg.precision_bits
    rec = {"beta": _beta_record(beta, prec), "action": args.action, "depth": args.depth}
    if args.action == "build-b":
        rec.update(_union_record(build_B(beta, args.depth), prec))
    elif args.action == "build-c":
        rec.update(_union_record(build_C_approx(expansion_of_one(beta), args.depth, prec), prec))
    elif args.action == "check":
        b = beta.enclosure(prec)
        bound = b ** (-args.depth) * b / (b - 1)
        dB = invariance_check(build_B(beta, args.depth), prec=prec)
        dC = invariance_check(build_C_approx(expansion_of_one(beta), args.depth, prec), prec=prec)
        rec.update({"bound": _num(bound), "distance_B": _num(dB), "distance_C": _num(dC),
                    "B_within": dB.certainly_le(bound), "C_within": dC.certainly_le(bound)})
    elif args.action == "q":
        v = member_Q(expansion_of_one(beta, max(64, args.depth)))
        if isinstance(v, InQ):
            rec.update({"verdict": "InQ", "eps": list(v.eps)})
        elif isinstance(v, NotInQ):
            rec.update({"verdict": "NotInQ", "position": v.position, "digit": v.digit})
        else:
            rec.update({"verdict": "UndecidedAtDepth", "at_depth": v.depth})
    else:
        pts = difference_points(expansion_of_one(beta), args.depth)
        rec["points"] = [_num(p.enclosure(prec)) for p in pts]
    if cfg.output_format == "csv":
        flat = [[k, json.dumps(v)] for k, v in rec.items()]
        _emit_csv(out, ["field", "value"], flat)
    else:
        _emit_json(out, rec)
    return EXIT_OK


COUNT_COLUMNS = ["k", "N_k", "base", "lower_mid", "lower_rad", "upper_mid", "upper_rad", "within"]


def cmd_count(args, cfg: RunConfig, out) -> int:
    beta = Beta.parse(args.beta)
    prec = cfg.precision_bits
    if args.k > cfg.max_depth:
        raise errors.OutOfRange(f"k = {args.k} exceeds max depth {cfg.max_depth}")
    one = expansion_of_one(beta, max(64, 3 * args.k))
    if args.theta:
        theta = DigitSet.parse(args.theta)
        res = hausdorff_dimension(beta, theta, cfg.tol_fraction, prec, cfg.max_depth)
        base, base_name = res.alpha.alpha, "alpha"
        digits, pad = theta.thetas, theta.low
    else:
        base, base_name = beta.enclosure(prec), "beta"
        digits, pad = None, 0
    rows = []
    for k in range(1, args.k + 1):
        n = count_admissible(one, k, digits, pad)
        lower, upper = base ** k, base ** (k + 1) / (base - 1)
        within = not lower.certainly_gt(n) and not upper.certainly_lt(n)
        rows.append([k, n, base_name, _fmt(lower), _rad(lower), _fmt(upper), _rad(upper), within])
    if cfg.output_format == "csv":
        _emit_csv(out, COUNT_COLUMNS, [[*r[:-1], int(r[-1])] for r in rows])
    else:
        _emit_json(out, {"beta": _beta_record(beta, prec), "theta": args.theta,
                         "rows": [{"k": r[0], "N_k": r[1], "base": r[2],
                                   "lower": {"mid": r[3], "rad": r[4]},
                                   "upper": {"mid": r[5], "rad": r[6]}, "within": r[7]}
                                  for r in rows]})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, help="working precision in bits (>= 64)")
    common.add_argument("--max-depth", type=int, help="maximum expansion / truncation depth")
    common.add_argument("--tol", help="target enclosure width, e.g. 1e-12")
    common.add_argument("--format", choices=("json", "csv"), help="output format")
    common.add_argument("--config", help="key=value configuration file")

    p = argparse.ArgumentParser(prog="betacantor",
                                description="Dimensions of digit-restricted beta-expansion sets.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="greedy digits of x in base beta")
    e.add_argument("--beta", required=True)
    e.add_argument("--x", required=True)
    e.add_argument("--n", type=int, required=True)

    d = sub.add_parser("dimension", parents=[common], help="Hausdorff dimension of C_{beta;theta}")
    d.add_argument("--beta", required=True)
    d.add_argument("--theta", required=True)
    d.add_argument("--prefix", type=int, default=24, help="number of z / omega digits to print")

    c = sub.add_parser("curve", parents=[common], help="dimension on a uniform beta grid")
    c.add_argument("--theta", required=True)
    c.add_argument("--lo", required=True)
    c.add_argument("--hi", required=True)
    c.add_argument("--samples", type=int, required=True)
    c.add_argument("--out", help="write the table to this file")

    li = sub.add_parser("localifs", parents=[common], help="local IFS sets for 2 < beta <= 3")
    li.add_argument("--beta", required=True)
    li.add_argument("--depth", type=int, default=8)
    li.add_argument("action", choices=("build-b", "build-c", "check", "q", "diff"))

    n = sub.add_parser("count", parents=[common], help="admissible word counts with growth bounds")
    n.add_argument("--beta", required=True)
    n.add_argument("--k", type=int, required=True, help="largest word length")
    n.add_argument("--theta", help="restrict digits to this set")
    return p


COMMANDS = {"expand": cmd_expand, "dimension": cmd_dimension, "curve": cmd_curve,
            "localifs": cmd_localifs, "count": cmd_count}

_DEPTH_ERRORS = (errors.AmbiguousFloor, errors.DepthExhausted, errors.TolUnreachable,
                 errors.NoConvergence, errors.SimplicityUndecided)


def _fail(err, code: int, message) -> int:
    err.write(json.dumps({"error": type(message).__name__, "message": str(message)}) + "\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        cfg = load_config(args)
        code = COMMANDS[args.command](args, cfg, buf)
    except errors.ParseError as exc:
        return _fail(err, EXIT_PARSE, exc)
    except _DEPTH_ERRORS as exc:
        return _fail(err, EXIT_DEPTH, exc)
    except errors.Degenerate as exc:
        return _fail(err, EXIT_DEGENERATE, exc)
    except (errors.BetaError, ValueError) as exc:
        return _fail(err, EXIT_PRECONDITION, exc)
    except OSError as exc:
        return _fail(err, EXIT_PRECONDITION, exc)
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
