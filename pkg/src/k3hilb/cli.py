"""Command-line interface: ``k3hilb <command> ...``.

Exit codes: 0 success (``birational``: birational), 1 not birational,
2 invalid input or I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any

from . import __version__
from .birationality import (
    Birational,
    NotBirational,
    birational_verdicts,
    hilbert_birational,
    never_birational_certificate,
    pairwise_birationality,
)
from .cones import N_EQ_3_CAVEAT, SdnElement, classify_second_wall
from .mukai import MukaiVector, SurfaceParams
from .oracles import run_selftest
from .partners import PartnerClass, count_fm_partners, enumerate_partners
from .pell import GenPellOutcome

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_NO, EXIT_ERR = 0, 1, 2
MAX_SAFE_INT = 2**53
CSV_COLUMNS = ["d", "n", "N", "B", "wall_type", "partner_s", "partner_t", "birational",
               "witness_r", "witness_c", "witness_x"]


class UsageError(Exception):
    pass


def _num(k: int) -> int | str:
    """Exact JSON number; integers beyond 2^53 become decimal strings."""
    return k if -MAX_SAFE_INT < k < MAX_SAFE_INT else str(k)


def _vec(v: MukaiVector | None) -> list | None:
    return None if v is None else [_num(v.r), _num(v.c), _num(v.x)]


def _outcome(o: GenPellOutcome | None) -> dict | None:
    if o is None:
        return None
    out: dict[str, Any] = {"A": _num(o.A), "B": _num(o.B)}
    for key, sign in (("plus", 1), ("minus", -1)):
        b = o.branch(sign)
        if b.solvable:
            out[key] = {"solvable": True, "u": _num(b.u), "v": _num(b.v)}
        else:
            out[key] = {"solvable": False, "modulus": b.modulus}
    return out


def _verdict(v: Birational | NotBirational) -> dict:
    if isinstance(v, Birational):
        return {"birational": True, "witness": _vec(v.witness), "p": _num(v.p), "q": _num(v.q),
                "equation": v.equation_used, "sign": v.sign}
    return {"birational": False, "equation1": _outcome(v.outcome1),
            "equation2": _outcome(v.outcome2), "reason": v.reason or None}


def _element(e: SdnElement | None) -> dict | None:
    if e is None:
        return None
    return {"a": _num(e.a), "sigma": e.sigma, "b": _num(e.b), "tau": e.tau, "sign": e.sign}


def dump_json(command: str, inputs: dict, result: dict) -> str:
    env = {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs,
           "result": result}
    return json.dumps(env, sort_keys=True, indent=2, ensure_ascii=False)


def _params(args) -> SurfaceParams:
    if args.degree is not None:
        if args.degree <= 0 or args.degree % 2:
            raise UsageError(f"--degree must be a positive even integer, got {args.degree}")
        return SurfaceParams(args.degree // 2)
    if args.half_degree is None:
        raise UsageError("one of --half-degree/-d or --degree is required")
    if args.half_degree < 1:
        raise UsageError(f"--half-degree must be positive, got {args.half_degree}")
    return SurfaceParams(args.half_degree)


def _partner(args, params: SurfaceParams) -> PartnerClass:
    try:
        cls = PartnerClass.of(args.s, args.t)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if cls.d != params.d:
        raise UsageError(f"{cls} is not a partner class for d={params.d} (need s*t = d)")
    return cls


def _parse_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"ranges are written a..b, got {text!r}") from None


def _mark(b: bool) -> str:
    return "✓" if b else "✗"


def cmd_partners(args) -> int:
    params = _params(args)
    classes = enumerate_partners(params.d)
    N = count_fm_partners(params.d)
    if args.json:
        print(dump_json("partners", {"d": params.d},
                        {"N": N, "classes": [[c.s, c.t] for c in classes]}))
    else:
        print(f"d={params.d} (degree {params.degree}): N={N}")
        for c in classes:
            note = "  (X itself)" if c.is_trivial else ""
            print(f"  {c}  M(s,H,t) = M{c.canonical_vector()}{note}")
    return EXIT_OK


def cmd_birational(args) -> int:
    params = _params(args)
    cls = _partner(args, params)
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    verdict = hilbert_birational(params, cls, args.n)
    cert = never_birational_certificate(cls) if args.explain else None
    if args.json:
        result = _verdict(verdict)
        if args.explain:
            result["never_certificate"] = None if cert is None else [cert.modulus1, cert.modulus2]
        print(dump_json("birational", {"d": params.d, "s": cls.s, "t": cls.t, "n": args.n},
                        result))
    else:
        head = f"X^[{args.n}] vs M{cls.canonical_vector()}^[{args.n}] (d={params.d}):"
        if isinstance(verdict, Birational):
            print(f"{head} birational")
            print(f"  witness {verdict.witness} with p={verdict.p}, q={verdict.q}, "
                  f"equation {verdict.equation_used}, pairing {verdict.sign:+d}")
        else:
            print(f"{head} not birational")
            if verdict.reason:
                print(f"  {verdict.reason}")
            if args.explain:
                for i, o in ((1, verdict.outcome1), (2, verdict.outcome2)):
                    if o is None:
                        continue
                    mods = [o.branch(e).modulus for e in (1, -1)]
                    print(f"  equation {i}: {o.A} p^2 - {o.B} q^2 = +-1 unsolvable "
                          f"(moduli +1: {mods[0]}, -1: {mods[1]})")
                if cert is not None:
                    print(f"  never birational for any n: certificate moduli "
                          f"({cert.modulus1}, {cert.modulus2})")
    return EXIT_OK if verdict.birational else EXIT_NO


def cmd_table(args) -> int:
    params = _params(args)
    cls = _partner(args, params)
    if args.n_max < 1:
        raise UsageError(f"--n-max must be >= 1, got {args.n_max}")
    rows = birational_verdicts(params, cls, args.n_max)
    if args.format == "json":
        result = {"rows": [{"n": n, "birational": v.birational,
                            "witness": _vec(getattr(v, "witness", None))} for n, v in rows]}
        print(dump_json("table", {"d": params.d, "s": cls.s, "t": cls.t, "n_max": args.n_max},
                        result))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["n", "birational", "witness_r", "witness_c", "witness_x"])
        for n, v in rows:
            wit = tuple(v.witness) if v.birational else ("", "", "")
            w.writerow([n, str(v.birational).lower(), *wit])
    else:
        print(f"X^[n] vs M{cls.canonical_vector()}^[n], d={params.d}")
        for n, v in rows:
            extra = f"  {v.witness}" if v.birational else ""
            print(f"{n:>4}  {_mark(v.birational)}{extra}")
        print("".join(_mark(v.birational) for _, v in rows))
    return EXIT_OK


def cmd_walls(args) -> int:
    params = _params(args)
    if args.n <= 3:
        raise UsageError(N_EQ_3_CAVEAT)
    rep = classify_second_wall(params, args.n)
    if args.json:
        result = {"wall_type": rep.wall_type.value, "wall_vector": _vec(rep.wall_vector),
                  "N": rep.N, "B": rep.B, "generator": _element(rep.generator),
                  "partner": None if rep.partner is None else [rep.partner.s, rep.partner.t]}
        print(dump_json("walls", {"d": params.d, "n": args.n}, result))
    else:
        print(f"Mov(X^[{args.n}]), d={params.d}: boundary (0,0,1) and {rep.wall_vector}")
        print(f"  second wall: {rep.wall_type.value} ({rep.wall_type.short})")
        if rep.generator is not None:
            g = rep.generator
            print(f"  S_(d,n) generator: P({g.a}*sqrt({g.sigma}), {g.b}*sqrt({g.tau})), "
                  f"det {g.sign:+d}")
        if rep.partner is not None:
            print(f"  Hilbert-Chow partner class {rep.partner}")
        print(f"  B={rep.B} / N={rep.N}")
    return EXIT_OK


def sweep_rows(d_range: range, n_range: range) -> list[list]:
    rows = []
    for d in d_range:
        if d < 1:
            raise UsageError(f"half-degree must be positive, got {d}")
        params = SurfaceParams(d)
        N = count_fm_partners(d)
        for n in n_range:
            if n < 1:
                raise UsageError(f"n must be >= 1, got {n}")
            if n >= 4:
                rep = classify_second_wall(params, n)
                B, wall = rep.B, rep.wall_type.short
            else:
                B, wall = len(pairwise_birationality(params, n)), ""
            for cls in enumerate_partners(d):
                v = hilbert_birational(params, cls, n)
                wit = tuple(v.witness) if v.birational else ("", "", "")
                rows.append([d, n, N, B, wall, cls.s, cls.t, str(v.birational).lower(), *wit])
    return rows


def cmd_sweep(args) -> int:
    rows = sweep_rows(_parse_range(args.d_range), _parse_range(args.n_range))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rows)
    if args.out == "-":
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as e:
        raise UsageError(f"cannot write {args.out}: {e}") from None
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_selftest(args) -> int:
    checks = run_selftest(args.bound)
    for c in checks:
        print(f"[{'PASS' if c.ok else 'FAIL'}] {c.name}" + ("" if c.ok else f": {c.detail}"))
    return EXIT_OK if all(c.ok for c in checks) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3hilb",
        description="Birationality of Hilbert schemes of points on Fourier-Mukai partner K3s.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def degree_opts(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("-d", "--half-degree", type=int, help="d, where H^2 = 2d")
        g.add_argument("--degree", type=int, help="H^2 (even)")

    def class_opts(p):
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("partners", help="list Fourier-Mukai partner classes")
    degree_opts(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_partners)

    p = sub.add_parser("birational", help="decide birationality of X^[n] and Y^[n]")
    degree_opts(p)
    class_opts(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--explain", action="store_true",
                   help="show Pell outcomes and any never-birational certificate")
    p.set_defaults(func=cmd_birational)

    p = sub.add_parser("table", help="birationality for n = 1..n_max")
    degree_opts(p)
    class_opts(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("walls", help="classify the second wall of Mov(X^[n])")
    degree_opts(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("sweep", help="CSV sweep over ranges of d and n")
    p.add_argument("--d-range", required=True, help="a..b (inclusive)")
    p.add_argument("--n-range", required=True, help="c..e (inclusive)")
    p.add_argument("--out", required=True, help="output CSV path, or - for stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selftest", help="run brute-force oracle comparisons")
    p.add_argument("--bound", type=int, default=None,
                   help="scan bound (default: $K3HILB_ORACLE_BOUND or 2000)")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERR if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERR


if __name__ == "__main__":
    sys.exit(main())
