"""Command-line interface: ``traceideal analyze|enumerate|sg|fixtures``.

Exit codes: 0 success, 1 golden mismatch or failed consistency check,
2 parse error, 3 precision error, 4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import ideals as idl
from .enumerate import CapExceeded, EnumerationError, enumerate_overrings, verify_ring
from .lattice import LatticeError
from .local_ring import RingError, parse_ring
from .scalars import FieldError
from .semigroup import NumericalSemigroup, SemigroupError, oversemigroups
from .series import PrecisionError, parse_series_list

SCHEMA = 1

EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_PRECISION = 3
EXIT_CAP = 4


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _emit(obj: Any, as_json: bool, text: str | None = None) -> None:
    if as_json or text is None:
        print(json.dumps(obj, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def _moduli(args) -> dict:
    if not getattr(args, "config", None):
        return {}
    data = json.loads(Path(args.config).read_text())
    return {k: list(v) for k, v in data.get("moduli", {}).items()}


def _modulus_for(args, descriptor: str | None) -> list[int] | None:
    if args.modulus:
        return [int(x) for x in args.modulus.split(",")]
    table = _moduli(args)
    if descriptor and descriptor in table:
        return table[descriptor]
    return None


def _ring(args, text: str):
    field = args.field
    if text.startswith("resext:"):
        mod = _modulus_for(args, text[7:])
    else:
        mod = _modulus_for(args, field)
    if field is None:
        if text.startswith("resext:"):
            field = None
        elif text.startswith("gens:") or text.startswith("sg:"):
            field = "Q"
    try:
        return parse_ring(text, field, modulus=mod, window=args.window)
    except (RingError, FieldError, SemigroupError, ValueError) as exc:
        raise CliError(EXIT_PARSE, "parse", str(exc)) from exc


# -- subcommands --------------------------------------------------------------------


def cmd_analyze(args) -> int:
    R = _ring(args, args.ring)
    out = {"schema": SCHEMA, "invariants": R.invariants(), "ideals": []}
    for gens in args.ideal or []:
        try:
            series = parse_series_list(gens, R.field)
        except ValueError as exc:
            raise CliError(EXIT_PARSE, "parse", str(exc)) from exc
        I = R.ideal(series)
        out["ideals"].append(idl.classify(I, paranoid=args.paranoid).to_dict())
    if args.antistable is not None:
        out["antistable"] = idl.antistable_ring_check(R, args.antistable, paranoid=args.paranoid)
    lines = [f"{k}: {v}" for k, v in out["invariants"].items()]
    for c in out["ideals"]:
        lines.append("")
        lines.extend(f"  {k}: {v}" for k, v in c.items())
    if "antistable" in out:
        lines.append("")
        lines.extend(f"antistable.{k}: {v}" for k, v in out["antistable"].items())
    _emit(out, args.json, "\n".join(lines))
    return 0


def enumeration_payload(R, method: str = "bfs", max_dim: int | None = None, paranoid: bool = False, monomial_only: bool = False, bases: bool = True) -> dict:
    if monomial_only and not R.k.is_finite:
        Y = enumerate_overrings(R, monomial_only=True)
        return {
            "schema": SCHEMA,
            "ring": R.descriptor,
            "field": R.field.descriptor,
            "exhaustive": False,
            "note": "monomial overrings only; non-monomial overrings are not listed",
            "counts": {"Y_monomial": len(Y)},
            "Y": [{"lattice": L.describe()} for L in Y],
        }
    rep = verify_ring(R, method=method, max_dim=max_dim, paranoid=paranoid)
    d = rep.to_dict(bases=bases)
    d["exhaustive"] = True
    return d


def cmd_enumerate(args) -> int:
    R = _ring(args, args.ring)
    if not R.k.is_finite and not args.monomial_only:
        raise CliError(EXIT_PARSE, "usage", f"exhaustive enumeration needs a finite field, got {R.k.descriptor}; pass --monomial-only")
    t0 = time.perf_counter()
    payload = enumeration_payload(
        R, method=args.method, max_dim=args.max_dim, paranoid=args.paranoid,
        monomial_only=args.monomial_only, bases=not args.no_bases,
    )
    elapsed = time.perf_counter() - t0
    print(f"enumeration finished in {elapsed:.3f}s", file=sys.stderr)
    if args.expect:
        expected = json.loads(Path(args.expect).read_text())
        problems = compare(expected.get("expect", expected), payload)
        if problems:
            for p in problems:
                print(json.dumps({"error": "mismatch", "detail": p}), file=sys.stderr)
            return EXIT_MISMATCH
    if "verdicts" in payload:
        summary = [
            f"ring: {payload['ring']} over {payload['field']}",
            f"|X| = {payload['counts']['X']}, |Y| = {payload['counts']['Y']}",
            "X:",
            *(f"  {x['lattice']}" for x in payload["X"]),
            "Y:",
            *(f"  {y['lattice']}" for y in payload["Y"]),
            *(f"{k}: {v}" for k, v in payload["verdicts"].items()),
        ]
    else:
        summary = [f"{y['lattice']}" for y in payload["Y"]]
    _emit(payload, args.json, "\n".join(summary))
    return 0


def cmd_sg(args) -> int:
    try:
        gens = [int(x) for x in args.generators.split(",") if x.strip()]
        S = NumericalSemigroup(gens)
    except (ValueError, SemigroupError) as exc:
        raise CliError(EXIT_PARSE, "parse", str(exc)) from exc
    if args.action == "info":
        info = S.info()
        _emit(info, args.json, "\n".join(f"{k}: {v}" for k, v in info.items()))
    else:
        over = [list(T.minimal_generators) for T in oversemigroups(S)]
        _emit({"semigroup": list(S.minimal_generators), "oversemigroups": over}, args.json,
              "\n".join("<" + ",".join(map(str, g)) + ">" for g in over))
    return 0


# -- fixtures -------------------------------------------------------------------------


def fixture_files() -> list[Path]:
    root = resources.files("traceideal") / "fixtures"
    return sorted(Path(str(p)) for p in root.iterdir() if str(p).endswith(".json"))


def load_fixtures() -> list[dict]:
    return [json.loads(p.read_text()) for p in fixture_files()]


def compare(expected: Any, actual: Any, path: str = "") -> list[str]:
    """Field-by-field comparison of a golden fragment against a report."""
    problems = []
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{path}: expected an object, got {actual!r}"]
        for k, v in expected.items():
            if k not in actual:
                problems.append(f"{path}/{k}: missing")
            else:
                problems.extend(compare(v, actual[k], f"{path}/{k}"))
    elif isinstance(expected, list) and expected and isinstance(expected[0], str) and isinstance(actual, list) and actual and isinstance(actual[0], dict):
        got = sorted(a.get("lattice") for a in actual)
        if sorted(expected) != got:
            problems.append(f"{path}: expected {sorted(expected)}, got {got}")
    elif expected != actual:
        problems.append(f"{path}: expected {expected!r}, got {actual!r}")
    return problems


def run_fixture(fx: dict) -> tuple[bool, list[str], float]:
    t0 = time.perf_counter()
    R = parse_ring(fx["ring"], fx.get("field"), modulus=fx.get("modulus"))
    actual = enumeration_payload(R, bases=False)
    elapsed = time.perf_counter() - t0
    problems = compare(fx["expect"], actual)
    problems = [f"{p} (fixture checks: {fx['checks']})" for p in problems]
    return not problems, problems, elapsed


def cmd_fixtures(args) -> int:
    fixtures = load_fixtures()
    if args.names:
        fixtures = [f for f in fixtures if any(n in f["name"] for n in args.names)]
    if args.action == "list":
        rows = [{"name": f["name"], "ring": f["ring"], "field": f.get("field"), "checks": f["checks"]} for f in fixtures]
        _emit(rows, args.json, "\n".join(f"{r['name']:<16} {r['ring']:<16} {r['field'] or '':<6} {r['checks']}" for r in rows))
        return 0
    results = []
    failed = False
    for fx in fixtures:
        ok, problems, elapsed = run_fixture(fx)
        failed |= not ok
        results.append({"name": fx["name"], "pass": ok, "seconds": round(elapsed, 3), "problems": problems})
    _emit(results, args.json, "\n".join(
        f"{'PASS' if r['pass'] else 'FAIL'} {r['name']} ({r['seconds']}s)" + "".join(f"\n    {p}" for p in r["problems"])
        for r in results
    ))
    return EXIT_MISMATCH if failed else 0


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="coefficient field: Q, F2, F3, F8/F2, ...")
    common.add_argument("--modulus", help="extension modulus coefficients c0,c1,...,1")
    common.add_argument("--config", help="JSON file with a 'moduli' table keyed by field descriptor")
    common.add_argument("--window", type=int, help="initial precision window for generator closure")
    common.add_argument("--max-dim", type=int, dest="max_dim", help="cap on the quotient dimension for subspace scans")
    common.add_argument("--paranoid", action="store_true", help="back every witness shortcut by brute force")
    common.add_argument("--json", action="store_true", help="emit JSON instead of a text summary")

    p = argparse.ArgumentParser(prog="traceideal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="ring invariants and ideal classification")
    a.add_argument("ring", help="sg:4,5,6 | gens:t2+t3,t5 | resext:F8/F2")
    a.add_argument("--ideal", action="append", help="comma-separated ideal generators, e.g. t5,t6,t8 (repeatable)")
    a.add_argument("--antistable", type=int, metavar="BOUND", help="run the per-ideal anti-stability check up to this colength")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", parents=[common], help="trace ideals, overrings and correspondences")
    e.add_argument("ring")
    e.add_argument("--method", choices=["bfs", "subspaces"], default="bfs")
    e.add_argument("--monomial-only", action="store_true", dest="monomial_only")
    e.add_argument("--expect", help="golden JSON file to compare against")
    e.add_argument("--no-bases", action="store_true", dest="no_bases", help="omit coordinate bases from JSON")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("sg", parents=[common], help="numerical semigroup data")
    s.add_argument("action", choices=["info", "over"])
    s.add_argument("generators", help="e.g. 4,5,6")
    s.set_defaults(func=cmd_sg)

    f = sub.add_parser("fixtures", parents=[common], help="golden fixture corpus")
    f.add_argument("action", choices=["run", "list"])
    f.add_argument("names", nargs="*", help="substring filters on fixture names")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        code, err = exc.code, {"error": exc.kind, "message": str(exc)}
    except PrecisionError as exc:
        code, err = EXIT_PRECISION, {"error": "precision", "message": str(exc)}
    except CapExceeded as exc:
        code, err = EXIT_CAP, {"error": "cap", "message": str(exc)}
    except (EnumerationError, idl.IdealError, LatticeError, RingError) as exc:
        code, err = EXIT_MISMATCH, {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(err), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
