"""Command-line front end with deterministic JSON/CSV reports.

Exit codes: 0 all checked properties hold, 1 a property violation was found,
2 usage error, 3 search budget exhausted.  Machine-readable output contains
only exact rational strings, integers and booleans (never floats), and is
byte-stable for a fixed (command, flags, seed); wall-clock timings go to
stderr only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import bounds, cantor, oracle, systems
from .rationals import format_rational, parse_rational
from .sets import RealSet, normalize, sum_of_dilates


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated per-command inputs; every numeric field is exact."""

    command: str
    k: Fraction | None = None
    n: int | None = None
    d: int | None = None
    l: Fraction | None = None
    count: int | None = None
    seed: int = 0
    cap_n: int | None = None
    points: RealSet | None = None
    node_limit: int | None = None
    time_limit: float | None = None
    fmt: str = "json"
    out: str | None = None


def _parse_k(text: str, minimum: Fraction = Fraction(1)) -> Fraction:
    try:
        k = parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid rational {text!r}") from exc
    if k < minimum:
        raise UsageError(f"k must be at least {format_rational(minimum)}")
    return k


def _parse_points(text: str) -> RealSet:
    try:
        return RealSet.from_strings(text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid point list {text!r}") from exc


def _emit(config: RunConfig, payload: dict, rows: list[list[str]]) -> None:
    if config.fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        text = buf.getvalue()
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flat_rows(payload: dict) -> list[list[str]]:
    """key,value rows for non-tabular reports; nested values as JSON."""
    rows = [["key", "value"]]
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        rows.append([key, str(value)])
    return rows


def _random_set(rng: random.Random, size: int) -> RealSet:
    values: set[Fraction] = set()
    while len(values) < size:
        values.add(Fraction(rng.randint(-8 * size, 8 * size),
                            rng.randint(1, 6)))
    return RealSet.of(values)


def cmd_verify(config: RunConfig) -> int:
    k = config.k
    rng = random.Random(config.seed)
    max_size = config.n or 12
    if max_size < 2:
        raise UsageError("set size range must reach at least 2")
    rows = [["instance", "size", "k", "canonicalAxioms", "canonicalUnion",
             "canonicalBound", "bijection", "randomAxioms", "randomUnion",
             "randomBound"]]
    instances = []
    violations = 0
    for i in range(config.count or 100):
        size = rng.randint(2, max_size)
        base = _random_set(rng, size)
        sub_seed = rng.getrandbits(63)
        canonical = systems.canonical_dilate_system(base, k)
        can_ok = systems.validate(canonical).all_passed()
        can_union = len(systems.image_union(canonical))
        can_word = bounds.CMP_WORDS[
            bounds.cmp_union_bound(Fraction(can_union), size, k)]
        bijection = systems.bijection_with_sumset(canonical)
        rand_sys = systems.random_valid_system(base, k, sub_seed)
        rand_ok = systems.validate(rand_sys).all_passed()
        rand_union = len(systems.image_union(rand_sys))
        rand_word = bounds.CMP_WORDS[
            bounds.cmp_union_bound(Fraction(rand_union), size, k)]
        bad = (not can_ok or can_word == "less" or not bijection
               or not rand_ok or rand_word == "less")
        violations += bad
        instances.append({
            "instance": i, "size": size, "canonicalAxioms": can_ok,
            "canonicalUnion": can_union, "canonicalBound": can_word,
            "bijection": bijection, "randomAxioms": rand_ok,
            "randomUnion": rand_union, "randomBound": rand_word,
        })
        rows.append([str(i), str(size), format_rational(k),
                     "pass" if can_ok else "fail", str(can_union), can_word,
                     "true" if bijection else "false",
                     "pass" if rand_ok else "fail", str(rand_union),
                     rand_word])
    payload = {"command": "verify", "k": format_rational(k),
               "seed": config.seed, "instances": instances,
               "violations": violations}
    _emit(config, payload, rows)
    return 0 if violations == 0 else 1


def cmd_dp(config: RunConfig) -> int:
    k = config.k
    max_n = config.n or 2000
    if max_n < 1:
        raise UsageError("table length must be at least 1")
    table = bounds.dp_table(k, max_n)
    violations = bounds.dp_bound_violations(table)
    nonmonotone = bounds.dp_nonmonotone_indices(table)
    rows = [["n", "value", "branch", "vsBound"]]
    rows += [list(r) for r in bounds.dp_table_rows(table)]
    payload = {
        "command": "dp", "k": format_rational(k), "maxN": max_n,
        "rows": [
            {"n": int(r[0]), "value": r[1], "branch": r[2], "vsBound": r[3]}
            for r in bounds.dp_table_rows(table)
        ],
        "violations": list(violations),
        "nonMonotoneAt": list(nonmonotone),
    }
    _emit(config, payload, rows)
    return 0 if not violations else 1


def cmd_counterexample(config: RunConfig) -> int:
    cap = config.cap_n if config.cap_n is not None else 6
    n = config.n if config.n is not None else 3
    if n < 1 or n > cap:
        raise UsageError(f"depth must be in 1..{cap} (see --cap-n)")
    if config.k < cantor.MIN_SCALE:
        raise UsageError("branch factor guarantee unavailable below k=26")
    k = config.k
    system = cantor.build_counterexample_system(n, k)
    report = systems.validate(system)
    union = systems.image_union(system)
    expected = 2 ** (n + 1)
    pairs = systems.betweenness_violations(system)
    lo, hi = cantor.bilipschitz_extremes(n, k)
    deviation = cantor.branch_factor_check(n, k)
    dev_bound = 1 / (4 * k - 1)
    checks = {
        "axioms123": all(report.passed(i) for i in (1, 2, 3)),
        "unionIsDouble": len(union) == expected,
        "betweennessFails": len(pairs) > 0,
        "biLipschitzInRange": Fraction(1, 2) <= lo and hi <= 2,
        "branchFactorWithinBound": deviation <= dev_bound,
    }
    payload = {
        "command": "counterexample", "n": n, "k": format_rational(k),
        "baseSize": 2 ** n, "unionSize": len(union),
        "expectedUnionSize": expected,
        "axiomViolations": {
            str(i): len(report.violations[i]) for i in (1, 2, 3, 4)
        },
        "betweennessViolations": [
            [format_rational(a), format_rational(x)] for a, x in pairs
        ],
        "biLipschitz": {"min": format_rational(lo),
                        "max": format_rational(hi)},
        "branchFactorDeviation": format_rational(deviation),
        "branchFactorBound": format_rational(dev_bound),
        "checks": checks,
    }
    _emit(config, payload, _flat_rows(payload))
    return 0 if all(checks.values()) else 1


def _oracle_checks(result, base: RealSet, k: Fraction) -> tuple[dict, str, int]:
    canonical_size = len(systems.image_union(
        systems.canonical_dilate_system(base, k)))
    word = bounds.CMP_WORDS[bounds.cmp_union_bound(
        Fraction(result.min_union_size), len(base), k)]
    checks = {
        "witnessValid": systems.validate(result.witness).all_passed(),
        "atLeastBound": word != "less",
        "atMostCanonical": result.min_union_size <= canonical_size,
    }
    return checks, word, canonical_size


def cmd_oracle(config: RunConfig) -> int:
    cap = config.cap_n if config.cap_n is not None else 6
    budget = oracle.SearchBudget(node_limit=config.node_limit or 20000,
                                 time_limit=config.time_limit)
    if config.points is not None:
        base = config.points
        if len(base) == 0:
            raise UsageError("oracle needs a nonempty point list")
        if len(base) > cap:
            raise UsageError(
                f"instance larger than the cap {cap} (see --cap-n)")
        t0 = time.monotonic()
        result = oracle.min_union(base, config.k, budget=budget, max_size=cap)
        elapsed = time.monotonic() - t0
        print(f"oracle wall time: {elapsed:.3f}s", file=sys.stderr)
        checks, word, canonical_size = _oracle_checks(result, base, config.k)
        payload = {
            "command": "oracle",
            "mode": "single",
            "instance": base.to_strings(),
            "k": format_rational(config.k),
            "minUnionSize": result.min_union_size,
            "optimal": result.optimal,
            "nodes": result.nodes,
            "boundComparison": word,
            "canonicalUnionSize": canonical_size,
            "witness": systems.system_to_jsonable(result.witness),
            "checks": checks,
        }
        _emit(config, payload, _flat_rows(payload))
        if not all(checks.values()):
            return 1
        return 0 if result.optimal else 3
    # grid sweep over sampled normalized instances of one size; each
    # per-instance minimum only upper-bounds the minimum over all sets
    size = config.n
    if size is None or size < 2:
        raise UsageError("grid sweep needs --n of at least 2 or a point list")
    if size > cap:
        raise UsageError(f"instance larger than the cap {cap} (see --cap-n)")
    rng = random.Random(config.seed)
    count = config.count or 8
    rows = [["sample", "instance", "minUnionSize", "optimal", "nodes",
             "boundComparison", "canonicalUnionSize"]]
    samples = []
    best: int | None = None
    violations = 0
    exhausted = 0
    t0 = time.monotonic()
    for i in range(count):
        base = normalize(_random_set(rng, size))
        result = oracle.min_union(base, config.k, budget=budget, max_size=cap)
        checks, word, canonical_size = _oracle_checks(result, base, config.k)
        violations += not all(checks.values())
        exhausted += not result.optimal
        best = result.min_union_size if best is None \
            else min(best, result.min_union_size)
        samples.append({
            "sample": i, "instance": base.to_strings(),
            "minUnionSize": result.min_union_size,
            "optimal": result.optimal, "nodes": result.nodes,
            "boundComparison": word, "canonicalUnionSize": canonical_size,
            "checks": checks,
        })
        rows.append([str(i), ",".join(base.to_strings()),
                     str(result.min_union_size),
                     "true" if result.optimal else "false",
                     str(result.nodes), word, str(canonical_size)])
    elapsed = time.monotonic() - t0
    print(f"oracle wall time: {elapsed:.3f}s", file=sys.stderr)
    payload = {
        "command": "oracle",
        "mode": "grid",
        "k": format_rational(config.k),
        "n": size,
        "count": count,
        "seed": config.seed,
        "samples": samples,
        "sampledUpperBound": best,
        "note": "minimum over sampled instances; an upper bound on the "
                "minimum over all sets of this size, not its exact value",
    }
    _emit(config, payload, rows)
    if violations:
        return 1
    return 3 if exhausted else 0


def cmd_sumset(config: RunConfig) -> int:
    base = config.points
    if base is None:
        raise UsageError("sumset needs a point list")
    grown = sum_of_dilates(base, config.k)
    payload = {
        "command": "sumset", "points": base.to_strings(),
        "k": format_rational(config.k), "sumOfDilates": grown.to_strings(),
        "size": len(grown),
    }
    _emit(config, payload, _flat_rows(payload))
    return 0


def cmd_digitbox(config: RunConfig) -> int:
    if config.k is None or config.k.denominator != 1:
        raise UsageError("digit boxes need an integer base")
    k = config.k.numerator
    d = config.d if config.d is not None else 2
    n_digits = config.n if config.n is not None else 2
    try:
        box = cantor.digit_box_set(k, d, n_digits)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    grown = sum_of_dilates(box.points, Fraction(k))
    limit = 2 ** d * n_digits ** (d + 1)
    holds = len(grown) <= limit
    payload = {
        "command": "digitbox", "k": k, "d": d, "nDigits": n_digits,
        "size": len(box.points), "expectedSize": n_digits ** d,
        "sumsetSize": len(grown), "sumsetBound": limit,
        "holds": holds,
    }
    _emit(config, payload, _flat_rows(payload))
    return 0 if holds and len(box.points) == n_digits ** d else 1


def cmd_plan(config: RunConfig) -> int:
    if config.l is None:
        raise UsageError("plan needs --l")
    if config.l <= 1:
        raise UsageError("growth factor must exceed 1")
    k = None
    if config.k is not None:
        if config.k.denominator != 1:
            raise UsageError("plan needs an integer k")
        k = config.k.numerator
    try:
        d, n_digits, ok = cantor.plan_subpolynomial_example(config.l, k=k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "command": "plan", "l": format_rational(config.l), "d": d,
        "nDigits": n_digits, "feasible": ok,
    }
    _emit(config, payload, _flat_rows(payload))
    return 0 if ok else 1


_COMMANDS = {
    "verify": cmd_verify,
    "dp": cmd_dp,
    "counterexample": cmd_counterexample,
    "oracle": cmd_oracle,
    "sumset": cmd_sumset,
    "digitbox": cmd_digitbox,
    "plan": cmd_plan,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contractionlab",
        description="exact verification workbench for contraction systems "
                    "and sumset growth bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="axioms + union bound on random sets")
    p.add_argument("--k", default="3")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, default=12, help="largest set size")
    p.add_argument("--seed", type=int, default=0)
    add_common(p)

    p = sub.add_parser("dp", help="splitting recursion vs the union bound")
    p.add_argument("--k", default="10")
    p.add_argument("--n", type=int, default=2000, help="table length")
    add_common(p)

    p = sub.add_parser("counterexample",
                       help="betweenness-free construction report")
    p.add_argument("--n", type=int, default=3, help="tree depth")
    p.add_argument("--k", default="10001")
    p.add_argument("--cap-n", type=int, default=6)
    add_common(p)

    p = sub.add_parser("oracle", help="exact minimum union for a small set")
    p.add_argument("points", nargs="?", default=None,
                   help="comma-separated rationals, e.g. 0,1/2,1; omit to "
                        "sweep sampled normalized instances of size --n")
    p.add_argument("--k", default="2")
    p.add_argument("--n", type=int, default=None, help="sweep set size")
    p.add_argument("--count", type=int, default=8, help="sweep sample count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap-n", type=int, default=6)
    p.add_argument("--node-limit", type=int, default=20000)
    p.add_argument("--time-limit", type=float, default=None)
    add_common(p)

    p = sub.add_parser("sumset", help="sum of dilates of a point list")
    p.add_argument("points")
    p.add_argument("--k", default="2")
    add_common(p)

    p = sub.add_parser("digitbox", help="digit-box set and its growth bound")
    p.add_argument("--k", default="5")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, default=3, help="digit range")
    add_common(p)

    p = sub.add_parser("plan", help="digit-box shape for a growth target")
    p.add_argument("--l", required=True)
    p.add_argument("--k", default=None)
    add_common(p)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    k = None
    if getattr(args, "k", None) is not None:
        minimum = Fraction(1)
        k = _parse_k(args.k, minimum)
    points = None
    if getattr(args, "points", None) is not None:
        points = _parse_points(args.points)
    l = None
    if getattr(args, "l", None) is not None:
        try:
            l = parse_rational(args.l)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"invalid rational {args.l!r}") from exc
    return RunConfig(
        command=args.command,
        k=k,
        n=getattr(args, "n", None),
        d=getattr(args, "d", None),
        l=l,
        count=getattr(args, "count", None),
        seed=getattr(args, "seed", 0),
        cap_n=getattr(args, "cap_n", None),
        points=points,
        node_limit=getattr(args, "node_limit", None),
        time_limit=getattr(args, "time_limit", None),
        fmt=args.format,
        out=args.out,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return _COMMANDS[args.command](config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
