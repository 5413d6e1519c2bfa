"""Command line interface.

    coopvals report  --game g.json [--format table|json]
    coopvals compute --game g.json --value tau [--format table|json]
    coopvals bounds  --game g.json --pair km [--format table|json]
    coopvals check   (--game g.json | --sample) [--seed N] [--count N]
                     [--n N] [--filter CLASS] [--suite] [--format table|json]
    coopvals sample  [--seed N] [--count N] [--n N] [--filter CLASS]
                     [--format table|json]

Exit codes: 0 success, 1 domain error (game outside a value's class, player
cap exceeded, failing check suite), 2 parse error or unreadable input.
Rationals are printed as p/q strings; table mode adds decimal
approximations.  All JSON output is byte-deterministic for a fixed input
and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import bounds, values, verify
from .errors import DomainError, ParseError
from .game import classify
from .gamefile import game_doc, parse_game_file

PAIR_MAP = {
    "km": ("KikutaLower", "MilnorUpper"),
    "tau": ("MinimalRights", "MarginalContributions"),
    "chi": (bounds.derived_lower_from_upper("MilnorUpper"), "MilnorUpper"),
    "cis": ("IndividualWorths", "EtaPrime"),
    "gately": ("IndividualWorths", "MarginalContributions"),
    "eansc": ("EanscTildeLower", "MarginalContributions"),
}


def _load_game(path):
    with open(path, "rb") as handle:
        return parse_game_file(handle.read())


def _vec(xs) -> str:
    return " ".join(str(x) for x in xs)


def _approx(xs) -> str:
    return " ".join(f"{float(x):.6g}" for x in xs)


def _json_vec(xs):
    return [str(x) for x in xs]


def _bool(flag) -> str:
    if flag is None:
        return "n/a"
    return "true" if flag else "false"


def _result_doc(result: values.ValueResult) -> dict:
    return {
        "value": result.value_id,
        "allocation": _json_vec(result.allocation),
        "lambda": None if result.lam is None else str(result.lam),
        "lower": _json_vec(result.lower_used),
        "upper": _json_vec(result.upper_used),
        "route": result.route,
    }


def cmd_report(args) -> int:
    v = _load_game(args.game)
    report = classify(v)
    rows = {}
    for vid, fn in values.VALUES.items():
        try:
            rows[vid] = fn(v)
        except DomainError as exc:
            rows[vid] = str(exc)

    if args.format == "json":
        doc = {
            "players": v.n,
            "labels": None if v.labels is None else list(v.labels),
            "total": str(v.total),
            "classification": asdict(report),
            "values": {
                vid: (_result_doc(r) if isinstance(r, values.ValueResult) else {"error": r})
                for vid, r in rows.items()
            },
        }
        print(json.dumps(doc, indent=2))
        return 0

    print(f"players: {v.n}")
    if v.labels is not None:
        print(f"labels: {' '.join(v.labels)}")
    print(f"v(N): {v.total}")
    flags = ", ".join(f"{k}={_bool(x)}" for k, x in asdict(report).items())
    print(f"classes: {flags}")
    for vid, r in rows.items():
        if isinstance(r, values.ValueResult):
            lam = "none" if r.lam is None else str(r.lam)
            print(
                f"{vid}: {_vec(r.allocation)} (approx {_approx(r.allocation)}) "
                f"lambda={lam} lower=[{_vec(r.lower_used)}] "
                f"upper=[{_vec(r.upper_used)}]"
            )
        else:
            print(f"{vid}: {r}")
    return 0


def cmd_compute(args) -> int:
    v = _load_game(args.game)
    result = values.VALUES[args.value](v)
    if args.format == "json":
        print(json.dumps(_result_doc(result), indent=2))
        return 0
    print(_vec(result.allocation))
    print(f"approx: {_approx(result.allocation)}")
    print(f"lambda: {'none' if result.lam is None else result.lam}")
    print(f"lower: {_vec(result.lower_used)}")
    print(f"upper: {_vec(result.upper_used)}")
    if result.route is not None:
        print(f"route: {result.route}")
    return 0


def cmd_bounds(args) -> int:
    v = _load_game(args.game)
    mu_id, eta_id = PAIR_MAP[args.pair]
    mu_fn, eta_fn = bounds.functional(mu_id), bounds.functional(eta_id)
    mu, eta = mu_fn.evaluate(v), eta_fn.evaluate(v)
    membership = bounds.membership(v, mu_fn, eta_fn)

    if args.format == "json":
        doc = {
            "pair": args.pair,
            "mu_id": mu_fn.id,
            "eta_id": eta_fn.id,
            "mu": _json_vec(mu),
            "eta": _json_vec(eta),
            "sum_mu": str(sum(mu)),
            "sum_eta": str(sum(eta)),
            "total": str(v.total),
            "balanced": membership.in_balanced,
            "lower_class": membership.in_lower_class,
            "strong_upper": membership.in_strong_upper,
            "proper_upper": membership.in_proper_upper,
            "b_hat": membership.in_b_hat,
            "b_tilde": membership.in_b_tilde,
        }
        print(json.dumps(doc, indent=2))
        return 0

    print(f"pair: {args.pair} ({mu_fn.id}, {eta_fn.id})")
    print(f"mu: {_vec(mu)} (approx {_approx(mu)})")
    print(f"eta: {_vec(eta)} (approx {_approx(eta)})")
    print(f"sum_mu: {sum(mu)}")
    print(f"sum_eta: {sum(eta)}")
    print(f"v(N): {v.total}")
    print(f"balanced: {_bool(membership.in_balanced)}")
    print(f"lower_class: {_bool(membership.in_lower_class)}")
    print(f"strong_upper: {_bool(membership.in_strong_upper)}")
    print(f"proper_upper: {_bool(membership.in_proper_upper)}")
    print(f"b_hat: {_bool(membership.in_b_hat)}")
    print(f"b_tilde: {_bool(membership.in_b_tilde)}")
    return 0


def _print_suite(report: verify.SuiteReport, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        for c in report.checks:
            status = "OK" if c.ok else "FAIL"
            tag = " [expected-negative]" if c.expected_negative else ""
            print(
                f"{status:<4} {c.check_id:<55} "
                f"passed={c.passed} failed={c.failed} skipped={c.skipped}{tag}"
            )
        print(f"games: {report.game_count}")
        print(f"ok: {_bool(report.ok)}")
    return 0 if report.ok else 1


def cmd_check(args) -> int:
    if args.game is not None:
        v = _load_game(args.game)
        report = verify.run_suite_on_games(
            [v], seed=args.seed, negative_fixtures=False
        )
    else:
        config = verify.SamplerConfig(
            n_min=args.n,
            n_max=args.n,
            class_filter=args.filter,
            count=args.count,
            seed=args.seed,
        )
        report = verify.run_suite(config)
    return _print_suite(report, args.format)


def cmd_sample(args) -> int:
    config = verify.SamplerConfig(
        n_min=args.n,
        n_max=args.n,
        class_filter=args.filter,
        count=args.count,
        seed=args.seed,
    )
    games = verify.sample_games(config)
    if args.format == "json":
        print(json.dumps([game_doc(v) for v in games], indent=2))
    else:
        for v in games:
            print(json.dumps(game_doc(v), separators=(",", ":")))
    return 0


def _add_format(parser) -> None:
    parser.add_argument(
        "--format", choices=("table", "json"), default="table",
        help="output style (default table)",
    )


def _add_sampler_flags(parser, default_count: int) -> None:
    parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    parser.add_argument(
        "--count", type=int, default=default_count,
        help=f"number of games (default {default_count})",
    )
    parser.add_argument("--n", type=int, default=3, help="players per game")
    parser.add_argument(
        "--filter", choices=verify.CLASS_FILTERS, default="any",
        help="game class to sample from (default any)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coopvals",
        description="Exact compromise values for cooperative TU-games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="classify a game and list every value")
    p.add_argument("--game", required=True, metavar="PATH")
    _add_format(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("compute", help="compute one named value")
    p.add_argument("--game", required=True, metavar="PATH")
    p.add_argument("--value", required=True, choices=sorted(values.VALUES))
    _add_format(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bounds", help="show a value's bound pair and classes")
    p.add_argument("--game", required=True, metavar="PATH")
    p.add_argument("--pair", required=True, choices=sorted(PAIR_MAP))
    _add_format(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check", help="run the verification suite")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--game", metavar="PATH", help="check this one game")
    source.add_argument(
        "--sample", action="store_true", help="check seeded random games"
    )
    p.add_argument(
        "--suite", action="store_true",
        help="run the full suite (the default and only mode)",
    )
    _add_sampler_flags(p, default_count=100)
    _add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sample", help="emit seeded random games as JSON")
    _add_sampler_flags(p, default_count=10)
    _add_format(p)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(str(exc))
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
