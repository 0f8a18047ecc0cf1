"""Command-line front end.

Exit status: 0 on success or an affirmative answer, 1 on a clean negative
(embedder failure, rejected certificate, oracle absent/inconclusive,
counterexample found), 2 on usage, parse or I/O errors.  Results go to
stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from .certificate import CertificateFormatError, read_certificate, verify_certificate, write_certificate
from .embedder import EmbedderConfig, check_properties, find_subdivision, sample_base_pool
from .generators import (RotationalSymbolSet, SEED_MAX, paley, random_tournament, read_tournament,
                         rotational, transitive, write_tournament)
from .harness import HostRule, SweepPlan, format_summary, run_sweep, summarize, write_csv
from .oracle import (SearchBudget, all_tournaments_contain, contains_subdivision_exact,
                     pattern_count, write_progress)
from .tournament import TournamentError

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _budget(args) -> SearchBudget:
    return SearchBudget(getattr(args, "max_tuples", None), getattr(args, "time_limit", None))


def cmd_gen(args) -> int:
    if args.kind == "random":
        T = random_tournament(args.n, args.seed)
    elif args.kind == "transitive":
        T = transitive(args.n)
    elif args.kind == "paley":
        T = paley(args.n)
    else:
        if args.symbols is None:
            raise UsageError("--symbols is required for --kind rotational")
        T = rotational(RotationalSymbolSet(args.n, frozenset(args.symbols)))
    write_tournament(T, args.out)
    print(f"wrote {args.out} kind={args.kind} n={T.n}")
    return EXIT_OK


def cmd_find(args) -> int:
    T = read_tournament(args.host)
    cfg = EmbedderConfig(sample_probability=args.p, retry_budget=args.retries,
                         exclusion=args.exclude, connector_policy=args.policy,
                         verify_properties=args.check_properties)
    res = find_subdivision(T, args.k, cfg, args.seed)
    summary = res.summary()
    if args.check_properties:
        for rec, att in zip(res.attempts, summary["per_attempt"]):
            if rec.report is not None:
                att["properties"] = rec.report.to_dict()
    if res.ok:
        if args.cert_out:
            write_certificate(res.certificate, args.cert_out)
            summary["cert_path"] = args.cert_out
        summary["certificate"] = res.certificate.to_dict()
    print(json.dumps(summary, indent=1))
    if not res.ok:
        print(f"failure: stage {res.stage}", file=sys.stderr)
    return EXIT_OK if res.ok else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    T = read_tournament(args.host)
    cert = read_certificate(args.cert)
    report = verify_certificate(T, cert)
    print(report)
    return EXIT_OK if report else EXIT_NEGATIVE


def cmd_oracle(args) -> int:
    T = read_tournament(args.host)
    res = contains_subdivision_exact(T, args.k, _budget(args))
    print(res.status)
    if res.certificate is not None:
        print(res.certificate.dumps(), end="")
        if args.cert_out:
            write_certificate(res.certificate, args.cert_out)
    print(f"tuples={res.tuples}", file=sys.stderr)
    return EXIT_OK if res.present else EXIT_NEGATIVE


def cmd_ramsey(args) -> int:
    total = pattern_count(args.n)
    if not 0 <= args.resume <= total:
        raise UsageError(f"--resume must lie in [0, {total}]")
    res = all_tournaments_contain(args.k, args.n, _budget(args), start=args.resume,
                                  workers=args.workers, early_exit=not args.exhaustive)
    print(res.status)
    print(f"k={res.k} n={res.n} start={res.start} next_offset={res.next_offset} "
          f"checked={res.instances_checked} present={res.present_count} total={total}")
    if res.witness_pattern is not None:
        print(f"witness_pattern={res.witness_pattern}")
        if args.witness_out:
            write_tournament(res.witness, args.witness_out)
    if args.progress:
        write_progress(args.progress, res.k, res.n, res.next_offset)
    return EXIT_OK if res.status == "yes" else EXIT_NEGATIVE


def cmd_props(args) -> int:
    T = read_tournament(args.host)
    cfg = EmbedderConfig(sample_probability=args.p)
    pool = sample_base_pool(T, args.k, args.seed, cfg)
    report = check_properties(T, pool, args.k)
    print(json.dumps(report.to_dict(), indent=1))
    return EXIT_OK if report.all_hold else EXIT_NEGATIVE


def cmd_sweep(args) -> int:
    try:
        rule = HostRule.parse(args.host_rule)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    plan = SweepPlan(args.k, rule, args.gen, args.seeds, args.retries, args.sweep_seed,
                     args.policy, args.exclude)
    with open(args.csv, "w", newline="") as fh:
        records = run_sweep(plan, workers=args.workers, cert_dir=args.cert_dir)
        write_csv(records, fh)
    text = format_summary(plan, summarize(records))
    print(text, end="")
    if args.summary:
        with open(args.summary, "w") as fh:
            fh.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsubdiv",
        description="Find 1-subdivisions of transitive tournaments in host tournaments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a host tournament")
    p.add_argument("--kind", choices=["random", "transitive", "paley", "rotational"], required=True)
    p.add_argument("--n", type=_positive, required=True, help="order (the prime q for paley)")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--symbols", type=_int_list, help="rotational symbol set, e.g. 1,2,4")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("find", help="run the randomized embedder")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--retries", type=_positive, default=20)
    p.add_argument("--p", type=float, default=None, help="override the sampling probability")
    p.add_argument("--policy", choices=["lowest-index", "scarcest-first"], default="lowest-index")
    p.add_argument("--exclude", choices=["pool", "base"], default="pool")
    p.add_argument("--check-properties", action="store_true")
    p.add_argument("--cert-out")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("verify", help="check a certificate against a host")
    p.add_argument("--host", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact containment test")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--max-tuples", type=_positive)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--cert-out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("ramsey", help="check every labeled tournament on n vertices")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--resume", type=int, default=0, help="first pattern offset to examine")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--exhaustive", action="store_true", help="decide every instance, no early exit")
    p.add_argument("--max-tuples", type=_positive)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--progress", help="write 'k n next_offset' here")
    p.add_argument("--witness-out")
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("props", help="sample a pool and evaluate its properties")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--p", type=float, default=None)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("sweep", help="empirical threshold sweep")
    p.add_argument("--k", type=_int_list, required=True, help="e.g. 8,12,16")
    p.add_argument("--host-rule", default="paper", help="paper | n=<int> | ratio=<real>")
    p.add_argument("--gen", choices=["random", "paley"], default="random")
    p.add_argument("--seeds", type=_positive, default=10)
    p.add_argument("--retries", type=_positive, default=20)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--sweep-seed", type=_seed, default=0)
    p.add_argument("--policy", choices=["lowest-index", "scarcest-first"], default="lowest-index")
    p.add_argument("--exclude", choices=["pool", "base"], default="pool")
    p.add_argument("--csv", required=True)
    p.add_argument("--cert-dir")
    p.add_argument("--summary")
    p.set_defaults(func=cmd_sweep)
    return parser


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, OSError, TournamentError, CertificateFormatError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
