# -*- coding: utf-8 -*-
"""Command-line front end.

Exit status: 0 on success, 1 when a property is violated (the witness is
printed), 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from . import config, subsets
from .algebra import FiniteAlgebra, enumerate_endomorphisms, identity_witness, quotient_algebra
from .algebra_file import dump_algebra_file, dump_algebra_json, load_algebra_file
from .closures import check_conditions, closure_from_congruence
from .congruences import all_congruences, fully_invariant_congruences
from .errors import PowcloError
from .generators import NSemigroupSpec, SinkSpec, n_closed_generate, r_closure, sink_generate
from .identity_parser import IdentityExpr
from .power import build_extended_power, build_relational_power, graph_structure
from .reports import SuiteReport
from .suites import SuiteConfig, run_suite, suite_names

__all__ = ("main", "build_parser")

logger = logging.getLogger(__name__)

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"


def _emit(text: str) -> None:
    print(text)


def _load(path: str) -> FiniteAlgebra:
    return load_algebra_file(path).to_algebra()


def _output(alg: FiniteAlgebra, path: Optional[str]) -> None:
    if path:
        try:
            dump_algebra_file(alg, path)
        except OSError as exc:
            raise PowcloError(f"{path}: {exc.strerror}") from None
    else:
        _emit(dump_algebra_json(alg))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> int:
    spec = load_algebra_file(args.file)
    alg = spec.to_algebra()
    ops = ", ".join(f"{s}/{a}" for s, a in alg.signature.ops) or "no operations"
    _emit(f"ok: {alg.name}, {alg.size} elements, {ops}")
    if spec.relations:
        _emit(f"relations: {', '.join(f'{r.symbol}/{r.arity}' for r in spec.relations)}")
    return 0


def cmd_power(args: argparse.Namespace) -> int:
    spec = load_algebra_file(args.file)
    if args.relational:
        rs = spec.to_relation_structure() if spec.relations else graph_structure(spec.to_algebra())
        alg = build_relational_power(rs)
    else:
        alg = build_extended_power(spec.to_algebra()).algebra
    _output(alg, args.output)
    return 0


def cmd_congruences(args: argparse.Namespace) -> int:
    alg = _load(args.file)
    target = build_extended_power(alg).algebra if args.of_power else alg
    cons = all_congruences(target)
    if args.fully_invariant:
        cons = fully_invariant_congruences(target, cons, enumerate_endomorphisms(target))
    for i, con in enumerate(cons):
        _emit(f"#{i} ({con.partition.count} blocks) {con.render()}")
    logger.info("%d congruences on %s", len(cons), target.name)
    return 0


def cmd_closures(args: argparse.Namespace) -> int:
    alg = _load(args.file)
    pa = build_extended_power(alg)
    reports = []
    for i, theta in enumerate(all_congruences(pa.algebra)):
        c = closure_from_congruence(pa, theta, name=f"C#{i}")
        if args.report:
            report = check_conditions(pa, c, seed=args.seed)
            reports.append(report)
            if not args.json:
                _emit(report.render_text())
            continue
        _emit(f"{c.name} for {theta.render()}")
        for code in range(1 << alg.size):
            _emit(f"  {alg.format_subset(code)} -> {alg.format_subset(c(code))}")
    if args.json:
        _emit(json.dumps([r.model_dump(mode="json") for r in reports], indent=2, ensure_ascii=False))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    alg = _load(args.file)
    expr = IdentityExpr.parse(args.identity, alg.signature)
    ident = expr.identity
    logger.debug("checking %r as %s", expr.source, ident.render())
    target = build_extended_power(alg) if args.in_power else None
    where = target.omega_reduct() if target is not None else alg
    found = identity_witness(where, ident)
    if found is None:
        _emit(f"holds in {where.name}: {ident.render()}")
        return 0
    label = target.label if target is not None else alg.label
    witness = ", ".join(f"{ident.var_name(v)}={label(i)}" for v, i in found.items())
    _emit(f"fails in {where.name}: {ident.render()}")
    _emit(f"witness: {witness}")
    return 1


def cmd_generate(args: argparse.Namespace) -> int:
    alg = _load(args.file)
    try:
        seed = subsets.parse_elements(args.seed, alg.size, alg.labels)
    except ValueError as exc:
        raise PowcloError(f"--seed: {exc}") from None
    if args.sink is not None:
        gamma = frozenset(s for s in args.sink.split(",") if s)
        result = sink_generate(alg, SinkSpec(gamma), seed)
    elif args.rclosed is not None:
        result = r_closure(alg, args.rclosed, seed)
    else:
        result = n_closed_generate(alg, NSemigroupSpec(args.nsemigroup, alg.signature.arity(args.nsemigroup)), seed)
    _emit(alg.format_subset(result))
    return 0


def cmd_quotient(args: argparse.Namespace) -> int:
    alg = _load(args.file)
    target = build_extended_power(alg).algebra if args.of_power else alg
    cons = all_congruences(target)
    if not 0 <= args.congruence < len(cons):
        raise PowcloError(f"congruence index {args.congruence} out of range 0..{len(cons) - 1}")
    _output(quotient_algebra(target, cons[args.congruence].partition), args.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    settings = SuiteConfig(
        base=_load(args.base) if args.base else None,
        k=args.k,
        seed=args.seed,
        depth_bound=args.depth,
        identity=args.identity,
    )
    report: SuiteReport = run_suite(args.suite, settings)
    _emit(report.model_dump_json(indent=2) if args.json else report.render_text())
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "power": cmd_power,
    "congruences": cmd_congruences,
    "closures": cmd_closures,
    "check": cmd_check,
    "generate": cmd_generate,
    "quotient": cmd_quotient,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powclo", description="Power algebras, closure operators and congruences.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Check an algebra file.")
    p.add_argument("file")

    p = sub.add_parser("power", help="Emit the extended power algebra as an algebra file.")
    p.add_argument("file")
    p.add_argument("--relational", action="store_true", help="Lift the relations (or operation graphs) instead.")
    p.add_argument("-o", "--output", metavar="PATH", help="Write the algebra file to PATH instead of stdout.")

    p = sub.add_parser("congruences", help="List congruences.")
    p.add_argument("file")
    p.add_argument("--fully-invariant", action="store_true")
    p.add_argument("--of-power", action="store_true", help="Congruences of the power algebra.")

    p = sub.add_parser("closures", help="Closure operators of the power algebra's congruences.")
    p.add_argument("file")
    p.add_argument("--report", action="store_true", help="Decide the side conditions for each operator.")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("check", help="Evaluate an identity.")
    p.add_argument("file")
    p.add_argument("--identity", required=True)
    p.add_argument("--in-power", action="store_true")

    p = sub.add_parser("generate", help="Closure of a seed subset.")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--sink", metavar="SYMS", help="Comma-separated sink symbols (empty for subalgebras).")
    mode.add_argument("--rclosed", metavar="R", type=int)
    mode.add_argument("--nsemigroup", metavar="SYM")
    p.add_argument("--seed", required=True, help="Comma-separated elements, e.g. 'a,b'.")

    p = sub.add_parser("quotient", help="Quotient by the congruence at INDEX of the listing.")
    p.add_argument("file")
    p.add_argument("--congruence", type=int, required=True)
    p.add_argument("--of-power", action="store_true")
    p.add_argument("-o", "--output", metavar="PATH", help="Write the algebra file to PATH instead of stdout.")

    p = sub.add_parser("verify", help="Run a verification suite.")
    p.add_argument("suite", help="One of: " + ", ".join(suite_names()))
    p.add_argument("--base")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--identity")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        config.configure()
        return COMMANDS[args.command](args)
    except PowcloError as exc:
        print(f"[error] {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"[error] witness: {json.dumps(exc.witness, ensure_ascii=False, default=str)}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
