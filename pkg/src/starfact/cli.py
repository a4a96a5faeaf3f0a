"""Command-line interface.

Conventions shared by every subcommand:
  * groups are written as comma-separated cyclic orders ("5,5,2"),
  * subgroup generators as semicolon-separated tuples ("0,0,1;1,0,0"),
  * file arguments accept "-" for stdin/stdout,
  * all JSON output is canonical (sorted keys, fixed indentation), so
    identical inputs produce byte-identical artifacts.

Exit codes: 0 success / witness found, 1 verification or construction
failure, 2 search exhausted with no witness (or nonexistence certified),
3 budget exceeded, 64 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cayley import build_model, export_edge_list
from .constructions import (
    ConstructionError,
    classify_existence,
    construct_prime_power,
    double_starter,
    parity_nonexistence,
)
from .groups import all_subgroups, enumerate_abelian_groups, make_group
from .search import (
    BUDGET_EXCEEDED,
    FOUND,
    NONE_EXISTS,
    certify_nonexistence,
    search_starter,
)
from .serialize import (
    canonical_json,
    factorization_from_payload,
    factorization_payload,
    starter_from_payload,
    starter_payload,
)
from .starters import (
    InvalidStarterError,
    check_invariance,
    develop_factorization,
    verify_factorization,
    verify_starter,
)

EX_OK = 0
EX_FAIL = 1
EX_NONE = 2
EX_BUDGET = 3
EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _parse_group(spec: str):
    orders = [int(tok) for tok in spec.split(",") if tok.strip()]
    if not orders:
        raise ValueError(f"empty group spec {spec!r}")
    return make_group(orders)


def _parse_generators(spec: str, rank: int):
    gens = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        coords = tuple(int(tok) for tok in part.split(","))
        if len(coords) != rank:
            raise ValueError(
                f"generator {part!r} has {len(coords)} coordinates, expected {rank}"
            )
        gens.append(coords)
    if not gens:
        raise ValueError(f"no generators in {spec!r}")
    return gens


def _load_starter(path: str):
    return starter_from_payload(json.loads(_read_text(path)))


def _maybe_emit_edges(args, model) -> None:
    if getattr(args, "emit_edges", None):
        _write_text(args.emit_edges, export_edge_list(model))


def _cmd_construct(args) -> int:
    if args.family == "prime-power":
        if args.p is None or args.v is None:
            raise ValueError("--family prime-power needs --p and --v")
        starter = construct_prime_power(args.p, args.v)
    else:
        if args.input is None:
            raise ValueError("--family doubling needs --input")
        starter = double_starter(_load_starter(args.input))
    _write_text(args.out, canonical_json(starter_payload(starter)))
    _maybe_emit_edges(args, starter.model)
    return EX_OK


def _cmd_verify_starter(args) -> int:
    starter = _load_starter(args.starter)
    report = verify_starter(starter)
    _write_text(args.out, canonical_json(report.payload()))
    _maybe_emit_edges(args, starter.model)
    return EX_OK if report.passed else EX_FAIL


def _cmd_develop(args) -> int:
    starter = _load_starter(args.starter)
    fact = develop_factorization(starter)
    _write_text(args.out, canonical_json(factorization_payload(fact)))
    _maybe_emit_edges(args, starter.model)
    return EX_OK


def _cmd_verify_factorization(args) -> int:
    fact = factorization_from_payload(json.loads(_read_text(args.factorization)))
    report = verify_factorization(fact.model, fact)
    payload = report.payload()
    passed = report.passed
    if args.invariance:
        invariant = check_invariance(fact.model, fact)
        payload["invariant"] = invariant
        passed = passed and invariant
        payload["passed"] = passed
    _write_text(args.out, canonical_json(payload))
    return EX_OK if passed else EX_FAIL


def _cmd_search(args) -> int:
    group = _parse_group(args.group)
    H = group.subgroup(_parse_generators(args.H, group.rank))
    model = build_model(group, H)
    outcome = search_starter(
        model, mode=args.mode, budget=args.budget, workers=args.workers
    )
    _write_text(args.out, canonical_json(outcome.payload()))
    _maybe_emit_edges(args, model)
    if outcome.status == FOUND:
        return EX_OK
    if outcome.status == NONE_EXISTS:
        return EX_NONE
    return EX_BUDGET


def _cmd_certify_nonexist(args) -> int:
    result = certify_nonexistence(
        args.m, args.n, budget=args.budget, workers=args.workers
    )
    _write_text(args.out, canonical_json(result.payload()))
    if result.status == "certified":
        return EX_NONE
    if result.status == "witness":
        return EX_OK
    return EX_BUDGET


def _cmd_classify(args) -> int:
    verdict = classify_existence(args.m, args.n)
    payload = verdict.payload(args.m, args.n)
    if verdict.rule == "parity_count":
        cert = parity_nonexistence(args.m, args.n)
        if cert is not None:
            payload["certificate"] = cert.payload()
    _write_text(args.out, canonical_json(payload))
    return EX_OK


def _cmd_groups(args) -> int:
    out = []
    for group in enumerate_abelian_groups(args.order):
        entry = {"cyclic_orders": list(group.cyclic_orders)}
        if args.subgroups:
            entry["subgroups"] = [
                {
                    "order": sub.order,
                    "generators": [list(g) for g in sub.generators],
                }
                for sub in sorted(
                    all_subgroups(group), key=lambda s: (s.order, s.sorted_elements)
                )
            ]
        out.append(entry)
    _write_text(args.out, canonical_json({"order": args.order, "groups": out}))
    return EX_OK


def _add_out(parser) -> None:
    parser.add_argument(
        "-o", "--out", default="-", help="output path (default stdout)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="starfact",
        description=(
            "Construct, verify, develop, and search for starters of"
            " group-invariant one-factorizations of complete multipartite"
            " graphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a starter from a known family")
    p.add_argument(
        "--family", required=True, choices=("prime-power", "doubling")
    )
    p.add_argument("--p", type=int, help="prime congruent to 1 mod 4")
    p.add_argument("--v", type=int, help="prime-power exponent, at least 2")
    p.add_argument("--input", help="starter JSON to double (- for stdin)")
    p.add_argument("--emit-edges", help="also write the model edge list here")
    _add_out(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify-starter", help="check the three starter conditions")
    p.add_argument("starter", help="starter JSON path (- for stdin)")
    p.add_argument("--emit-edges", help="also write the model edge list here")
    _add_out(p)
    p.set_defaults(func=_cmd_verify_starter)

    p = sub.add_parser("develop", help="develop a starter into a one-factorization")
    p.add_argument("starter", help="starter JSON path (- for stdin)")
    p.add_argument("--emit-edges", help="also write the model edge list here")
    _add_out(p)
    p.set_defaults(func=_cmd_develop)

    p = sub.add_parser(
        "verify-factorization", help="check a one-factorization edge by edge"
    )
    p.add_argument("factorization", help="factorization JSON path (- for stdin)")
    p.add_argument(
        "--invariance",
        action="store_true",
        help="also require closure under vertex translation",
    )
    _add_out(p)
    p.set_defaults(func=_cmd_verify_factorization)

    p = sub.add_parser("search", help="exhaustive starter search for one model")
    p.add_argument("--group", required=True, help='cyclic orders, e.g. "5,5,2"')
    p.add_argument(
        "--H", required=True, help='subgroup generators, e.g. "0,0,1;1,0,0"'
    )
    p.add_argument(
        "--mode",
        default="first",
        choices=("first", "exhaust", "all"),
        help="stop at the first witness, certify emptiness, or enumerate all",
    )
    p.add_argument("--budget", type=int, help="node budget (default unlimited)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--emit-edges", help="also write the model edge list here")
    _add_out(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser(
        "certify-nonexist",
        help="search every abelian group of order m*n and subgroup of order n",
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, help="node budget per (group, H) pair")
    p.add_argument("--workers", type=int, default=1)
    _add_out(p)
    p.set_defaults(func=_cmd_certify_nonexist)

    p = sub.add_parser(
        "classify", help="existence verdict for the (m, n) parameter pair"
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_out(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("groups", help="list abelian groups of a given order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument(
        "--subgroups", action="store_true", help="include the subgroup lattice"
    )
    _add_out(p)
    p.set_defaults(func=_cmd_groups)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidStarterError as exc:
        sys.stderr.write(exc.report.summary() + "\n")
        return EX_FAIL
    except ConstructionError as exc:
        sys.stderr.write(f"construction failed: {exc}\n")
        return EX_FAIL
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"bad input: {exc}\n")
        return EX_USAGE
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
