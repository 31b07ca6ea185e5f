"""Batch command line: generate words, scan extremal factors, classify fineness.

Exit status is 0 on success, 1 on any parse or validation error, and 2 when
an internal consistency check fails (two construction paths disagreeing is a
bug, never a user error).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from .engine import (
    InternalConsistencyError,
    shift_chain,
    standard_word,
    strictness,
)
from .extremal import max_factor, min_factor
from .fine import NotSkewForm, SpecError, construct_skew, classify, reconstruct_skew
from .textio import (
    ParseError,
    parse_alphabet,
    parse_directive,
    parse_literal,
    parse_order,
    parse_skew,
    result_to_dict,
    skew_to_dict,
    strictness_to_dict,
    verdict_to_dict,
)
from .words import (
    AlphabetError,
    LengthError,
    LiteralPeriodicStream,
    WordStream,
    all_orders,
)

DEFAULT_DEPTH = 50
DEFAULT_HORIZON = 1000
MAX_ORDER_LETTERS = 6


class CLIError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise CLIError(message)


def _default_horizon() -> int:
    env = os.environ.get("ETK_HORIZON")
    if env:
        try:
            return int(env)
        except ValueError:
            raise CLIError(f"ETK_HORIZON must be an integer, got {env!r}") from None
    return DEFAULT_HORIZON


def _add_common(sub: argparse.ArgumentParser, *, spec: bool = True) -> None:
    sub.add_argument("--alphabet", required=True, help="comma-separated letters, e.g. a,b,c")
    sub.add_argument("--output", choices=("text", "json"), default="text")
    sub.add_argument("--horizon", type=int, default=None, help="scan horizon (default 1000 or ETK_HORIZON)")
    if spec:
        group = sub.add_mutually_exclusive_group(required=True)
        group.add_argument("--directive", help="directive word u(v), e.g. \"c(ab)\"")
        group.add_argument("--literal", help="literal ultimately periodic word u(v)")
        group.add_argument("--skew", help="skew spec, e.g. \"skew v=(ab) x=c p=4 mu=psi:c suffix=full\"")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epilex", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("generate", help="emit a prefix of a word")
    _add_common(gen)
    gen.add_argument("--prefix", type=int, default=50, help="prefix length to emit")

    for name in ("min", "max"):
        sub = subs.add_parser(name, help=f"{name}imal factor of the given length")
        _add_common(sub)
        sub.add_argument("--k", type=int, required=True, help="factor length")
        ordergroup = sub.add_mutually_exclusive_group(required=True)
        ordergroup.add_argument("--order", help="total order, e.g. \"a<b<c\"")
        ordergroup.add_argument("--all-orders", action="store_true", help="scan every order")

    cls = subs.add_parser("classify", help="fineness classification of a structured spec")
    _add_common(cls)
    cls.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    con = subs.add_parser("construct", help="build a skew word and emit a prefix")
    con.add_argument("--alphabet", required=True)
    con.add_argument("--output", choices=("text", "json"), default="text")
    con.add_argument("--skew", required=True)
    con.add_argument("--prefix", type=int, default=50)

    ver = subs.add_parser("verify", help="run internal consistency checks")
    _add_common(ver)
    ver.add_argument("--i", type=int, default=3, help="verify shift-chain links 1..i (directives)")
    ver.add_argument("--depth", type=int, default=20)

    return parser


def _stream_and_echo(alphabet, args) -> tuple[WordStream, dict[str, Any]]:
    if args.directive is not None:
        d = parse_directive(alphabet, args.directive)
        return standard_word(d), {"kind": "directive", "text": str(d)}
    if args.literal is not None:
        head, cycle = parse_literal(alphabet, args.literal)
        return LiteralPeriodicStream(head, cycle), {"kind": "literal", "text": args.literal.strip()}
    spec = parse_skew(alphabet, args.skew)
    return construct_skew(spec), {"kind": "skew", "spec": skew_to_dict(spec)}


def _emit(args, payload: dict[str, Any], text: str) -> None:
    if args.output == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _cmd_generate(args) -> int:
    alphabet = parse_alphabet(args.alphabet)
    if args.prefix < 0:
        raise CLIError("--prefix must be >= 0")
    stream, echo = _stream_and_echo(alphabet, args)
    word = stream.prefix(args.prefix)
    _emit(
        args,
        {"word": str(word), "length": len(word), "alphabet": list(alphabet.letters), "spec": echo},
        str(word),
    )
    return 0


def _cmd_extremal(args, greatest: bool) -> int:
    alphabet = parse_alphabet(args.alphabet)
    horizon = args.horizon if args.horizon is not None else _default_horizon()
    if args.k > horizon:
        raise CLIError("--k must not exceed the horizon")
    stream, echo = _stream_and_echo(alphabet, args)
    if args.all_orders:
        if alphabet.size > MAX_ORDER_LETTERS:
            raise CLIError(f"--all-orders supports at most {MAX_ORDER_LETTERS} letters")
        orders = all_orders(alphabet)
    else:
        orders = [parse_order(alphabet, args.order)]
    results = [
        (max_factor if greatest else min_factor)(stream, args.k, order, horizon)
        for order in orders
    ]
    if args.all_orders:
        payload: dict[str, Any] = {"spec": echo, "results": [result_to_dict(r) for r in results]}
        text = "\n".join(f"{r.order.describe()}\t{r.word}" for r in results)
    else:
        payload = {"spec": echo, **result_to_dict(results[0])}
        text = str(results[0].word)
    _emit(args, payload, text)
    return 0


def _cmd_classify(args) -> int:
    alphabet = parse_alphabet(args.alphabet)
    horizon = args.horizon if args.horizon is not None else _default_horizon()
    if args.depth > horizon:
        raise CLIError("--depth must not exceed the horizon")
    if alphabet.size > MAX_ORDER_LETTERS:
        raise CLIError(f"classify supports at most {MAX_ORDER_LETTERS} letters")
    if args.directive is not None:
        spec: Any = parse_directive(alphabet, args.directive)
        extra = {"strictness": strictness_to_dict(strictness(spec))}
    elif args.literal is not None:
        head, cycle = parse_literal(alphabet, args.literal)
        spec = LiteralPeriodicStream(head, cycle)
        extra = {}
    else:
        spec = parse_skew(alphabet, args.skew)
        extra = {}
    verdict = classify(spec, args.depth, horizon)
    payload = {**verdict_to_dict(verdict), **extra}
    lines = [f"classification: {verdict.classification.value}"]
    if verdict.strict_alphabet is not None:
        lines.append("strict over: " + ",".join(sorted(verdict.strict_alphabet)))
    if verdict.skew is not None:
        d = skew_to_dict(verdict.skew)
        lines.append(
            f"skew: v={d['directive']} x={d['x']} p={d['p']} mu={d['morphism']} suffix={d['suffix_len']}"
        )
    if verdict.s_prefix is not None:
        lines.append(f"s: {verdict.s_prefix}")
    if verdict.witness is not None:
        w = verdict.witness
        lines.append(
            f"witness: order={w.order.describe()} k={w.k} factor={w.factor} required={w.required} reason={w.reason}"
        )
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_construct(args) -> int:
    alphabet = parse_alphabet(args.alphabet)
    if args.prefix < 0:
        raise CLIError("--prefix must be >= 0")
    spec = parse_skew(alphabet, args.skew)
    stream = construct_skew(spec)
    word = stream.prefix(args.prefix)
    _emit(
        args,
        {"word": str(word), "length": len(word), "skew": skew_to_dict(spec)},
        str(word),
    )
    return 0


def _cmd_verify(args) -> int:
    alphabet = parse_alphabet(args.alphabet)
    horizon = args.horizon if args.horizon is not None else _default_horizon()
    checks: list[dict[str, Any]] = []
    if args.directive is not None:
        d = parse_directive(alphabet, args.directive)
        for i in range(1, max(args.i, 1) + 1):
            rec = shift_chain(d, i, horizon)
            checks.append({"check": "shift-chain", "i": i, "letter": rec.peeled_letter, "ok": rec.ok})
    elif args.skew is not None:
        spec = parse_skew(alphabet, args.skew)
        stream = construct_skew(spec)
        try:
            recovered = reconstruct_skew(stream, args.depth, horizon)
        except NotSkewForm as exc:
            raise InternalConsistencyError(f"round-trip failed: {exc}") from None
        same = construct_skew(recovered).raw(horizon) == stream.raw(horizon)
        if not same:
            raise InternalConsistencyError("round-trip regenerated a different word")
        checks.append(
            {"check": "skew-round-trip", "ok": True, "recovered": skew_to_dict(recovered)}
        )
    else:
        raise CLIError("verify needs --directive or --skew")
    payload = {"checks": checks}
    text = "\n".join(
        " ".join(f"{k}={v}" for k, v in c.items() if k != "recovered") for c in checks
    )
    _emit(args, payload, text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "min":
            return _cmd_extremal(args, greatest=False)
        if args.command == "max":
            return _cmd_extremal(args, greatest=True)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "construct":
            return _cmd_construct(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise CLIError(f"unknown command {args.command!r}")
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2
    except (CLIError, ParseError, SpecError, NotSkewForm, AlphabetError, LengthError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
