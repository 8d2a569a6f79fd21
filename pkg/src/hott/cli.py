"""Command-line entry point.

``hott check FILES...`` processes files in the given order, threading one
growing signature, and executes every pragma.  ``hott eval --expr E
FILES...`` additionally normalizes a closed expression in the resulting
signature and prints it (Nat-typed results print as decimal numerals).

Exit codes: 0 success; 1 type, conversion, assertion or budget failure;
2 lexer or parser failure; 3 usage or I/O failure.  Results go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .check import CheckError, infer
from .loader import AssertionFailed, FailExpected, ProcessOptions, process_module, render_value
from .parser import LexError, ParseError, Parser, ResolveError, resolve_expr, tokenize
from .reduce import BudgetExhausted, ReductionBudget, normalize
from .terms import DEFAULT_MAX_STEPS, EMPTY_CONTEXT, EMPTY_SIGNATURE, Signature


@dataclass
class RunConfig:
    command: str
    paths: list[str]
    max_steps: int = DEFAULT_MAX_STEPS
    trace: bool = False
    print_normal_forms: bool = False
    expr: Optional[str] = None
    jobs: int = 1


def _parse_file(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return Parser(tokenize(text)).parse_module(path)


def _parse_all(cfg: RunConfig):
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_parse_file, cfg.paths))
    return [_parse_file(path) for path in cfg.paths]


def _load(cfg: RunConfig, out, err) -> Signature:
    opts = ProcessOptions(
        max_steps=cfg.max_steps,
        trace=cfg.trace,
        print_normal_forms=cfg.print_normal_forms,
        out=out,
        err=err,
    )
    sig = EMPTY_SIGNATURE
    for module in _parse_all(cfg):
        sig = process_module(sig, module, opts)
    return sig


def cmd_check(cfg: RunConfig, out=print, err=None) -> int:
    err = err or (lambda line: print(line, file=sys.stderr))
    for path in cfg.paths:
        if not Path(path).is_file():
            err(f"error: no such file: {path}")
            return 3
    try:
        _load(cfg, out, err)
    except (LexError, ParseError) as e:
        err(f"error: {e}")
        return 2
    except (CheckError, ResolveError, AssertionFailed, FailExpected, BudgetExhausted) as e:
        err(f"error: {e}")
        return 1
    return 0


def cmd_eval(cfg: RunConfig, out=print, err=None) -> int:
    err = err or (lambda line: print(line, file=sys.stderr))
    if cfg.expr is None:
        err("error: eval requires --expr")
        return 3
    for path in cfg.paths:
        if not Path(path).is_file():
            err(f"error: no such file: {path}")
            return 3
    try:
        sig = _load(cfg, lambda line: None, err)  # pragma output suppressed
        from .parser import parse_expression

        surface = parse_expression(cfg.expr)
    except (LexError, ParseError) as e:
        err(f"error: {e}")
        return 2
    except (CheckError, ResolveError, AssertionFailed, FailExpected, BudgetExhausted) as e:
        err(f"error: {e}")
        return 1
    try:
        term = resolve_expr(surface, [], sig)
        budget = ReductionBudget(max_steps=cfg.max_steps)
        ty = infer(sig, EMPTY_CONTEXT, term, budget)
        value = normalize(sig, term, budget)
    except BudgetExhausted as e:
        err(f"error: {e}")
        return 1
    except (CheckError, ResolveError) as e:
        err(f"error: {e}")
        return 1
    opts = ProcessOptions(
        max_steps=cfg.max_steps, print_normal_forms=cfg.print_normal_forms
    )
    for line in render_value(sig, value, ty, opts):
        out(line)
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hott", description="Type checker and evaluator for .hott files"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("paths", nargs="*", help="input files, in dependency order")
        p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS,
                       help="reduction step budget (default %(default)s)")
        p.add_argument("--trace", action="store_true",
                       help="log one line per declaration to stderr")
        p.add_argument("--print-normal-forms", action="store_true",
                       help="also print constructor normal forms for Nat results")
        p.add_argument("--jobs", type=int, default=1,
                       help="parse input files with this many threads")

    check_p = sub.add_parser("check", help="check files and run their pragmas")
    common(check_p)
    eval_p = sub.add_parser("eval", help="normalize a closed expression")
    common(eval_p)
    eval_p.add_argument("--expr", help="expression to evaluate")
    return parser


def _dispatch(cfg: RunConfig) -> int:
    if cfg.command == "check":
        if not cfg.paths:
            print("error: check requires at least one file", file=sys.stderr)
            return 3
        return cmd_check(cfg)
    return cmd_eval(cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 3 if e.code not in (0, None) else 0
    cfg = RunConfig(
        command=args.command,
        paths=list(args.paths),
        max_steps=args.max_steps,
        trace=args.trace,
        print_normal_forms=args.print_normal_forms,
        expr=getattr(args, "expr", None),
        jobs=args.jobs,
    )
    # Terms are trees whose depth the recursion tracks; a worker thread
    # with a large stack lifts the ceiling far beyond the main thread's.
    import threading

    result: list[int] = []

    def work() -> None:
        sys.setrecursionlimit(200_000)
        try:
            result.append(_dispatch(cfg))
        except RecursionError:
            print("error: term nesting exceeds interpreter capacity", file=sys.stderr)
            result.append(1)

    try:
        threading.stack_size(512 * 1024 * 1024)
    except (ValueError, RuntimeError):
        pass
    worker = threading.Thread(target=work)
    worker.start()
    worker.join()
    return result[0]


if __name__ == "__main__":
    sys.exit(main())
