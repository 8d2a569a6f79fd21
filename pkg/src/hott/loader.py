"""Driver: lower parsed modules into signature extensions and pragma runs.

Files form a flat, ordered namespace; one growing signature is threaded
through every item.  ``#fail`` inverts the outcome of its wrapped item,
which is attempted and rolled back.  Diagnostics raised while processing
an item that lacks a span of its own are stamped with the item's span.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .check import CheckError, check, check_declaration, infer, infer_universe
from .parser import (
    PragmaFail,
    RAssert,
    RCheck,
    RDef,
    REval,
    RFail,
    RPostulate,
    ResolveError,
    SurfaceItem,
    SurfaceModule,
    resolve,
)
from .pretty import pretty
from .reduce import ReductionBudget, conv, normalize, whnf
from .terms import (
    DEFAULT_MAX_STEPS,
    DEFINITION,
    EMPTY_CONTEXT,
    POSTULATE,
    Declaration,
    Nat,
    Signature,
    Term,
    as_int,
)


class AssertionFailed(Exception):
    def __init__(self, message: str, span):
        super().__init__(f"{span[0]}:{span[1]}: {message}" if span else message)
        self.span = span


class FailExpected(Exception):
    """A ``#fail`` item was accepted by the checker."""


@dataclass
class ProcessOptions:
    max_steps: int = DEFAULT_MAX_STEPS
    trace: bool = False
    print_normal_forms: bool = False
    out: Callable[[str], None] = field(default=lambda line: print(line))
    err: Callable[[str], None] = field(default=lambda line: None)


def _budget(opts: ProcessOptions) -> ReductionBudget:
    return ReductionBudget(max_steps=opts.max_steps)


def render_value(sig: Signature, value: Term, ty: Term, opts: ProcessOptions) -> list[str]:
    """Rendering for #eval and the eval command: closed Nat-typed results
    print as decimal numerals, everything else as concrete syntax."""
    lines = []
    ty_w = whnf(sig, ty, _budget(opts), unfold=True)
    n = as_int(value)
    if isinstance(ty_w, Nat) and n is not None:
        lines.append(str(n))
        if opts.print_normal_forms:
            lines.append(pretty(value, sugar_numerals=False))
    else:
        lines.append(pretty(value))
    return lines


def execute(sig: Signature, record, opts: ProcessOptions) -> Signature:
    """Run one resolved record against the signature."""
    if isinstance(record, RDef):
        decl = Declaration(record.name, record.type, record.body, DEFINITION)
        return check_declaration(sig, decl, _budget(opts))

    if isinstance(record, RPostulate):
        decl = Declaration(record.name, record.type, None, POSTULATE)
        return check_declaration(sig, decl, _budget(opts))

    if isinstance(record, RCheck):
        bud = _budget(opts)
        infer_universe(sig, EMPTY_CONTEXT, record.type, bud)
        check(sig, EMPTY_CONTEXT, record.term, record.type, bud)
        return sig

    if isinstance(record, REval):
        bud = _budget(opts)
        ty = infer(sig, EMPTY_CONTEXT, record.term, bud)
        value = normalize(sig, record.term, bud)
        for line in render_value(sig, value, ty, opts):
            opts.out(line)
        return sig

    if isinstance(record, RAssert):
        bud = _budget(opts)
        infer_universe(sig, EMPTY_CONTEXT, record.type, bud)
        check(sig, EMPTY_CONTEXT, record.lhs, record.type, bud)
        check(sig, EMPTY_CONTEXT, record.rhs, record.type, bud)
        equal = conv(sig, record.lhs, record.rhs, bud)
        if record.equal and not equal:
            raise AssertionFailed("assert-eq: sides are not judgmentally equal", record.span)
        if not record.equal and equal:
            raise AssertionFailed("assert-neq: sides are judgmentally equal", record.span)
        return sig

    if isinstance(record, RFail):
        outcome = attempt_item(sig, record.item, opts)
        if outcome is None:
            raise FailExpected(
                f"{record.span[0]}:{record.span[1]}: item wrapped in #fail was accepted"
            )
        if opts.trace:
            opts.err(f"#fail: rejected as expected [{outcome}]")
        return sig

    raise AssertionError(f"unknown record {record!r}")


def attempt_item(sig: Signature, item: SurfaceItem, opts: ProcessOptions) -> Optional[str]:
    """Try one surface item in isolation; the rejection rule name when it
    fails, None when it is accepted (the signature is discarded)."""
    module = SurfaceModule((item,), "<fail>")
    try:
        for record in resolve(module, sig):
            if isinstance(record, RFail):
                # nested #fail: it is accepted exactly when its own item fails
                inner = attempt_item(sig, record.item, opts)
                if inner is None:
                    return "fail-expected"
                continue
            sig = execute(sig, record, opts)
    except CheckError as e:
        return e.diagnostic.rule
    except ResolveError:
        return "unbound-identifier"
    except AssertionFailed:
        return "assertion-failed"
    return None


def _stamp_span(exc: Exception, span) -> None:
    if isinstance(exc, CheckError) and exc.diagnostic.span is None:
        exc.diagnostic.span = span


def process_module(
    sig: Signature, module: SurfaceModule, opts: Optional[ProcessOptions] = None
) -> Signature:
    opts = opts or ProcessOptions()
    for record in resolve(module, sig):
        started = time.perf_counter()
        try:
            sig = execute(sig, record, opts)
        except CheckError as e:
            _stamp_span(e, record.span)
            raise
        if opts.trace:
            label = getattr(record, "name", type(record).__name__)
            elapsed = (time.perf_counter() - started) * 1000.0
            opts.err(f"{module.path}: {label} ok ({elapsed:.1f} ms)")
    return sig


def fail_outcomes(
    sig: Signature, module: SurfaceModule, opts: Optional[ProcessOptions] = None
) -> list[tuple[SurfaceItem, Optional[str]]]:
    """For inspection by tests: run a module and report, for each #fail
    item, the diagnostic rule (or exception name) it was rejected with."""
    opts = opts or ProcessOptions()
    outcomes: list[tuple[SurfaceItem, Optional[str]]] = []
    for item in module.items:
        if isinstance(item, PragmaFail):
            outcomes.append((item, attempt_item(sig, item.item, opts)))
        else:
            single = SurfaceModule((item,), module.path)
            sig = process_module(sig, single, opts)
    return outcomes
