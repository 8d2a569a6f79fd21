"""Pretty-printing core terms back to concrete syntax.

Printing inverts resolution: re-parsing and re-resolving printed output
yields a structurally equal term.  Motive binders produced by the
resolver have the shape ``f^1 0`` and print as ``f``; binders that lost
that shape print as a lambda whose domain is reconstructed when the
eliminator fixes it (Nat, Unit, Empty) and as the placeholder ``_``
otherwise.
"""

from __future__ import annotations

from .terms import (
    App,
    Const,
    Coprod,
    Empty,
    Id,
    IndCoprod,
    IndEmpty,
    IndEq,
    IndNat,
    IndSigma,
    IndTrunc,
    IndUnit,
    IndW,
    Inl,
    Inr,
    Lambda,
    Nat,
    Pair,
    Pi,
    Refl,
    Sigma,
    Star,
    Succ,
    Term,
    Tree,
    Trunc,
    TruncIn,
    Unit,
    Universe,
    Var,
    W,
    Zero,
    as_int,
    shift,
    subterms,
)

_ATOM = 4
_APP = 3
_PLUS = 2
_EXPR = 0


def _const_names(t: Term) -> set[str]:
    names: set[str] = set()

    def walk(u: Term) -> None:
        if isinstance(u, Const):
            names.add(u.name)
        for sub, _ in subterms(u):
            walk(sub)

    walk(t)
    return names


def _uncontract(binder: Term) -> Term | None:
    """Invert the resolver's motive wrapping ``App(f^1, Var 0)``."""
    if isinstance(binder, App) and binder.arg == Var(0) and not _uses_var0(binder.fn):
        return shift(binder.fn, 1, -1)
    return None


def _uses_var0(t: Term, depth: int = 0) -> bool:
    if isinstance(t, Var):
        return t.index == depth
    return any(_uses_var0(sub, depth + k) for sub, k in subterms(t))


class _Printer:
    def __init__(self, avoid: set[str], sugar_numerals: bool = True):
        self.avoid = avoid
        self.sugar_numerals = sugar_numerals
        self.counter = 0

    def fresh(self) -> str:
        while True:
            name = f"x{self.counter}"
            self.counter += 1
            if name not in self.avoid:
                return name

    def binder_fn(self, binder: Term, env: list[str], domain: str | None) -> str:
        """Print a one-variable binder as a function expression atom."""
        fn = _uncontract(binder)
        if fn is not None:
            return self.atom(fn, env)
        name = self.fresh()
        dom = domain if domain is not None else "_"
        return f"(\\({name} : {dom}). {self.expr(binder, env + [name])})"

    def expr(self, t: Term, env: list[str]) -> str:
        return self.show(t, env, _EXPR)

    def atom(self, t: Term, env: list[str]) -> str:
        return self.show(t, env, _ATOM)

    def show(self, t: Term, env: list[str], prec: int) -> str:
        s, level = self.render(t, env)
        if level < prec:
            return f"({s})"
        return s

    def render(self, t: Term, env: list[str]) -> tuple[str, int]:
        if isinstance(t, Var):
            if t.index < len(env):
                return env[-1 - t.index], _ATOM
            return f"!{t.index}", _ATOM
        if isinstance(t, Const):
            return t.name, _ATOM
        if isinstance(t, Universe):
            return f"Type {t.level}", _APP
        if isinstance(t, Nat):
            return "Nat", _ATOM
        if isinstance(t, Unit):
            return "Unit", _ATOM
        if isinstance(t, Empty):
            return "Empty", _ATOM
        if isinstance(t, Zero):
            return ("0" if self.sugar_numerals else "zero"), _ATOM
        if isinstance(t, Star):
            return "star", _ATOM
        if isinstance(t, Refl):
            return "refl", _ATOM
        if isinstance(t, Succ):
            if self.sugar_numerals:
                n = as_int(t)
                if n is not None:
                    return str(n), _ATOM
            return f"succ {self.atom(t.pred, env)}", _APP
        if isinstance(t, Lambda):
            name = self.fresh()
            dom = self.expr(t.domain, env)
            return f"\\({name} : {dom}). {self.expr(t.body, env + [name])}", _EXPR
        if isinstance(t, Pi):
            if _uses_var0(t.codomain):
                name = self.fresh()
                dom = self.expr(t.domain, env)
                return f"({name} : {dom}) -> {self.expr(t.codomain, env + [name])}", _EXPR
            dom = self.show(t.domain, env, _PLUS)
            cod = self.expr(shift(t.codomain, 1, -1), env)
            return f"{dom} -> {cod}", _EXPR
        if isinstance(t, Sigma):
            name = self.fresh()
            first = self.expr(t.first, env)
            return f"Sig ({name} : {first}), {self.expr(t.second, env + [name])}", _EXPR
        if isinstance(t, App):
            fn = self.show(t.fn, env, _APP)
            return f"{fn} {self.atom(t.arg, env)}", _APP
        if isinstance(t, Coprod):
            left = self.show(t.left, env, _APP)
            right = self.show(t.right, env, _PLUS)
            return f"{left} + {right}", _PLUS
        if isinstance(t, Pair):
            return f"pair {self.atom(t.fst, env)} {self.atom(t.snd, env)}", _APP
        if isinstance(t, Inl):
            return f"inl {self.atom(t.value, env)}", _APP
        if isinstance(t, Inr):
            return f"inr {self.atom(t.value, env)}", _APP
        if isinstance(t, Id):
            return (
                f"Id {self.atom(t.type, env)} {self.atom(t.lhs, env)} {self.atom(t.rhs, env)}",
                _APP,
            )
        if isinstance(t, W):
            shapes = self.atom(t.shapes, env)
            arities = self.binder_fn(t.arities, env, self.expr(t.shapes, env))
            return f"W {shapes} {arities}", _APP
        if isinstance(t, Tree):
            return f"tree {self.atom(t.shape, env)} {self.atom(t.components, env)}", _APP
        if isinstance(t, Trunc):
            return f"Trunc {self.atom(t.type, env)}", _APP
        if isinstance(t, TruncIn):
            return f"eta {self.atom(t.value, env)}", _APP
        if isinstance(t, IndNat):
            parts = [
                self.binder_fn(t.motive, env, "Nat"),
                self.atom(t.base, env),
                self.atom(t.step, env),
                self.atom(t.scrutinee, env),
            ]
            return "ind-nat " + " ".join(parts), _APP
        if isinstance(t, IndSigma):
            parts = [
                self.binder_fn(t.motive, env, None),
                self.atom(t.step, env),
                self.atom(t.scrutinee, env),
            ]
            return "ind-sigma " + " ".join(parts), _APP
        if isinstance(t, IndUnit):
            parts = [
                self.binder_fn(t.motive, env, "Unit"),
                self.atom(t.point, env),
                self.atom(t.scrutinee, env),
            ]
            return "ind-unit " + " ".join(parts), _APP
        if isinstance(t, IndEmpty):
            parts = [self.binder_fn(t.motive, env, "Empty"), self.atom(t.scrutinee, env)]
            return "ind-empty " + " ".join(parts), _APP
        if isinstance(t, IndCoprod):
            parts = [
                self.binder_fn(t.motive, env, None),
                self.atom(t.on_left, env),
                self.atom(t.on_right, env),
                self.atom(t.scrutinee, env),
            ]
            return "ind-sum " + " ".join(parts), _APP
        if isinstance(t, IndEq):
            parts = [
                self.motive2(t.motive, env),
                self.atom(t.base, env),
                self.atom(t.center, env),
                self.atom(t.endpoint, env),
                self.atom(t.path, env),
            ]
            return "ind-eq " + " ".join(parts), _APP
        if isinstance(t, IndW):
            parts = [
                self.binder_fn(t.motive, env, None),
                self.atom(t.step, env),
                self.atom(t.scrutinee, env),
            ]
            return "ind-w " + " ".join(parts), _APP
        if isinstance(t, IndTrunc):
            parts = [
                self.binder_fn(t.motive, env, None),
                self.atom(t.point, env),
                self.atom(t.coherence, env),
                self.atom(t.scrutinee, env),
            ]
            return "ind-trunc " + " ".join(parts), _APP
        raise AssertionError(f"unprintable term {t!r}")

    def motive2(self, binder: Term, env: list[str]) -> str:
        """Two-variable motive: invert ``App(App(f^2, Var 1), Var 0)``."""
        if (
            isinstance(binder, App)
            and binder.arg == Var(0)
            and isinstance(binder.fn, App)
            and binder.fn.arg == Var(1)
            and not _uses_var0(binder.fn.fn)
            and not _uses_var0(binder.fn.fn, depth=1)
        ):
            return self.atom(shift(binder.fn.fn, 2, -2), env)
        n1, n2 = self.fresh(), self.fresh()
        body = self.expr(binder, env + [n1, n2])
        return f"(\\({n1} : _). \\({n2} : _). {body})"


def pretty(t: Term, env: list[str] | None = None, sugar_numerals: bool = True) -> str:
    printer = _Printer(_const_names(t), sugar_numerals)
    return printer.expr(t, env or [])
