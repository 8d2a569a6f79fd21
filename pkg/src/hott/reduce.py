"""Reduction and judgmental equality.

``whnf`` contracts head redexes (beta, all iota rules, and definition
unfolding where a constant blocks progress).  ``normalize`` produces full
beta/iota/delta-normal forms.  ``conv`` decides judgmental equality of
well-typed terms, with eta for Pi and for no other former.

The theory has no general fixpoints, so every well-typed term normalizes;
the step budget turns a kernel bug or an adversarial input into an error
instead of a hang.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .terms import (
    DEFAULT_MAX_STEPS,
    App,
    Const,
    IndCoprod,
    IndEq,
    IndNat,
    IndSigma,
    IndTrunc,
    IndUnit,
    IndW,
    Inl,
    Inr,
    Lambda,
    Pair,
    Refl,
    Signature,
    Star,
    Succ,
    Term,
    Tree,
    TruncIn,
    Universe,
    Var,
    Zero,
    shift,
    subst,
    subterms,
)


class BudgetExhausted(Exception):
    def __init__(self, steps: int):
        super().__init__(f"reduction budget exhausted after {steps} steps")
        self.steps = steps


@dataclass
class ReductionBudget:
    max_steps: int = DEFAULT_MAX_STEPS
    steps_used: int = 0

    def tick(self) -> None:
        self.steps_used += 1
        if self.steps_used > self.max_steps:
            raise BudgetExhausted(self.steps_used)


def _unfold(sig: Signature, t: Term) -> Term | None:
    """Body of a defined constant, or None when ``t`` is not unfoldable."""
    if isinstance(t, Const):
        decl = sig.lookup(t.name)
        if decl is not None and decl.body is not None:
            return decl.body
    return None


def whnf(sig: Signature, t: Term, budget: ReductionBudget, unfold: bool = False) -> Term:
    """Weak head normal form.

    A defined constant in head position unfolds only when it blocks a
    redex (function position, eliminator scrutinee); a bare defined
    constant at the top is left alone unless ``unfold`` is set, so that
    conversion can compare equal-named constants without unfolding.
    """
    while True:
        if isinstance(t, App):
            fn = whnf(sig, t.fn, budget, unfold=True)
            if isinstance(fn, Lambda):
                budget.tick()
                t = subst(fn.body, 0, t.arg)
                continue
            return t if fn is t.fn else App(fn, t.arg)

        if isinstance(t, IndNat):
            s = whnf(sig, t.scrutinee, budget, unfold=True)
            if isinstance(s, Zero):
                budget.tick()
                t = t.base
                continue
            if isinstance(s, Succ):
                budget.tick()
                t = App(App(t.step, s.pred), IndNat(t.motive, t.base, t.step, s.pred))
                continue
            return t if s is t.scrutinee else IndNat(t.motive, t.base, t.step, s)

        if isinstance(t, IndSigma):
            s = whnf(sig, t.scrutinee, budget, unfold=True)
            if isinstance(s, Pair):
                budget.tick()
                t = App(App(t.step, s.fst), s.snd)
                continue
            return t if s is t.scrutinee else IndSigma(t.motive, t.step, s)

        if isinstance(t, IndUnit):
            s = whnf(sig, t.scrutinee, budget, unfold=True)
            if isinstance(s, Star):
                budget.tick()
                t = t.point
                continue
            return t if s is t.scrutinee else IndUnit(t.motive, t.point, s)

        if isinstance(t, IndCoprod):
            s = whnf(sig, t.scrutinee, budget, unfold=True)
            if isinstance(s, Inl):
                budget.tick()
                t = App(t.on_left, s.value)
                continue
            if isinstance(s, Inr):
                budget.tick()
                t = App(t.on_right, s.value)
                continue
            return t if s is t.scrutinee else IndCoprod(t.motive, t.on_left, t.on_right, s)

        if isinstance(t, IndEq):
            p = whnf(sig, t.path, budget, unfold=True)
            if isinstance(p, Refl):
                budget.tick()
                t = t.center
                continue
            return t if p is t.path else IndEq(t.base, t.motive, t.center, t.endpoint, p)

        if isinstance(t, IndW):
            s = whnf(sig, t.scrutinee, budget, unfold=True)
            if isinstance(s, Tree):
                comps = whnf(sig, s.components, budget, unfold=True)
                # The recursive branch is a function over the arity of the
                # tree; its domain annotation comes from the components
                # function, so the rule fires once that function exposes
                # its lambda (always the case for closed canonical trees).
                if isinstance(comps, Lambda):
                    budget.tick()
                    rec = Lambda(
                        comps.domain,
                        IndW(
                            shift(t.motive, 1, 1),
                            shift(t.step, 0, 1),
                            App(shift(comps, 0, 1), Var(0)),
                        ),
                    )
                    t = App(App(App(t.step, s.shape), comps), rec)
                    continue
                s = Tree(s.shape, comps)
            return t if s is t.scrutinee else IndW(t.motive, t.step, s)

        if isinstance(t, IndTrunc):
            s = whnf(sig, t.scrutinee, budget, unfold=True)
            if isinstance(s, TruncIn):
                budget.tick()
                t = App(t.point, s.value)
                continue
            return t if s is t.scrutinee else IndTrunc(t.motive, t.point, t.coherence, s)

        if unfold:
            body = _unfold(sig, t)
            if body is not None:
                budget.tick()
                t = body
                continue
        return t


def normalize(sig: Signature, t: Term, budget: ReductionBudget) -> Term:
    """Full beta/iota/delta-normal form (recurses under binders)."""
    t = whnf(sig, t, budget, unfold=True)
    if not type(t).BINDERS:
        return t
    children = [normalize(sig, sub, budget) for sub, _ in subterms(t)]
    old = [getattr(t, f.name) for f in fields(t)]
    if all(a is b for a, b in zip(old, children)):
        return t
    return type(t)(*children)


def conv(sig: Signature, t1: Term, t2: Term, budget: ReductionBudget) -> bool:
    """Decide judgmental equality of two terms of a common type.

    Both sides are reduced to WHNF and compared head-first; when exactly
    one side is a lambda the other is eta-expanded.  Equal-named constants
    compare equal without unfolding; unfolding happens only on head
    mismatch.
    """
    if t1 == t2:
        return True
    a = whnf(sig, t1, budget)
    b = whnf(sig, t2, budget)
    if a == b:
        return True

    if type(a) is type(b):
        if isinstance(a, Const):
            # Same name is definitionally reflexive; different names fall
            # through to delta below.
            if a.name == b.name:
                return True
        elif isinstance(a, (Var, Universe)):
            return a == b
        elif isinstance(a, Lambda):
            # The common type forces the domains; compare bodies.
            return conv(sig, a.body, b.body, budget)
        else:
            subs_a = list(subterms(a))
            subs_b = list(subterms(b))
            if len(subs_a) == len(subs_b):
                return all(
                    conv(sig, x, y, budget) for (x, _), (y, _) in zip(subs_a, subs_b)
                )
            return False

    if isinstance(a, Lambda) and not isinstance(b, Lambda):
        return conv(sig, a.body, App(shift(b, 0, 1), Var(0)), budget)
    if isinstance(b, Lambda) and not isinstance(a, Lambda):
        return conv(sig, App(shift(a, 0, 1), Var(0)), b.body, budget)

    body = _unfold(sig, a)
    if body is not None:
        return conv(sig, body, b, budget)
    body = _unfold(sig, b)
    if body is not None:
        return conv(sig, a, body, budget)
    return False
