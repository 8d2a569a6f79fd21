"""Index calculus: shift, subst, scoping, and their algebra."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from hott.terms import (
    NAT,
    ZERO,
    App,
    Context,
    Declaration,
    KernelBug,
    Lambda,
    Signature,
    Succ,
    Var,
    numeral,
    as_int,
    shift,
    subst,
    well_scoped,
)

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from enumeration import random_scoped_term  # noqa: E402


def test_shift_free_variable():
    assert shift(Var(0), 0, 1) == Var(1)


def test_shift_bound_variable_unaffected():
    assert shift(Lambda(NAT, Var(0)), 0, 1) == Lambda(NAT, Var(0))


def test_shift_free_under_binder():
    assert shift(Lambda(NAT, Var(1)), 0, 1) == Lambda(NAT, Var(2))


def test_subst_direct_hit():
    assert subst(Var(0), 0, ZERO) == ZERO


def test_subst_decrements_above():
    assert subst(Var(1), 0, ZERO) == Var(0)


def test_subst_capture_avoidance():
    assert subst(Lambda(NAT, Var(1)), 0, Succ(ZERO)) == Lambda(NAT, Succ(ZERO))


def test_well_scoped():
    assert well_scoped(Var(0), 1)
    assert not well_scoped(Var(0), 0)
    assert well_scoped(Lambda(NAT, Var(0)), 0)


def test_shift_underflow_is_kernel_bug():
    with pytest.raises(KernelBug):
        shift(Var(0), 0, -1)


def test_numerals():
    assert as_int(numeral(7)) == 7
    assert as_int(Succ(Var(0))) is None


def test_context_lookup_shifts():
    ctx = Context().extend(NAT).extend(App(Var(0), ZERO))
    assert ctx.lookup(0) == App(Var(1), ZERO)
    assert ctx.lookup(1) == NAT


def test_signature_rejects_duplicates():
    sig = Signature().extend(Declaration("c", NAT, ZERO))
    with pytest.raises(KernelBug):
        sig.extend(Declaration("c", NAT, ZERO))


# -- exhaustive index algebra over a small fragment -------------------------


def _enumerate_raw(max_size: int, max_index: int = 2):
    """All terms built from Var(<3), Zero, Succ, App, Lambda(Nat, -)."""
    by_size = {1: [ZERO] + [Var(i) for i in range(max_index + 1)]}
    for n in range(2, max_size + 1):
        items = []
        items.extend(Succ(t) for t in by_size[n - 1])
        items.extend(Lambda(NAT, t) for t in by_size.get(n - 2, []))
        for k in range(1, n - 1):
            for f in by_size[k]:
                items.extend(App(f, a) for a in by_size[n - 1 - k])
        by_size[n] = items
    return [t for items in by_size.values() for t in items]


RAW_TERMS = _enumerate_raw(6)


def test_raw_enumeration_is_substantial():
    assert len(RAW_TERMS) > 500


def test_shift_composition():
    for t in RAW_TERMS:
        for c in (0, 1):
            assert shift(shift(t, c, 1), c, 2) == shift(t, c, 3)


def test_subst_cancels_shift_enumerated():
    s = Succ(Var(0))
    for t in RAW_TERMS:
        assert subst(shift(t, 0, 1), 0, s) == t


def test_subst_commutes_with_shift():
    # For c <= j: shifting after substitution equals substituting the
    # shifted parts at the displaced index.
    s = Succ(Var(0))
    for t in RAW_TERMS:
        for c, j in ((0, 0), (0, 1), (1, 1), (0, 2)):
            lhs = shift(subst(t, j, s), c, 2)
            rhs = subst(shift(t, c, 2), j + 2, shift(s, c, 2))
            assert lhs == rhs, (t, c, j)


def test_scoping_preserved_by_shift_and_subst():
    for t in RAW_TERMS:
        if well_scoped(t, 3):
            assert well_scoped(shift(t, 0, 2), 5)
            assert well_scoped(subst(t, 0, numeral(2)), 2)


# -- randomized properties ---------------------------------------------------


@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=24))
def test_subst_cancels_shift_random(seed, fuel):
    rng = random.Random(seed)
    t = random_scoped_term(rng, 2, fuel)
    s = random_scoped_term(rng, 2, 5)
    assert well_scoped(t, 2)
    assert subst(shift(t, 0, 1), 0, s) == t


@given(st.integers(min_value=0, max_value=10_000))
def test_random_terms_are_scoped(seed):
    rng = random.Random(seed)
    depth = rng.randrange(0, 4)
    t = random_scoped_term(rng, depth, 16)
    assert well_scoped(t, depth)
    assert well_scoped(shift(t, 0, 3), depth + 3)
