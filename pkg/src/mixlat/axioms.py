"""Axiom checks over a window context.

Two layers:

  * order_violation / carrier_violation: the make-or-break checks run when a
    structure is built (partial order laws, translation compatibility,
    closure of the member set). They return a labelled witness rather than a
    Verdict because a violation rejects the structure outright.

  * check_axiom: the three-valued checks used by classification
    (PO-COMPAT, CANC-LEQ, CANC-SLEQ, NATORD-LEQ, NATORD-SLEQ).

Quantifier sweeps run in ball order over the window, so the reported witness
is always the one with the smallest largest component.
"""
from __future__ import annotations

from .elements import Element
from .verdicts import Verdict, fails, holds
from .windows import WindowContext

PAIR_CAP = 40000
TRIPLE_CAP = 20000

AXIOM_IDS = ("PO-COMPAT", "CANC-LEQ", "CANC-SLEQ", "NATORD-LEQ", "NATORD-SLEQ")


class AxiomError(ValueError):
    pass


def check_axiom(ctx: WindowContext, axiom_id: str,
                pair_cap: int = PAIR_CAP, triple_cap: int = TRIPLE_CAP) -> Verdict:
    if axiom_id == "PO-COMPAT":
        return _check_compat(ctx, triple_cap)
    if axiom_id in ("CANC-LEQ", "CANC-SLEQ"):
        which = "initial" if axiom_id == "CANC-LEQ" else "specific"
        return _check_cancellation(ctx, which, triple_cap, axiom_id)
    if axiom_id in ("NATORD-LEQ", "NATORD-SLEQ"):
        which = "initial" if axiom_id == "NATORD-LEQ" else "specific"
        return _check_natural_order(ctx, which, pair_cap, axiom_id)
    raise AxiomError(f"unknown axiom id {axiom_id!r}")


def _check_compat(ctx: WindowContext, triple_cap: int) -> Verdict:
    if ctx.initial.style == "positive" and ctx.specific.style == "positive":
        # both order tests depend only on the ambient difference, which
        # translation leaves unchanged
        return holds(scope=ctx.scope, reason="translation-invariant by construction")
    add = ctx.carrier.add
    for u, v, w in ctx.tuples(3, triple_cap, "PO-COMPAT"):
        uw, vw = add(u, w), add(v, w)
        if ctx.leq(u, v) and not ctx.leq(uw, vw):
            return fails((u, v, w), reason="initial order not preserved by translation")
        if ctx.sleq(u, v) and not ctx.sleq(uw, vw):
            return fails((u, v, w), reason="specific order not preserved by translation")
    return holds(scope=ctx.tuples_scope(3, triple_cap))


def _check_cancellation(ctx: WindowContext, which: str, triple_cap: int,
                        label: str) -> Verdict:
    cmp = ctx.order(which)
    add = ctx.carrier.add
    for u, v, w in ctx.tuples(3, triple_cap, label):
        if cmp(u, v) != cmp(add(u, w), add(v, w)):
            return fails((u, v, w), reason="order and its translate disagree")
    return holds(scope=ctx.tuples_scope(3, triple_cap))


def _divisible(ctx: WindowContext, u: Element, v: Element) -> bool:
    """Whether some carrier member s solves v = u + s. Exact on grids: the
    ambient difference is the only candidate. Exact on finite carriers: all
    elements are scanned."""
    if ctx.carrier.kind == "grid":
        return ctx.member(ctx.carrier.sub(v, u))
    add = ctx.carrier.add
    return any(add(u, s) == v for s in ctx.search)


def _check_natural_order(ctx: WindowContext, which: str, pair_cap: int,
                         label: str) -> Verdict:
    cmp = ctx.order(which)
    for u, v in ctx.tuples(2, pair_cap, label):
        below, div = cmp(u, v), _divisible(ctx, u, v)
        if below and not div:
            return fails((u, v), reason="below but no member difference")
        if div and not below:
            return fails((u, v), reason="member difference exists but not below")
    return holds(scope=ctx.tuples_scope(2, pair_cap))


# -- build-time validation -------------------------------------------------

def order_violation(ctx: WindowContext, which: str,
                    pair_cap: int = PAIR_CAP, triple_cap: int = TRIPLE_CAP):
    """First failure among reflexivity, antisymmetry, transitivity, and
    translation compatibility for one order, or None."""
    cmp = ctx.order(which)
    for a in ctx.base:
        if not cmp(a, a):
            return ("reflexivity", (a,))
    for a, b in ctx.tuples(2, pair_cap, f"antisym-{which}"):
        if a != b and cmp(a, b) and cmp(b, a):
            return ("antisymmetry", (a, b))
    spec = ctx.initial if which == "initial" else ctx.specific
    if spec.style == "pairs":
        add = ctx.carrier.add
        for u, v, w in ctx.tuples(3, triple_cap, f"compat-{which}"):
            if cmp(u, v) and not cmp(add(u, w), add(v, w)):
                return ("translation compatibility", (u, v, w))
        # pairs closures are transitive by construction
        return None
    for a, b, c in ctx.tuples(3, triple_cap, f"trans-{which}"):
        if cmp(a, b) and cmp(b, c) and not cmp(a, c):
            return ("transitivity", (a, b, c))
    # positive-set orders are translation compatible by construction
    return None


def carrier_violation(ctx: WindowContext, pair_cap: int = PAIR_CAP):
    """Monoid laws and member-set closure. Finite tables are checked in full;
    grid member sets are checked over window pairs (sums stay inside the
    search box, where membership is decidable)."""
    carrier = ctx.carrier
    add = carrier.add
    if carrier.kind == "finite":
        elems = [Element((), (i,)) for i in range(carrier.size)]
        zero = carrier.zero()
        for x in elems:
            if add(x, zero) != x:
                return ("neutral element", (x,))
        for x in elems:
            for y in elems:
                if add(x, y) != add(y, x):
                    return ("commutativity", (x, y))
        for x in elems:
            for y in elems:
                for z in elems:
                    if add(add(x, y), z) != add(x, add(y, z)):
                        return ("associativity", (x, y, z))
        return None
    if not ctx.member(carrier.zero()):
        return ("zero membership", (carrier.zero(),))
    if carrier.member_clauses:
        for a, b in ctx.tuples(2, pair_cap, "member-closure"):
            if not ctx.member(add(a, b)):
                return ("member-set closure under addition", (a, b))
    if carrier.has_negation:
        for a in ctx.base:
            if not ctx.member(carrier.negate(a)):
                return ("member-set closure under negation", (a,))
    return None
