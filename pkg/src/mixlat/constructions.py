"""Builders that grow new structures out of existing ones.

Two constructions. `group_of_differences` completes a cancellative
A-structure to a group of formal differences; on a grid carrier every
class (a, b) with a + d = b + c reduces to the ambient element a - b, so
the completion is concrete. `extend_specific_order` transplants the
specific order of a positive A-structure onto an ambient monoid by
taking the sub-semigroup itself as the new positive set. Both return
ordinary structures every other checker accepts; side conditions come
back as verdicts instead of being silently assumed.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .axioms import PAIR_CAP, check_axiom
from .classify import classify_structure
from .clauses import member
from .elements import CarrierError, Element, render
from .envelopes import _kind_result, envelope_value
from .orders import OrderSpec
from .structures import StructureError, TwoOrderStructure, build_structure
from .verdicts import Verdict, fails, holds, unknown, witness_text
from .windows import Window


def _symmetrized(w: Window) -> Window:
    # differences of input elements must stay in view
    bounds = []
    for lo, hi in w.bounds:
        m = max(abs(lo), abs(hi))
        bounds.append((-m, m))
    return Window(tuple(bounds), q=w.q, search_scale=w.search_scale)


def group_of_differences(u: TwoOrderStructure,
                         window: Window | None = None) -> TwoOrderStructure:
    """The group of formal differences of a windowed A-structure.

    Pairs (a, b) and (c, d) are identified when a + d = b + c, and the
    lifted comparisons read (a, b) preceq (c, d) iff a + d preceq c + b.
    On a grid carrier each class reduces to the ambient element a - b,
    so the result is the ambient grid with the member restriction
    dropped and negation enabled, both order cones carried over
    unchanged. A finite cancellative carrier is already a group and only
    gains the negation flag. The default window of the result is the
    input window symmetrized around zero, so differences of in-window
    input elements remain visible.

    Refused with StructureError unless classification reports
    A-STRUCTURE Holds over the window; that verdict carries the
    cancellation and natural-ordering gates the construction leans on.
    """
    window = window or u.default_window
    report = classify_structure(u, window)
    gate = report.verdicts["A-STRUCTURE"]
    if not gate.holds:
        detail = gate.reason or "see the classification report"
        raise StructureError(
            f"{u.name}: the difference group needs A-STRUCTURE to hold "
            f"over the window, got {gate.outcome.value} ({detail})")
    c = u.carrier
    if c.kind == "finite":
        for i in range(len(c.names)):
            try:
                c.negate(Element((), (i,)))
            except CarrierError as exc:
                raise StructureError(
                    f"{u.name}: differences undefined, {exc}") from exc
        carrier = replace(c, has_negation=True)
        default = window
    else:
        carrier = replace(c, has_negation=True, member_clauses=())
        default = _symmetrized(window)
    return build_structure(f"diff-{u.name}", carrier, u.initial, u.specific,
                           default)


def zero_join_exists(s: TwoOrderStructure,
                     window: Window | None = None) -> Verdict:
    """x v 0 resolves for every window element.

    For a group with two orders this sweep is the practical windowed
    criterion for carrying the full mixed lattice structure, and the
    output of `group_of_differences` is expected to pass it.
    """
    ctx = s.context(window)
    zero = s.carrier.zero()
    for x in ctx.base:
        if envelope_value(ctx, "upper", x, zero, s.upper_hint) is None:
            return fails((x,), reason="x v 0 missing inside the window")
    return holds(scope=ctx.scope)


@dataclass(frozen=True)
class ExtensionResult:
    """An extended structure plus the two verdicts qualifying it.

    `hypothesis` reports whether every window element sits below some
    window member of the extending sub-semigroup in the new order; a
    missing dominator could always live beyond the window, so the
    negative outcome is Unknown, never Fails. `b_structure` is the
    windowed pair sweep for the least w with a sleq w + b, which is
    equivalent to upper envelope existence and independent of the
    hypothesis.
    """
    structure: TwoOrderStructure
    b_structure: Verdict
    hypothesis: Verdict


def extend_specific_order(u: TwoOrderStructure, w_carrier, w_initial: OrderSpec,
                          window: Window,
                          name: str | None = None) -> ExtensionResult:
    """Extend the specific order of a positive A-structure to an ambient
    monoid: a sleq b iff b = a + w for some member w, so the member
    clauses of the sub-semigroup become the positive set of the new
    specific order on the ambient carrier.

    Checked over the window and refused with StructureError on failure:
    the carriers share one grid shape, the sub-semigroup has member
    clauses and all its window members belong to the ambient carrier,
    classification of the input reports POSITIVE-A Holds, and the
    ambient initial order is naturally ordered with cancellation.
    """
    c = u.carrier
    if c.kind != "grid" or w_carrier.kind != "grid":
        raise StructureError("specific-order extension works on grid carriers")
    if (c.rank, c.moduli) != (w_carrier.rank, w_carrier.moduli):
        raise StructureError(
            f"{u.name}: carriers do not share a grid shape")
    if not c.member_clauses:
        raise StructureError(
            f"{u.name}: the sub-semigroup needs member clauses; an "
            "unrestricted grid gives no positive set to extend")

    report = classify_structure(u, window)
    gate = report.verdicts["POSITIVE-A"]
    if not gate.holds:
        detail = gate.reason or "see the classification report"
        raise StructureError(
            f"{u.name}: the extension needs POSITIVE-A to hold over the "
            f"window, got {gate.outcome.value} ({detail})")

    ext = build_structure(name or f"{u.name}-extended", w_carrier, w_initial,
                          OrderSpec("positive", clauses=c.member_clauses),
                          window)
    ctx = ext.context(window)

    for x in u.context(window).base:
        if not ctx.member(x):
            raise StructureError(
                f"{u.name}: member {render(x, c)} falls outside the ambient "
                "carrier; not an embedded sub-semigroup")
    # natural ordering is needed forward only: every initial-order jump must
    # be realized by a member. The reverse implication (as the NATORD-LEQ
    # classification axiom checks it) fails on every nontrivial group, and
    # the construction does not lean on it.
    sub = w_carrier.sub
    for a, b in ctx.tuples(2, PAIR_CAP, "natural-order"):
        if ctx.leq(a, b) and not ctx.member(sub(b, a)):
            raise StructureError(
                f"{ext.name}: the ambient carrier is not naturally ordered "
                f"over the window: the jump {witness_text((a, b), w_carrier)} "
                "is realized by no member")
    v = check_axiom(ctx, "CANC-LEQ")
    if not v.holds:
        raise StructureError(
            f"{ext.name}: the ambient initial order fails cancellation at "
            f"{witness_text(v.witness, w_carrier)}: {v.reason}")

    u_members = [x for x in ctx.base if member(c.member_clauses, x)]
    hypothesis: Verdict | None = None
    for z in ctx.base:
        if not any(ctx.sleq(z, w) for w in u_members):
            hypothesis = unknown(witness=(z,), scope=ctx.scope, reason=(
                "no window member of the sub-semigroup dominates this "
                "element in the extended order; one could exist beyond "
                "the window"))
            break
    hypothesis = hypothesis or holds(scope=ctx.scope)

    scope = ctx.tuples_scope(2, PAIR_CAP)
    b_verdict: Verdict | None = None
    first_unknown: Verdict | None = None
    for a, b in ctx.tuples(2, PAIR_CAP, "b-minimum"):
        res = _kind_result(ctx, "MIN-B", a, b)
        if res.value is not None:
            continue
        if res.certificate == "nonexistent-in-window":
            b_verdict = fails((a, b), reason=(
                f"no least w with a sleq w + b: {res.detail}"))
            break
        if first_unknown is None:
            first_unknown = unknown(witness=(a, b), scope=scope,
                                    reason=res.detail)
    b_verdict = b_verdict or first_unknown or holds(scope=scope)
    return ExtensionResult(ext, b_verdict, hypothesis)
