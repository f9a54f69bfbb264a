"""Taxonomy classification and substructure checks.

Twelve classes in two families. The semigroup family (A-STRUCTURE through
MLS, B-STRUCTURE, POSITIVE-B) first gates on the ambient axioms: natural
ordering with respect to the order on the envelope side and cancellation in
the other order. Only then does envelope existence over every in-window pair
decide the class. The group family (MLG through REGULAR) forms the
regularity ladder and needs a carrier with negation.

All verdicts are windowed: Holds means no in-window counterexample, Fails
carries a witness that re-evaluates to a violation. The two implication
chains are theorems, so a finished report is cross-checked against them and
an inconsistent report raises instead of being returned.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .axioms import PAIR_CAP, check_axiom
from .clauses import Clause, member as in_clauses, parse_clauses
from .elements import Carrier, Element, ball_key, norm, render, sort_key
from .envelopes import envelope_value
from .structures import (StructureError, TwoOrderStructure,
                         UnsupportedOperationError, build_structure)
from .verdicts import Verdict, fails, holds, unknown, verdict_line
from .windows import Window, WindowContext, WindowError

SEMIGROUP_CLASS_IDS = ("A-STRUCTURE", "POSITIVE-A", "WEAK-MLS", "MLS",
                       "B-STRUCTURE", "POSITIVE-B")
GROUP_CLASS_IDS = ("MLG", "PRE-NORMAL", "NORMAL", "PRE-REGULAR",
                   "QUASI-REGULAR", "REGULAR")
CLASS_IDS = SEMIGROUP_CLASS_IDS + GROUP_CLASS_IDS

# stronger class first; Holds must propagate to the right
IMPLICATION_CHAINS = (
    ("MLS", "WEAK-MLS", "POSITIVE-A", "A-STRUCTURE"),
    ("REGULAR", "QUASI-REGULAR", "PRE-REGULAR", "NORMAL", "PRE-NORMAL"))

SUBSET_KINDS = ("A-SUBSTRUCTURE", "B-SUBSTRUCTURE", "ML-SUBSEMIGROUP",
                "ML-SUBGROUP")


class ChainConsistencyError(RuntimeError):
    """The implication chains are theorems; a report violating one is a bug
    in the checkers, never a fact about the structure."""


class SubsetError(ValueError):
    pass


@dataclass(frozen=True)
class ClassificationReport:
    verdicts: dict[str, Verdict]
    window: Window
    notes: str = ""

    def lines(self, carrier: Carrier | None = None,
              ids: tuple[str, ...] = CLASS_IDS) -> list[str]:
        return [verdict_line(f"CLASS {cid}", self.verdicts[cid], carrier)
                for cid in ids]


@dataclass(frozen=True)
class SubsetSpec:
    """A subset of the carrier, by clauses or by explicit elements.

    Clause subsets are window-independent predicates; explicit subsets live
    inside whatever window they are checked against.
    """
    clauses: tuple[Clause, ...] | None = None
    elements: frozenset[Element] | None = None

    def __post_init__(self) -> None:
        if (self.clauses is None) == (self.elements is None):
            raise SubsetError("a subset needs clauses or elements, not both")

    @staticmethod
    def from_clauses(text: str, carrier: Carrier) -> "SubsetSpec":
        return SubsetSpec(clauses=parse_clauses(text, carrier))

    @staticmethod
    def from_elements(elements) -> "SubsetSpec":
        return SubsetSpec(elements=frozenset(elements))

    def predicate(self, ctx: WindowContext):
        if self.elements is not None:
            pool = self.elements
            return lambda x: x in pool
        clauses = self.clauses
        return lambda x: ctx.member(x) and in_clauses(clauses, x)


# -- shared sweeps ---------------------------------------------------------


def _pairs(ctx: WindowContext) -> tuple[tuple[Element, ...], ...]:
    return ctx.tuples(2, PAIR_CAP, "classify-pairs")


def _pair_scope(ctx: WindowContext) -> str:
    return ctx.tuples_scope(2, PAIR_CAP)


def _axiom_gate(ctx: WindowContext, axiom_ids: tuple[str, ...]) -> Verdict:
    memo = getattr(ctx, "_classify_axiom_memo", None)
    if memo is None:
        memo = ctx._classify_axiom_memo = {}
    for axiom_id in axiom_ids:
        v = memo.get(axiom_id)
        if v is None:
            v = memo[axiom_id] = check_axiom(ctx, axiom_id)
        if not v.holds:
            reason = f"prerequisite {axiom_id} fails"
            if v.reason:
                reason += f" ({v.reason})"
            if v.fails:
                return fails(v.witness, reason=reason)
            return unknown(scope=v.scope, reason=reason, witness=v.witness)
    return holds(scope=ctx.scope)


def _existence_sweep(ctx: WindowContext, which: str, hint) -> Verdict:
    side = "upper" if which == "upper" else "lower"
    for a, b in _pairs(ctx):
        if envelope_value(ctx, which, a, b, hint) is None:
            return fails((a, b),
                         reason=f"no {side} envelope inside the window")
    return holds(scope=_pair_scope(ctx))


def _positivity_sweep(ctx: WindowContext, which: str) -> Verdict:
    cmp = ctx.order(which)
    zero = ctx.carrier.zero()
    word = "x >= 0" if which == "initial" else "0 sleq x"
    for x in ctx.base:
        if not cmp(zero, x):
            return fails((x,), reason=f"{word} fails")
    return holds(scope=ctx.scope)


def _sum_law_sweep(ctx: WindowContext, upper_hint, lower_hint) -> Verdict:
    """x v y + y ^ x = x + y over all in-window pairs."""
    add = ctx.carrier.add
    first_unknown: Verdict | None = None
    for a, b in _pairs(ctx):
        up = envelope_value(ctx, "upper", a, b, upper_hint)
        lo = envelope_value(ctx, "lower", b, a, lower_hint)
        if up is None or lo is None:
            if first_unknown is None:
                first_unknown = unknown(
                    scope=_pair_scope(ctx), witness=(a, b),
                    reason="an envelope in the sum identity is unresolved")
            continue
        if add(up, lo) != add(a, b):
            return fails((a, b),
                         reason="x v y + y ^ x differs from x + y")
    return first_unknown or holds(scope=_pair_scope(ctx))


# -- the twelve classes ----------------------------------------------------


def classify_structure(s: TwoOrderStructure,
                       window: Window | None = None) -> ClassificationReport:
    ctx = s.context(window)
    zero = s.carrier.zero()
    if zero not in set(ctx.base):
        raise WindowError(f"{s.name}: classification window must contain zero")
    verdicts: dict[str, Verdict] = {}

    a_gate = _axiom_gate(ctx, ("NATORD-SLEQ", "CANC-LEQ"))
    a_struct = a_gate if not a_gate.holds else _existence_sweep(
        ctx, "upper", s.upper_hint)
    verdicts["A-STRUCTURE"] = a_struct
    verdicts["POSITIVE-A"] = (a_struct if not a_struct.holds
                              else _positivity_sweep(ctx, "initial"))
    weak = a_struct if not a_struct.holds else _existence_sweep(
        ctx, "lower", s.lower_hint)
    verdicts["WEAK-MLS"] = weak
    verdicts["MLS"] = weak if not weak.holds else _sum_law_sweep(
        ctx, s.upper_hint, s.lower_hint)

    b_gate = _axiom_gate(ctx, ("NATORD-LEQ", "CANC-SLEQ"))
    b_struct = b_gate if not b_gate.holds else _existence_sweep(
        ctx, "upper", s.upper_hint)
    verdicts["B-STRUCTURE"] = b_struct
    verdicts["POSITIVE-B"] = (b_struct if not b_struct.holds
                              else _positivity_sweep(ctx, "specific"))

    if not s.carrier.has_negation:
        unsupported = unknown(reason="unsupported: carrier has no negation")
        for cid in GROUP_CLASS_IDS:
            verdicts[cid] = unsupported
        notes = "group classes unsupported: carrier has no negation"
    else:
        _group_classes(s, ctx, verdicts)
        notes = ""

    _chain_check(verdicts)
    return ClassificationReport(verdicts, ctx.window, notes)


def _group_classes(s: TwoOrderStructure, ctx: WindowContext,
                   verdicts: dict[str, Verdict]) -> None:
    zero = s.carrier.zero()

    mlg = holds(scope=ctx.scope)
    for x in ctx.base:
        if envelope_value(ctx, "upper", x, zero, s.upper_hint) is None:
            mlg = fails((x,), reason="x v 0 missing inside the window")
            break
    verdicts["MLG"] = mlg

    pre_normal = holds(scope=ctx.scope)
    for x in ctx.base:
        if x != zero and ctx.sleq(zero, x) and ctx.leq(x, zero):
            pre_normal = fails(
                (x,), reason="nonzero element is specific-positive with an "
                             "initial-positive negative")
            break
    verdicts["PRE-NORMAL"] = pre_normal

    sp_not_p = next((x for x in ctx.base
                     if ctx.sleq(zero, x) and not ctx.leq(zero, x)), None)
    p_not_sp = next((x for x in ctx.base
                     if ctx.leq(zero, x) and not ctx.sleq(zero, x)), None)
    if sp_not_p is None or p_not_sp is None:
        verdicts["NORMAL"] = holds(scope=ctx.scope)
    else:
        verdicts["NORMAL"] = fails(
            (sp_not_p, p_not_sp),
            reason="neither positive set contains the other")
    if sp_not_p is None:
        verdicts["PRE-REGULAR"] = holds(scope=ctx.scope)
    else:
        verdicts["PRE-REGULAR"] = fails(
            (sp_not_p,),
            reason="specific-positive element that is not initial-positive")

    sp_members = [x for x in ctx.base if ctx.sleq(zero, x)]
    qr = _substructure_verdict(
        ctx, sp_members, lambda d: ctx.member(d) and ctx.sleq(zero, d),
        "ML-SUBSEMIGROUP", s.upper_hint, s.lower_hint)
    verdicts["QUASI-REGULAR"] = qr

    if not qr.holds:
        verdicts["REGULAR"] = qr
    else:
        verdicts["REGULAR"] = _generation_sweep(ctx, sp_members)


def _generation_sweep(ctx: WindowContext, sp_members: list[Element]) -> Verdict:
    """Every window element as a difference of two in-window specific-positive
    elements; an exhausted search is only ever Unknown, a decomposition may
    sit outside the window."""
    add = ctx.carrier.add
    in_base = set(ctx.base)
    sp_set = set(sp_members)
    for x in ctx.base:
        if not any(add(x, v) in in_base and add(x, v) in sp_set
                   for v in sp_members):
            return unknown(
                scope=ctx.scope, witness=(x,),
                reason="no in-window decomposition as a difference of "
                       "specific-positive elements")
    return holds(scope=ctx.scope)


def _chain_check(verdicts: dict[str, Verdict]) -> None:
    for chain in IMPLICATION_CHAINS:
        for stronger, weaker in zip(chain, chain[1:]):
            if verdicts[stronger].holds and not verdicts[weaker].holds:
                raise ChainConsistencyError(
                    f"internal-error: implication chain violated: {stronger} "
                    f"holds but {weaker} is "
                    f"{verdicts[weaker].outcome.value}")


# -- substructures ---------------------------------------------------------


def _difference(ctx: WindowContext, e: Element, a: Element) -> Element | None:
    """The d with a + d = e, or None when no window element works."""
    if ctx.carrier.has_negation:
        return ctx.carrier.sub(e, a)
    add = ctx.carrier.add
    for d in ctx.search:
        if add(a, d) == e:
            return d
    return None


def _member_pairs(members: list[Element]):
    if len(members) ** 2 <= PAIR_CAP:
        combos = list(itertools.product(members, members))
    else:
        # keep determinism under oversized subsets: exhaust the small ball
        side = max(1, int(PAIR_CAP ** 0.5))
        combos = list(itertools.product(members[:side], members[:side]))
    combos.sort(key=lambda ab: (max(norm(ab[0]), norm(ab[1])),
                                ball_key(ab[0]), ball_key(ab[1])))
    return combos


def _substructure_verdict(ctx: WindowContext, members: list[Element], pred,
                          kind: str, upper_hint, lower_hint) -> Verdict:
    zero = ctx.carrier.zero()
    if kind in ("A-SUBSTRUCTURE", "ML-SUBSEMIGROUP"):
        cone, cone_name = ctx.sleq, "specific"
    else:
        cone, cone_name = ctx.leq, "initial"
    if kind != "ML-SUBGROUP":
        for x in members:
            if not cone(zero, x):
                return fails((x,), reason=f"subset member is not "
                                          f"{cone_name}-positive")
    else:
        if not ctx.carrier.has_negation:
            raise UnsupportedOperationError(
                "ML-SUBGROUP needs a carrier with negation")
        for x in members:
            if not pred(ctx.carrier.negate(x)):
                return fails((x,), reason="subset member whose negative "
                                          "leaves the subset")

    first_unknown: Verdict | None = None

    def unresolved(a: Element, b: Element, what: str) -> Verdict:
        return unknown(scope=ctx.scope, witness=(a, b),
                       reason=f"{what} unresolved inside the window")

    for a, b in _member_pairs(members):
        up = envelope_value(ctx, "upper", a, b, upper_hint)
        if up is None:
            if first_unknown is None:
                first_unknown = unresolved(a, b, "upper envelope")
            continue
        if kind in ("A-SUBSTRUCTURE", "ML-SUBSEMIGROUP"):
            d = _difference(ctx, up, a)
            if d is None:
                if first_unknown is None:
                    first_unknown = unresolved(a, b, "difference x v y - x")
                continue
            if not pred(d):
                return fails((a, b), reason="x v y - x leaves the subset")
        elif kind == "B-SUBSTRUCTURE":
            d = _difference(ctx, up, b)
            if d is None:
                if first_unknown is None:
                    first_unknown = unresolved(a, b, "difference x v y - y")
                continue
            if not pred(d):
                return fails((a, b), reason="x v y - y leaves the subset")
        else:
            if not pred(up):
                return fails((a, b), reason="x v y leaves the subset")
        if kind in ("ML-SUBSEMIGROUP", "ML-SUBGROUP"):
            lo = envelope_value(ctx, "lower", a, b, lower_hint)
            if lo is None:
                if first_unknown is None:
                    first_unknown = unresolved(a, b, "lower envelope")
                continue
            if not pred(lo):
                return fails((a, b), reason="x ^ y leaves the subset")
    return first_unknown or holds(scope=ctx.scope)


def _checked_members(ctx: WindowContext, spec: SubsetSpec):
    pred = spec.predicate(ctx)
    members = [x for x in ctx.base if pred(x)]
    zero = ctx.carrier.zero()
    if zero not in set(members):
        raise SubsetError("subset rejected: zero is not a member")
    add = ctx.carrier.add
    in_base = set(ctx.base)
    for a, b in itertools.product(members, members):
        c = add(a, b)
        if c in in_base and not pred(c):
            raise SubsetError(
                f"subset rejected: not closed under addition inside the "
                f"window (witness {render(a, ctx.carrier)} + "
                f"{render(b, ctx.carrier)})")
    return members, pred


def classify_subset(s: TwoOrderStructure, spec: SubsetSpec, kind: str,
                    window: Window | None = None) -> Verdict:
    if kind not in SUBSET_KINDS:
        raise SubsetError(f"unknown substructure kind {kind!r}")
    ctx = s.context(window)
    members, pred = _checked_members(ctx, spec)
    return _substructure_verdict(ctx, members, pred, kind,
                                 s.upper_hint, s.lower_hint)


def restrict_structure(s: TwoOrderStructure, spec: SubsetSpec,
                       name: str | None = None,
                       window: Window | None = None,
                       has_negation: bool = False) -> TwoOrderStructure:
    """Rebuild a clause-form subset as a standalone structure with the
    inherited orders, so substructure verdicts can be compared against the
    subset classified in its own right."""
    if spec.clauses is None:
        raise StructureError("restriction needs a clause-form subset")
    if s.carrier.kind != "grid":
        raise StructureError("restriction is defined for grid carriers")
    ctx = s.context(window)
    _checked_members(ctx, spec)
    old = s.carrier.member_clauses
    if not old:
        merged = spec.clauses
    else:
        merged = tuple(Clause(c1.atoms + c2.atoms)
                       for c1 in old for c2 in spec.clauses)
    carrier = Carrier(kind="grid", rank=s.carrier.rank,
                      moduli=s.carrier.moduli, has_negation=has_negation,
                      member_clauses=merged)
    return build_structure(name or f"{s.name}|restricted", carrier,
                           s.initial, s.specific,
                           window or s.default_window)


# -- regular elements ------------------------------------------------------


def regular_elements(s: TwoOrderStructure, window: Window | None = None
                     ) -> tuple[tuple[Element, ...], Verdict]:
    """All window elements that split as u - v with both parts positive for
    both orders, plus the windowed envelope-closure verdict for that set."""
    if not s.carrier.has_negation:
        raise UnsupportedOperationError(
            f"{s.name}: regular elements need a carrier with negation")
    ctx = s.context(window)
    zero = s.carrier.zero()
    add = ctx.carrier.add
    both = [x for x in ctx.base if ctx.sleq(zero, x) and ctx.leq(zero, x)]
    both_set = set(both)
    in_base = set(ctx.base)
    regs = [x for x in ctx.base
            if any(add(x, v) in in_base and add(x, v) in both_set
                   for v in both)]
    reg_set = set(regs)

    verdict = holds(scope=ctx.scope)
    first_unknown: Verdict | None = None
    for a, b in _member_pairs(regs):
        for which in ("upper", "lower"):
            e = envelope_value(ctx, which, a, b,
                               s.upper_hint if which == "upper"
                               else s.lower_hint)
            if e is None:
                if first_unknown is None:
                    first_unknown = unknown(
                        scope=ctx.scope, witness=(a, b),
                        reason=f"{which} envelope unresolved inside the "
                               f"window")
                continue
            if e in in_base and e not in reg_set:
                return tuple(sorted(regs, key=sort_key)), fails(
                    (a, b), reason=f"{which} envelope of two regular "
                                   f"elements is not regular")
    if first_unknown is not None:
        verdict = first_unknown
    return tuple(sorted(regs, key=sort_key)), verdict
