"""Mixed envelopes and their order-theoretic characterizations.

Both envelopes take their extremum with respect to the initial order, and
the first argument always carries the specific-order constraint:

    upper(x, y) = least w   with  w above x (specific), w above y (initial)
    lower(x, y) = greatest w with  w below x (specific), w below y (initial)

On finite carriers the defining sets are enumerated in full, so results are
exact. On grid carriers candidates are generated inside the scaled search
box by shifting the precomputed positive-set cones; a reported value is then
the least (resp. greatest) member of the in-window defining set, and
nonexistence means nonexistence within the window only.

The characterization extrema re-derive the same values from minimum/maximum
descriptions over translated defining sets (min over {w: u <= w+v} and its
relatives). `oracle_cross_check` recomputes every kind whose hypotheses the
structure satisfies and asserts the linking equations tying each one back to
the envelopes.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable

from .axioms import check_axiom
from .elements import Element, ball_key, render
from .structures import TwoOrderStructure
from .verdicts import Verdict, fails, holds, unknown
from .windows import Window, WindowContext

SAMPLE_LIMIT = 16

UPPER = "UPPER-ENV"
LOWER = "LOWER-ENV"
EXTREMUM_KINDS = (
    UPPER,
    LOWER,
    "MIN-A",
    "MIN-A-CONSTRAINED",
    "MIN-B",
    "MIN-B-CONSTRAINED",
    "MAX-W-A",
    "MAX-W-B",
    "MIN-G",
    "MIN-G-DUAL",
)


class EnvelopeError(ValueError):
    pass


@dataclass(frozen=True)
class EnvelopeResult:
    """Outcome of one extremum computation.

    certificate: exact | window-verified | nonexistent-in-window | unknown.
    The detail text distinguishes an empty in-window defining set from a
    nonempty one without a least (resp. greatest) member, and records how a
    hint was handled. constraint_set_sample holds up to 16 smallest members
    of the in-window defining set.
    """

    value: Element | None
    certificate: str
    detail: str
    constraint_set_sample: tuple[Element, ...]
    scope: str

    @property
    def exists(self) -> bool:
        return self.value is not None


# -- defining sets ---------------------------------------------------------


def _candidates(ctx: WindowContext, gen_which: str, anchor_fn, sign: int,
                gen_pred: Callable[[Element], bool],
                rest_pred: Callable[[Element], bool]) -> list[Element]:
    """In-window elements satisfying both predicates, in ball order.

    `gen_pred` must be the half of the condition that says the `gen_which`
    order relates the candidate to the anchor in the `sign` direction; on a
    grid carrier with a positive-style generating order it holds for every
    anchor +/- cone member by exact componentwise arithmetic, so only
    `rest_pred` is re-checked there.  This touches a cone's worth of points
    instead of the whole search box.  Falls back to the direct scan (both
    predicates) for finite carriers, pairs-style generating orders, and
    anchors outside the search box (the cone then no longer covers all
    in-window solutions).
    """
    gen = ctx.initial if gen_which == "initial" else ctx.specific
    if ctx.carrier.kind != "finite" and gen.style == "positive":
        anchor = anchor_fn()
        if ctx.in_search_box(anchor):
            # a cone member whose norm exceeds every per-axis allowance of
            # the anchor cannot translate back into the search box, and the
            # cone is norm-sorted, so the tail can be cut wholesale
            limit = max((max(hi - a, a - lo) for a, (lo, hi)
                         in zip(anchor.coords, ctx.search_box)), default=None)
            if anchor == ctx.zero:
                # anchor +/- c is c itself (or its negation); both lists are
                # pre-sorted in ball order and filtering preserves that
                cone, norms = ctx.cone_with_norms(gen_which, negated=sign < 0)
                end = len(cone) if limit is None else bisect_right(norms, limit)
                return [w for w in cone[:end]
                        if ctx.in_search_box(w) and ctx.member(w) and rest_pred(w)]
            cone, norms = ctx.cone_with_norms(gen_which)
            op = ctx.carrier.add if sign > 0 else ctx.carrier.sub
            end = len(cone) if limit is None else bisect_right(norms, limit)
            out = []
            for c in cone[:end]:
                w = op(anchor, c)
                if ctx.in_search_box(w) and ctx.member(w) and rest_pred(w):
                    out.append(w)
            out.sort(key=ball_key)
            return out
    return [w for w in ctx.search if gen_pred(w) and rest_pred(w)]


def _upper_set(ctx: WindowContext, x: Element, y: Element) -> list[Element]:
    return _candidates(ctx, "specific", lambda: x, +1,
                       lambda w: ctx.sleq(x, w), lambda w: ctx.leq(y, w))


def _lower_set(ctx: WindowContext, x: Element, y: Element) -> list[Element]:
    return _candidates(ctx, "specific", lambda: x, -1,
                       lambda w: ctx.sleq(w, x), lambda w: ctx.leq(w, y))


def _least(ctx: WindowContext, cands: list[Element]) -> Element | None:
    """The least member under the initial order, or None.

    One decreasing-replacement pass ends at a minimal member; the verify pass
    then decides least versus merely minimal.
    """
    best = cands[0]
    for w in cands[1:]:
        if ctx.leq(w, best):
            best = w
    for w in cands:
        if not ctx.leq(best, w):
            return None
    return best


def _greatest(ctx: WindowContext, cands: list[Element]) -> Element | None:
    best = cands[0]
    for w in cands[1:]:
        if ctx.leq(best, w):
            best = w
    for w in cands:
        if not ctx.leq(w, best):
            return None
    return best


def _extremum_result(ctx: WindowContext, cands: list[Element],
                     minimize: bool) -> EnvelopeResult:
    exact = ctx.carrier.kind == "finite"
    side = "least" if minimize else "greatest"
    if not cands:
        detail = "defining set empty in window"
        if exact:
            detail = "defining set empty (full carrier)"
        return EnvelopeResult(None, "nonexistent-in-window", detail, (), ctx.scope)
    sample = tuple(cands[:SAMPLE_LIMIT])
    value = _least(ctx, cands) if minimize else _greatest(ctx, cands)
    if value is None:
        return EnvelopeResult(
            None, "nonexistent-in-window",
            f"defining set nonempty in window but has no {side} member",
            sample, ctx.scope)
    certificate = "exact" if exact else "window-verified"
    return EnvelopeResult(value, certificate,
                          f"{side} member of the in-window defining set",
                          sample, ctx.scope)


# -- the two envelopes -----------------------------------------------------


def _verify(ctx: WindowContext, which: str, x: Element, y: Element,
            candidate: Element) -> Verdict:
    carrier = ctx.carrier
    if which == "upper":
        if not ctx.sleq(x, candidate):
            return fails((candidate,), reason=(
                f"membership: candidate is not above {render(x, carrier)} "
                "in the specific order"))
        if not ctx.leq(y, candidate):
            return fails((candidate,), reason=(
                f"membership: candidate is not above {render(y, carrier)} "
                "in the initial order"))
        for w in _upper_set(ctx, x, y):
            if not ctx.leq(candidate, w):
                return fails((w,), reason="defining-set member not above the candidate")
        return holds(scope=ctx.scope)
    if not ctx.sleq(candidate, x):
        return fails((candidate,), reason=(
            f"membership: candidate is not below {render(x, carrier)} "
            "in the specific order"))
    if not ctx.leq(candidate, y):
        return fails((candidate,), reason=(
            f"membership: candidate is not below {render(y, carrier)} "
            "in the initial order"))
    for w in _lower_set(ctx, x, y):
        if not ctx.leq(w, candidate):
            return fails((w,), reason="defining-set member not below the candidate")
    return holds(scope=ctx.scope)


def _translatable(ctx: WindowContext) -> bool:
    """Both orders compare by membership of the difference, so every envelope
    is a translate of a zero-anchored one; valid only without member clauses,
    which translation does not preserve."""
    hit = getattr(ctx, "_translatable", None)
    if hit is None:
        c = ctx.carrier
        hit = (c.kind == "grid" and c.has_negation and not c.member_clauses
               and ctx.initial.style == "positive"
               and ctx.specific.style == "positive")
        ctx._translatable = hit
    return hit


def _envelope(ctx: WindowContext, which: str, x: Element, y: Element,
              hint=None) -> EnvelopeResult:
    key = (which, x, y)
    hit = ctx.envelope_memo.get(key)
    if hit is not None:
        return hit
    zero = ctx.carrier.zero()
    if x != zero and _translatable(ctx):
        base = _envelope(ctx, which, zero, ctx.carrier.sub(y, x), hint)
        add = ctx.carrier.add
        result = EnvelopeResult(
            None if base.value is None else add(x, base.value),
            base.certificate,
            base.detail + "; translated from the zero-anchored form",
            tuple(add(x, w) for w in base.constraint_set_sample),
            base.scope)
        ctx.envelope_memo[key] = result
        return result
    cands = (_upper_set if which == "upper" else _lower_set)(ctx, x, y)
    if hint is not None:
        candidate = hint(x, y)
        if candidate is not None and _hint_holds(ctx, which, x, y, candidate, cands):
            result = EnvelopeResult(
                candidate,
                "exact" if ctx.carrier.kind == "finite" else "window-verified",
                "hint verified against the in-window defining set",
                tuple(cands[:SAMPLE_LIMIT]), ctx.scope)
            ctx.envelope_memo[key] = result
            return result
        # fall through to the scan; a wrong hint must never decide the value
    result = _extremum_result(ctx, cands, minimize=(which == "upper"))
    ctx.envelope_memo[key] = result
    return result


def _hint_holds(ctx: WindowContext, which: str, x: Element, y: Element,
                candidate: Element, cands: list[Element]) -> bool:
    """The hinted value must satisfy both membership constraints and bound
    the already-enumerated defining set; same test as _verify, minus the
    second enumeration."""
    if which == "upper":
        return (ctx.sleq(x, candidate) and ctx.leq(y, candidate)
                and all(ctx.leq(candidate, w) for w in cands))
    return (ctx.sleq(candidate, x) and ctx.leq(candidate, y)
            and all(ctx.leq(w, candidate) for w in cands))


def envelope_value(ctx: WindowContext, which: str, x: Element, y: Element,
                   hint=None) -> Element | None:
    """Convenience for law/classification sweeps: the value or None."""
    return _envelope(ctx, which, x, y, hint).value


def upper_envelope(s: TwoOrderStructure, x: Element, y: Element,
                   window: Window | None = None,
                   use_hint: bool = True) -> EnvelopeResult:
    s.carrier.check_element(x)
    s.carrier.check_element(y)
    ctx = s.context(window)
    return _envelope(ctx, "upper", x, y, s.upper_hint if use_hint else None)


def lower_envelope(s: TwoOrderStructure, x: Element, y: Element,
                   window: Window | None = None,
                   use_hint: bool = True) -> EnvelopeResult:
    s.carrier.check_element(x)
    s.carrier.check_element(y)
    ctx = s.context(window)
    return _envelope(ctx, "lower", x, y, s.lower_hint if use_hint else None)


def verify_envelope(s: TwoOrderStructure, kind: str, x: Element, y: Element,
                    candidate: Element, window: Window | None = None) -> Verdict:
    """Holds iff candidate satisfies both membership constraints and bounds
    every in-window member of the defining set; Fails carries the violating
    member (or the candidate itself on a membership failure)."""
    if kind not in (UPPER, LOWER):
        raise EnvelopeError(f"verify_envelope expects {UPPER} or {LOWER}, got {kind!r}")
    s.carrier.check_element(candidate)
    ctx = s.context(window)
    return _verify(ctx, "upper" if kind == UPPER else "lower", x, y, candidate)


# -- characterization extrema ----------------------------------------------


def _kind_result(ctx: WindowContext, kind: str, u: Element, v: Element,
                 upper_hint=None, lower_hint=None) -> EnvelopeResult:
    carrier = ctx.carrier
    add, sub = carrier.add, carrier.sub
    zero = carrier.zero()

    if kind == UPPER:
        return _envelope(ctx, "upper", u, v, upper_hint)
    if kind == LOWER:
        return _envelope(ctx, "lower", u, v, lower_hint)

    if kind in ("MIN-A", "MIN-A-CONSTRAINED"):
        gen_pred = lambda w: ctx.leq(u, add(w, v))
        rest = ((lambda w: True) if kind == "MIN-A"
                else (lambda w: ctx.sleq(w, u)))
        cands = _candidates(ctx, "initial", lambda: sub(u, v), +1, gen_pred, rest)
        return _extremum_result(ctx, cands, minimize=True)

    if kind in ("MIN-B", "MIN-B-CONSTRAINED"):
        gen_pred = lambda w: ctx.sleq(u, add(w, v))
        rest = ((lambda w: True) if kind == "MIN-B"
                else (lambda w: ctx.leq(w, u)))
        cands = _candidates(ctx, "specific", lambda: sub(u, v), +1, gen_pred, rest)
        return _extremum_result(ctx, cands, minimize=True)

    if kind == "MAX-W-A":
        env = _envelope(ctx, "upper", v, u, upper_hint)
        if env.value is None:
            return EnvelopeResult(
                None, "unknown",
                f"prerequisite upper(v,u) unresolved: {env.detail}", (), ctx.scope)
        e = env.value
        total = add(u, v)
        cands = _candidates(ctx, "initial", lambda: sub(total, e), -1,
                            lambda w: ctx.leq(add(e, w), total),
                            lambda w: ctx.sleq(w, u))
        return _extremum_result(ctx, cands, minimize=False)

    if kind == "MAX-W-B":
        env = _envelope(ctx, "upper", u, v, upper_hint)
        if env.value is None:
            return EnvelopeResult(
                None, "unknown",
                f"prerequisite upper(u,v) unresolved: {env.detail}", (), ctx.scope)
        e = env.value
        total = add(u, v)
        cands = _candidates(ctx, "specific", lambda: sub(total, e), -1,
                            lambda w: ctx.sleq(add(e, w), total),
                            lambda w: ctx.leq(w, u))
        return _extremum_result(ctx, cands, minimize=False)

    if kind == "MIN-G":
        cands = _candidates(ctx, "specific", lambda: zero, +1,
                            lambda w: ctx.sleq(zero, w),
                            lambda w: ctx.leq(v, add(w, u)))
        return _extremum_result(ctx, cands, minimize=True)

    if kind == "MIN-G-DUAL":
        cands = _candidates(ctx, "initial", lambda: zero, +1,
                            lambda w: ctx.leq(zero, w),
                            lambda w: ctx.sleq(v, add(w, u)))
        return _extremum_result(ctx, cands, minimize=True)

    raise EnvelopeError(f"unknown extremum kind {kind!r}")


def characterization_extremum(s: TwoOrderStructure, kind: str, u: Element,
                              v: Element,
                              window: Window | None = None) -> EnvelopeResult:
    """The in-window extremum of the kind's defining set. For MIN-G the
    detail also reports the linking equations against the envelopes when the
    carrier has negation and the envelopes resolve."""
    if kind not in EXTREMUM_KINDS:
        raise EnvelopeError(f"unknown extremum kind {kind!r}")
    s.carrier.check_element(u)
    s.carrier.check_element(v)
    ctx = s.context(window)
    result = _kind_result(ctx, kind, u, v, s.upper_hint, s.lower_hint)
    if kind == "MIN-G" and result.value is not None and s.carrier.has_negation:
        up = _envelope(ctx, "upper", u, v, s.upper_hint)
        low = _envelope(ctx, "lower", v, u, s.lower_hint)
        if up.value is not None and low.value is not None:
            sub = s.carrier.sub
            lhs = sub(up.value, u)
            rhs = sub(v, low.value)
            c = s.carrier
            mark = "confirmed" if result.value == lhs == rhs else "VIOLATED"
            extra = (f"; links {mark}: m={render(result.value, c)}, "
                     f"upper(u,v)-u={render(lhs, c)}, "
                     f"v-lower(v,u)={render(rhs, c)}")
            result = EnvelopeResult(result.value, result.certificate,
                                    result.detail + extra,
                                    result.constraint_set_sample, result.scope)
    return result


# -- cross-checking the characterizations ----------------------------------


def _gate(ctx: WindowContext, name: str) -> bool:
    memo = getattr(ctx, "_gate_memo", None)
    if memo is None:
        memo = {}
        ctx._gate_memo = memo
    hit = memo.get(name)
    if hit is None:
        if name == "positive-initial":
            zero = ctx.carrier.zero()
            hit = all(ctx.leq(zero, x) for x in ctx.base)
        elif name == "positive-specific":
            zero = ctx.carrier.zero()
            hit = all(ctx.sleq(zero, x) for x in ctx.base)
        else:
            hit = check_axiom(ctx, name).holds
        memo[name] = hit
    return hit


def oracle_cross_check(s: TwoOrderStructure, u: Element, v: Element,
                       window: Window | None = None) -> Verdict:
    """Computes every characterization extremum whose hypotheses the
    structure satisfies on this window and asserts its linking equation:

      MIN-A:             m + v           = upper(v, u)
      MIN-A-CONSTRAINED: m + lower(u, v) = u
      MIN-B:             m + v           = upper(u, v)
      MIN-B-CONSTRAINED: m + lower(v, u) = u
      MAX-W-A:           M               = lower(u, v)
      MAX-W-B:           M               = lower(v, u)
      MIN-G:             m = upper(u,v) - u = v - lower(v,u)
      MIN-G-DUAL:        m = upper(v,u) - u = v - lower(u,v)

    A-side minima assume the specific order is the natural one and the
    initial order cancels; B-side minima assume the mirror image; the
    constrained forms additionally need the matching positivity; the group
    forms need negation. Holds iff all applicable links verify; a link whose
    extremum or envelope is unresolved in the window yields Unknown.
    """
    s.carrier.check_element(u)
    s.carrier.check_element(v)
    ctx = s.context(window)
    add, carrier = s.carrier.add, s.carrier

    a_gate = _gate(ctx, "CANC-LEQ") and _gate(ctx, "NATORD-SLEQ")
    b_gate = _gate(ctx, "CANC-SLEQ") and _gate(ctx, "NATORD-LEQ")
    pos_a = a_gate and _gate(ctx, "positive-initial")
    pos_b = b_gate and _gate(ctx, "positive-specific")
    group = carrier.has_negation

    def env(which, a, b):
        hint = s.upper_hint if which == "upper" else s.lower_hint
        return _envelope(ctx, which, a, b, hint).value

    plan: list[tuple[str, Callable[[], tuple[bool | None, str]]]] = []

    def link_min(kind, target_fn, label):
        def run():
            m = _kind_result(ctx, kind, u, v, s.upper_hint, s.lower_hint).value
            target = target_fn()
            if m is None or target is None:
                return None, f"{kind}: unresolved in window"
            lhs, rhs = label(m, target)
            return lhs == rhs, f"{kind}: link equation violated"
        return run

    if a_gate:
        plan.append(("MIN-A", link_min(
            "MIN-A", lambda: env("upper", v, u),
            lambda m, t: (add(m, v), t))))
    if pos_a:
        plan.append(("MIN-A-CONSTRAINED", link_min(
            "MIN-A-CONSTRAINED", lambda: env("lower", u, v),
            lambda m, t: (add(m, t), u))))
    if b_gate:
        plan.append(("MIN-B", link_min(
            "MIN-B", lambda: env("upper", u, v),
            lambda m, t: (add(m, v), t))))
    if pos_b:
        plan.append(("MIN-B-CONSTRAINED", link_min(
            "MIN-B-CONSTRAINED", lambda: env("lower", v, u),
            lambda m, t: (add(m, t), u))))
    if pos_a or group:
        plan.append(("MAX-W-A", link_min(
            "MAX-W-A", lambda: env("lower", u, v),
            lambda m, t: (m, t))))
    if pos_b or group:
        plan.append(("MAX-W-B", link_min(
            "MAX-W-B", lambda: env("lower", v, u),
            lambda m, t: (m, t))))

    if group:
        sub = carrier.sub

        def min_g():
            m = _kind_result(ctx, "MIN-G", u, v).value
            up, low = env("upper", u, v), env("lower", v, u)
            if m is None or up is None or low is None:
                return None, "MIN-G: unresolved in window"
            ok = m == sub(up, u) == sub(v, low)
            return ok, "MIN-G: link equation violated"

        def min_g_dual():
            m = _kind_result(ctx, "MIN-G-DUAL", u, v).value
            up, low = env("upper", v, u), env("lower", u, v)
            if m is None or up is None or low is None:
                return None, "MIN-G-DUAL: unresolved in window"
            ok = m == sub(up, u) == sub(v, low)
            return ok, "MIN-G-DUAL: link equation violated"

        plan.append(("MIN-G", min_g))
        plan.append(("MIN-G-DUAL", min_g_dual))

    checked, unresolved = [], []
    for kind, run in plan:
        ok, why = run()
        if ok is None:
            unresolved.append(why)
        elif not ok:
            return fails((u, v), reason=why)
        else:
            checked.append(kind)
    if unresolved:
        return unknown(scope=ctx.scope, reason="; ".join(unresolved))
    if not checked:
        return holds(scope=ctx.scope, reason="no characterization kind applicable")
    return holds(scope=ctx.scope, reason="checked: " + ", ".join(checked))
