"""Quantified laws over a window.

Each law id names one quantified formula relating the two orders, the two
envelopes, and addition; the full formula texts ship in
data/law_catalog.txt. `check_law` evaluates a law to a three-valued Verdict
by sweeping in-window tuples in ball order, so a Fails witness is the first
violation in that enumeration. An envelope subterm that does not resolve
inside the window makes that tuple Unknown; the sweep still continues to
look for a definite violation, and the aggregate is Fails over Unknown over
Holds.

Notation used in formulas below and in the catalog file: `x v y` is the
mixed upper envelope upper(x, y) and `x ^ y` the mixed lower envelope
lower(x, y); in both, the first argument carries the specific-order
constraint. `leq`/`sleq` are the initial and specific orders.

Laws whose content lives in the group setting (identities using negation,
the regularity family, scaling and divisibility) require a carrier with
negation and raise LawError elsewhere. Scaling laws quantify only over
multiples that stay inside the window; divisibility laws test cone
membership of the scaled element directly, so they need no such guard.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .axioms import PAIR_CAP
from .elements import Element, ball_key, render
from .envelopes import envelope_value
from .structures import StructureError, TwoOrderStructure
from .verdicts import Verdict, fails, holds, unknown
from .windows import Window, WindowContext

TRIPLE_SWEEP_CAP = 8000
QUAD_SWEEP_CAP = 8000

LAW_IDS = (
    "P0", "P1", "P2", "P3", "P4", "P5B",
    "R0",
    "TRANS-UP", "TRANS-LOW",
    "POS-A", "POS-B",
    "MLS-SLEQ",
    "WMLS-INEQ", "B-INEQ",
    "QR-B", "QR-C", "QR-D", "QR-E", "QR-F",
    "SCALE-LOW", "SCALE-UP", "SCALE-ZERO",
    "DIV-LEQ", "DIV-SLEQ",
)

LAW_CATALOG = {
    "P0": "x^y sleq x sleq xvy  and  x^y leq y leq xvy",
    "P1": "xvy + y^x = x + y",
    "P2": "z + xvy = (x+z)v(y+z)  and  z + x^y = (x+z)^(y+z)",
    "P3": "-(xvy) = (-x)^(-y)",
    "P4": "x sleq u and y leq v  imply  xvy leq uvv  and  x^y leq u^v",
    "P5B": "x sleq y  iff  xvy = y  iff  y^x = x",
    "R0": "x leq y  iff  yvx = y  iff  x^y = x",
    "TRANS-UP": "(u+a)v(v+a) = uvv + a",
    "TRANS-LOW": "(x+z)^(y+z) = x^y + z",
    "POS-A": "vvu leq u + v",
    "POS-B": "uvv leq u + v",
    "MLS-SLEQ": "vvu sleq u + v",
    "WMLS-INEQ": "vvu + u^v leq u + v",
    "B-INEQ": "vvu + u^v sleq u + v",
    "QR-B": "u sleq x sleq z and u sleq y sleq z  imply  "
            "xvy sleq z  and  u sleq x^y",
    "QR-C": "x sleq y  implies  z^x sleq z^y  and  zvx sleq zvy",
    "QR-D": "(z^x)v(z^y) leq z^(xvy)  and  zv(x^y) leq (zvx)^(zvy)",
    "QR-E": "x^(y^z) leq (x^y)^z  and  (xvy)vz leq xv(yvz)",
    "QR-F": "(z^x)v(z^y) leq z^((z^x)vy)  and  "
            "(zvx)^(zvy) geq zv((zvx)^y)",
    "SCALE-LOW": "(nx)^(ny) = n(x^y)  for 1 <= n <= nmax, nx and ny in the window",
    "SCALE-UP": "(nx)v(ny) = n(xvy)  for 1 <= n <= nmax, nx and ny in the window",
    "SCALE-ZERO": "x^y = 0  implies  (mx)^(ny) = 0  "
                  "for independent 1 <= m,n <= nmax, mx and ny in the window",
    "DIV-LEQ": "nx geq 0  implies  x geq 0  for 2 <= n <= nmax",
    "DIV-SLEQ": "nx sgeq 0  implies  x sgeq 0  for 2 <= n <= nmax",
}

GROUP_LAW_IDS = frozenset((
    "P1", "P2", "P3", "R0",
    "QR-B", "QR-C", "QR-D", "QR-E", "QR-F",
    "SCALE-LOW", "SCALE-UP", "SCALE-ZERO",
    "DIV-LEQ", "DIV-SLEQ",
))


class LawError(ValueError):
    pass


def applicable_laws(s: TwoOrderStructure) -> tuple[str, ...]:
    """The law ids `check_law` accepts for this structure's carrier."""
    if s.carrier.has_negation:
        return LAW_IDS
    return tuple(law for law in LAW_IDS if law not in GROUP_LAW_IDS)


# -- sweep plumbing --------------------------------------------------------


@dataclass
class _Sweep:
    """Fails-over-Unknown-over-Holds aggregation for one law run."""

    s: TwoOrderStructure
    ctx: WindowContext
    scope: str
    nmax: int
    unknown_witness: tuple | None = None
    unknown_reason: str | None = None

    def up(self, a: Element, b: Element) -> Element | None:
        return envelope_value(self.ctx, "upper", a, b, self.s.upper_hint)

    def lo(self, a: Element, b: Element) -> Element | None:
        return envelope_value(self.ctx, "lower", a, b, self.s.lower_hint)

    def skip(self, witness: tuple, reason: str) -> None:
        if self.unknown_witness is None:
            self.unknown_witness = witness
            self.unknown_reason = reason

    def finish(self) -> Verdict:
        if self.unknown_witness is not None:
            return unknown(scope=self.scope, witness=self.unknown_witness,
                           reason=self.unknown_reason)
        return holds(scope=self.scope)


_UNRESOLVED = "an envelope subterm is unresolved in the window"


def _pairs(ctx: WindowContext, law: str):
    return ctx.tuples(2, PAIR_CAP, f"law-{law}")


def _triples(ctx: WindowContext, law: str):
    return ctx.tuples(3, TRIPLE_SWEEP_CAP, f"law-{law}")


def _balanced_product(pairs_a, pairs_b, cap: int):
    """Deterministic quadruple stream from two premise-pair lists: balanced
    ball-order prefixes of each list, full product, re-sorted in ball order.
    """
    if not pairs_a or not pairs_b:
        return [], True
    ka = min(len(pairs_a), max(1, int(cap ** 0.5)))
    kb = min(len(pairs_b), max(1, cap // ka))
    ka = min(len(pairs_a), max(1, cap // kb))
    combos = [(pa, pb) for pa in pairs_a[:ka] for pb in pairs_b[:kb]]
    combos.sort(key=lambda t: (
        max(ball_key(e)[0] for p in t for e in p),
        tuple(ball_key(e) for p in t for e in p)))
    complete = ka == len(pairs_a) and kb == len(pairs_b)
    return combos, complete


def _premise_scope(ctx: WindowContext, count: int, complete: bool) -> str:
    tail = "" if complete else " (budget-capped)"
    return f"{ctx.scope} premise-driven tuples={count}{tail}"


# -- the pair laws ---------------------------------------------------------


def _law_p0(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    for x, y in _pairs(ctx, "P0"):
        up, lo = sw.up(x, y), sw.lo(x, y)
        if up is None or lo is None:
            sw.skip((x, y), _UNRESOLVED)
            continue
        if not (ctx.sleq(lo, x) and ctx.sleq(x, up)
                and ctx.leq(lo, y) and ctx.leq(y, up)):
            return fails((x, y), reason="the pair is not bracketed by its envelopes")
    return sw.finish()


def _law_p1(sw: _Sweep) -> Verdict:
    ctx, add = sw.ctx, sw.ctx.carrier.add
    for x, y in _pairs(ctx, "P1"):
        up, lo = sw.up(x, y), sw.lo(y, x)
        if up is None or lo is None:
            sw.skip((x, y), _UNRESOLVED)
            continue
        if add(up, lo) != add(x, y):
            return fails((x, y), reason="xvy + y^x differs from x + y")
    return sw.finish()


def _law_p3(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    neg = ctx.carrier.negate
    for x, y in _pairs(ctx, "P3"):
        up = sw.up(x, y)
        lo = sw.lo(neg(x), neg(y))
        if up is None or lo is None:
            sw.skip((x, y), _UNRESOLVED)
            continue
        if neg(up) != lo:
            return fails((x, y), reason="-(xvy) differs from (-x)^(-y)")
    return sw.finish()


def _law_p5b(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    for x, y in _pairs(ctx, "P5B"):
        up, lo = sw.up(x, y), sw.lo(y, x)
        if up is None or lo is None:
            sw.skip((x, y), _UNRESOLVED)
            continue
        bools = (ctx.sleq(x, y), up == y, lo == x)
        if len(set(bools)) != 1:
            return fails((x, y), reason=(
                "x sleq y, xvy = y and y^x = x disagree: "
                f"{bools[0]}/{bools[1]}/{bools[2]}"))
    return sw.finish()


def _law_r0(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    for x, y in _pairs(ctx, "R0"):
        up, lo = sw.up(y, x), sw.lo(x, y)
        if up is None or lo is None:
            sw.skip((x, y), _UNRESOLVED)
            continue
        bools = (ctx.leq(x, y), up == y, lo == x)
        if len(set(bools)) != 1:
            return fails((x, y), reason=(
                "x leq y, yvx = y and x^y = x disagree: "
                f"{bools[0]}/{bools[1]}/{bools[2]}"))
    return sw.finish()


def _law_pos_a(sw: _Sweep) -> Verdict:
    ctx, add = sw.ctx, sw.ctx.carrier.add
    for u, v in _pairs(ctx, "POS-A"):
        up = sw.up(v, u)
        if up is None:
            sw.skip((u, v), _UNRESOLVED)
            continue
        if not ctx.leq(up, add(u, v)):
            return fails((u, v), reason="vvu leq u+v fails")
    return sw.finish()


def _law_pos_b(sw: _Sweep) -> Verdict:
    ctx, add = sw.ctx, sw.ctx.carrier.add
    for u, v in _pairs(ctx, "POS-B"):
        up = sw.up(u, v)
        if up is None:
            sw.skip((u, v), _UNRESOLVED)
            continue
        if not ctx.leq(up, add(u, v)):
            return fails((u, v), reason="uvv leq u+v fails")
    return sw.finish()


def _law_mls_sleq(sw: _Sweep) -> Verdict:
    ctx, add = sw.ctx, sw.ctx.carrier.add
    for u, v in _pairs(ctx, "MLS-SLEQ"):
        up = sw.up(v, u)
        if up is None:
            sw.skip((u, v), _UNRESOLVED)
            continue
        if not ctx.sleq(up, add(u, v)):
            return fails((u, v), reason="vvu sleq u+v fails")
    return sw.finish()


def _sum_bound(sw: _Sweep, law: str, cmp_name: str) -> Verdict:
    ctx, add = sw.ctx, sw.ctx.carrier.add
    cmp = ctx.leq if cmp_name == "leq" else ctx.sleq
    for u, v in _pairs(ctx, law):
        up, lo = sw.up(v, u), sw.lo(u, v)
        if up is None or lo is None:
            sw.skip((u, v), _UNRESOLVED)
            continue
        if not cmp(add(up, lo), add(u, v)):
            return fails((u, v), reason=f"vvu + u^v {cmp_name} u+v fails")
    return sw.finish()


def _law_wmls_ineq(sw: _Sweep) -> Verdict:
    return _sum_bound(sw, "WMLS-INEQ", "leq")


def _law_b_ineq(sw: _Sweep) -> Verdict:
    return _sum_bound(sw, "B-INEQ", "sleq")


# -- translation and distribution laws -------------------------------------


def _law_p2(sw: _Sweep) -> Verdict:
    ctx, add = sw.ctx, sw.ctx.carrier.add
    for x, y, z in _triples(ctx, "P2"):
        up, lo = sw.up(x, y), sw.lo(x, y)
        up_t = sw.up(add(x, z), add(y, z))
        lo_t = sw.lo(add(x, z), add(y, z))
        if None in (up, lo, up_t, lo_t):
            sw.skip((x, y, z), _UNRESOLVED)
            continue
        if add(z, up) != up_t or add(z, lo) != lo_t:
            return fails((x, y, z),
                         reason="adding z does not commute with the envelopes")
    return sw.finish()


def _law_trans_up(sw: _Sweep) -> Verdict:
    ctx, add = sw.ctx, sw.ctx.carrier.add
    for u, v, a in _triples(ctx, "TRANS-UP"):
        up = sw.up(u, v)
        up_t = sw.up(add(u, a), add(v, a))
        if up is None or up_t is None:
            sw.skip((u, v, a), _UNRESOLVED)
            continue
        if up_t != add(up, a):
            return fails((u, v, a), reason="(u+a)v(v+a) differs from uvv + a")
    return sw.finish()


def _law_trans_low(sw: _Sweep) -> Verdict:
    ctx, add = sw.ctx, sw.ctx.carrier.add
    for x, y, z in _triples(ctx, "TRANS-LOW"):
        lo = sw.lo(x, y)
        lo_t = sw.lo(add(x, z), add(y, z))
        if lo is None or lo_t is None:
            sw.skip((x, y, z), _UNRESOLVED)
            continue
        if lo_t != add(lo, z):
            return fails((x, y, z), reason="(x+z)^(y+z) differs from x^y + z")
    return sw.finish()


def _law_p4(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    base_pairs = _pairs(ctx, "P4")
    sleq_pairs = [p for p in base_pairs if ctx.sleq(p[0], p[1])]
    leq_pairs = [p for p in base_pairs if ctx.leq(p[0], p[1])]
    combos, complete = _balanced_product(sleq_pairs, leq_pairs, QUAD_SWEEP_CAP)
    sw.scope = _premise_scope(ctx, len(combos), complete)
    for (x, u), (y, v) in combos:
        up, lo = sw.up(x, y), sw.lo(x, y)
        up_d, lo_d = sw.up(u, v), sw.lo(u, v)
        if None in (up, lo, up_d, lo_d):
            sw.skip((x, u, y, v), _UNRESOLVED)
            continue
        if not (ctx.leq(up, up_d) and ctx.leq(lo, lo_d)):
            return fails((x, u, y, v),
                         reason="envelopes are not monotone in the premise pair")
    return sw.finish()


# -- the regularity family -------------------------------------------------


def _law_qr_b(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    intervals = [p for p in _pairs(ctx, "QR-B") if ctx.sleq(p[0], p[1])]
    count = 0
    complete = True
    for u, z in intervals:
        mid = [x for x in ctx.base if ctx.sleq(u, x) and ctx.sleq(x, z)]
        for x in mid:
            for y in mid:
                if count >= QUAD_SWEEP_CAP:
                    complete = False
                    break
                count += 1
                up, lo = sw.up(x, y), sw.lo(x, y)
                if up is None or lo is None:
                    sw.skip((u, x, y, z), _UNRESOLVED)
                    continue
                if not (ctx.sleq(up, z) and ctx.sleq(u, lo)):
                    sw.scope = _premise_scope(ctx, count, complete)
                    return fails((u, x, y, z), reason=(
                        "the envelopes leave the specific interval [u, z]"))
            if not complete:
                break
        if not complete:
            break
    sw.scope = _premise_scope(ctx, count, complete)
    return sw.finish()


def _law_qr_c(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    sleq_pairs = [p for p in _pairs(ctx, "QR-C") if ctx.sleq(p[0], p[1])]
    count = 0
    complete = True
    for x, y in sleq_pairs:
        for z in ctx.base:
            if count >= TRIPLE_SWEEP_CAP:
                complete = False
                break
            count += 1
            lo_x, lo_y = sw.lo(z, x), sw.lo(z, y)
            up_x, up_y = sw.up(z, x), sw.up(z, y)
            if None in (lo_x, lo_y, up_x, up_y):
                sw.skip((x, y, z), _UNRESOLVED)
                continue
            if not (ctx.sleq(lo_x, lo_y) and ctx.sleq(up_x, up_y)):
                sw.scope = _premise_scope(ctx, count, complete)
                return fails((x, y, z), reason=(
                    "envelopes with z are not specific-monotone in x sleq y"))
        if not complete:
            break
    sw.scope = _premise_scope(ctx, count, complete)
    return sw.finish()


def _law_qr_d(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    for x, y, z in _triples(ctx, "QR-D"):
        lo_x, lo_y = sw.lo(z, x), sw.lo(z, y)
        up_xy, lo_xy = sw.up(x, y), sw.lo(x, y)
        up_x, up_y = sw.up(z, x), sw.up(z, y)
        if None in (lo_x, lo_y, up_xy, lo_xy, up_x, up_y):
            sw.skip((x, y, z), _UNRESOLVED)
            continue
        left1, right1 = sw.up(lo_x, lo_y), sw.lo(z, up_xy)
        left2, right2 = sw.up(z, lo_xy), sw.lo(up_x, up_y)
        if None in (left1, right1, left2, right2):
            sw.skip((x, y, z), _UNRESOLVED)
            continue
        if not (ctx.leq(left1, right1) and ctx.leq(left2, right2)):
            return fails((x, y, z), reason="a distribution inequality fails")
    return sw.finish()


def _law_qr_e(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    for x, y, z in _triples(ctx, "QR-E"):
        lo_yz, lo_xy = sw.lo(y, z), sw.lo(x, y)
        up_xy, up_yz = sw.up(x, y), sw.up(y, z)
        if None in (lo_yz, lo_xy, up_xy, up_yz):
            sw.skip((x, y, z), _UNRESOLVED)
            continue
        left1, right1 = sw.lo(x, lo_yz), sw.lo(lo_xy, z)
        left2, right2 = sw.up(up_xy, z), sw.up(x, up_yz)
        if None in (left1, right1, left2, right2):
            sw.skip((x, y, z), _UNRESOLVED)
            continue
        if not (ctx.leq(left1, right1) and ctx.leq(left2, right2)):
            return fails((x, y, z), reason="an association inequality fails")
    return sw.finish()


def _law_qr_f(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    for x, y, z in _triples(ctx, "QR-F"):
        lo_x, lo_y = sw.lo(z, x), sw.lo(z, y)
        up_x, up_y = sw.up(z, x), sw.up(z, y)
        if None in (lo_x, lo_y, up_x, up_y):
            sw.skip((x, y, z), _UNRESOLVED)
            continue
        left1 = sw.up(lo_x, lo_y)
        inner1 = None if left1 is None else sw.up(lo_x, y)
        right1 = None if inner1 is None else sw.lo(z, inner1)
        left2 = sw.lo(up_x, up_y)
        inner2 = None if left2 is None else sw.lo(up_x, y)
        right2 = None if inner2 is None else sw.up(z, inner2)
        if None in (left1, right1, left2, right2):
            sw.skip((x, y, z), _UNRESOLVED)
            continue
        if not (ctx.leq(left1, right1) and ctx.leq(right2, left2)):
            return fails((x, y, z), reason="a modularity inequality fails")
    return sw.finish()


# -- scaling and divisibility ----------------------------------------------


def _in_window(ctx: WindowContext, x: Element) -> bool:
    return x in ctx.base_set


def _law_scale_envelope(sw: _Sweep, law: str, which: str) -> Verdict:
    ctx = sw.ctx
    scale = ctx.carrier.scale
    env = sw.up if which == "upper" else sw.lo
    sym = "v" if which == "upper" else "^"
    for x, y in _pairs(ctx, law):
        base = env(x, y)
        for n in range(1, sw.nmax + 1):
            nx, ny = scale(n, x), scale(n, y)
            if not (_in_window(ctx, nx) and _in_window(ctx, ny)):
                continue
            scaled = env(nx, ny)
            if base is None or scaled is None:
                sw.skip((x, y), _UNRESOLVED + f" (n={n})")
                continue
            if scaled != scale(n, base):
                return fails((x, y), reason=(
                    f"(nx){sym}(ny) differs from n(x{sym}y) at n={n}"))
    return sw.finish()


def _law_scale_low(sw: _Sweep) -> Verdict:
    return _law_scale_envelope(sw, "SCALE-LOW", "lower")


def _law_scale_up(sw: _Sweep) -> Verdict:
    return _law_scale_envelope(sw, "SCALE-UP", "upper")


def _law_scale_zero(sw: _Sweep) -> Verdict:
    ctx = sw.ctx
    scale = ctx.carrier.scale
    zero = ctx.carrier.zero()
    for x, y in _pairs(ctx, "SCALE-ZERO"):
        base = sw.lo(x, y)
        if base is None:
            sw.skip((x, y), _UNRESOLVED)
            continue
        if base != zero:
            continue
        for m in range(1, sw.nmax + 1):
            mx = scale(m, x)
            if not _in_window(ctx, mx):
                continue
            for n in range(1, sw.nmax + 1):
                ny = scale(n, y)
                if not _in_window(ctx, ny):
                    continue
                scaled = sw.lo(mx, ny)
                if scaled is None:
                    sw.skip((x, y), _UNRESOLVED + f" (m={m}, n={n})")
                    continue
                if scaled != zero:
                    return fails((x, y), reason=(
                        f"x^y = 0 but (mx)^(ny) differs from 0 at m={m}, n={n}"))
    return sw.finish()


def _law_div(sw: _Sweep, law: str, which: str) -> Verdict:
    ctx = sw.ctx
    cmp = ctx.leq if which == "initial" else ctx.sleq
    word = "geq" if which == "initial" else "sgeq"
    scale = ctx.carrier.scale
    zero = ctx.carrier.zero()
    for x in ctx.base:
        if cmp(zero, x):
            continue
        for n in range(2, sw.nmax + 1):
            if cmp(zero, scale(n, x)):
                return fails((x,), reason=(
                    f"n={n}: nx {word} 0 but x {word} 0 fails"))
    return sw.finish()


def _law_div_leq(sw: _Sweep) -> Verdict:
    return _law_div(sw, "DIV-LEQ", "initial")


def _law_div_sleq(sw: _Sweep) -> Verdict:
    return _law_div(sw, "DIV-SLEQ", "specific")


_LAW_CHECKERS = {
    "P0": _law_p0,
    "P1": _law_p1,
    "P2": _law_p2,
    "P3": _law_p3,
    "P4": _law_p4,
    "P5B": _law_p5b,
    "R0": _law_r0,
    "TRANS-UP": _law_trans_up,
    "TRANS-LOW": _law_trans_low,
    "POS-A": _law_pos_a,
    "POS-B": _law_pos_b,
    "MLS-SLEQ": _law_mls_sleq,
    "WMLS-INEQ": _law_wmls_ineq,
    "B-INEQ": _law_b_ineq,
    "QR-B": _law_qr_b,
    "QR-C": _law_qr_c,
    "QR-D": _law_qr_d,
    "QR-E": _law_qr_e,
    "QR-F": _law_qr_f,
    "SCALE-LOW": _law_scale_low,
    "SCALE-UP": _law_scale_up,
    "SCALE-ZERO": _law_scale_zero,
    "DIV-LEQ": _law_div_leq,
    "DIV-SLEQ": _law_div_sleq,
}


def check_law(s: TwoOrderStructure, law: str,
              window: Window | None = None, nmax: int = 8) -> Verdict:
    """Evaluate one law over the window. See LAW_CATALOG for the formulas.

    The witness of a Fails is the first violating tuple in the sweep order
    (ball order of the tuple space; premise-driven laws sweep their premise
    pairs in ball order first). nmax bounds the scalar range of the scaling
    and divisibility laws and is ignored elsewhere.
    """
    if law not in _LAW_CHECKERS:
        raise LawError(f"unknown law id {law!r}")
    if law in GROUP_LAW_IDS and not s.carrier.has_negation:
        raise LawError(f"unsupported: law {law} needs a carrier with negation")
    if nmax < 1:
        raise LawError("nmax must be a positive integer")
    ctx = s.context(window)
    sw = _Sweep(s, ctx, ctx.tuples_scope(2, PAIR_CAP), nmax)
    if law in ("P2", "TRANS-UP", "TRANS-LOW", "QR-D", "QR-E", "QR-F"):
        sw.scope = ctx.tuples_scope(3, TRIPLE_SWEEP_CAP)
    elif law.startswith("SCALE") or law.startswith("DIV"):
        base = ctx.scope if law.startswith("DIV") else ctx.tuples_scope(2, PAIR_CAP)
        sw.scope = f"{base} nmax={nmax}"
    return _LAW_CHECKERS[law](sw)


# -- Archimedean orders and finite-order elements --------------------------


def _require_group(s: TwoOrderStructure, what: str) -> None:
    if not s.carrier.has_negation:
        raise LawError(f"unsupported: {what} needs a carrier with negation")


def check_archimedean(s: TwoOrderStructure, which: str,
                      window: Window | None = None, nmax: int = 8) -> Verdict:
    """Is the chosen order Archimedean: nx below y for all n forces x below 0?

    A windowed check can refute the unbounded premise for no pair, so Fails
    is issued only for a violation recorded on the structure with a closed
    form reason (`archimedean_recorded` entries); a pair that merely survives
    n up to nmax yields Unknown with that candidate, and Holds means no
    in-window candidate survived.
    """
    _require_group(s, "an Archimedean check")
    if which not in ("initial", "specific"):
        raise LawError(f"unknown order {which!r}")
    ctx = s.context(window)
    cmp = ctx.order(which)
    scale = ctx.carrier.scale
    zero = ctx.carrier.zero()
    scope = f"{ctx.tuples_scope(2, PAIR_CAP)} nmax={nmax}"

    def survives(x: Element, y: Element) -> bool:
        if cmp(x, zero):
            return False
        return all(cmp(scale(n, x), y) for n in range(1, nmax + 1))

    base_set = ctx.base_set
    for rec_which, pair, why in s.archimedean_recorded:
        if rec_which != which:
            continue
        x, y = pair
        if x in base_set and y in base_set and survives(x, y):
            return fails((x, y), reason=f"recorded violation: {why}")
    for x, y in ctx.tuples(2, PAIR_CAP, f"archimedean-{which}"):
        if survives(x, y):
            return unknown(scope=scope, witness=(x, y), reason=(
                f"nx stays below y for all n <= {nmax}; a bounded check "
                "cannot decide the unbounded premise"))
    return holds(scope=scope)


def finite_order_elements(s: TwoOrderStructure,
                          window: Window | None = None,
                          kmax: int = 8) -> list[tuple[Element, int]]:
    """All nonzero in-window x with kx = 0 for some 2 <= k <= kmax, each with
    its least such k, in ball order."""
    _require_group(s, "a finite-order scan")
    if kmax < 2:
        raise LawError("kmax must be at least 2")
    ctx = s.context(window)
    zero = s.carrier.zero()
    out: list[tuple[Element, int]] = []
    for x in ctx.base:
        if x == zero:
            continue
        for k in range(2, kmax + 1):
            if s.carrier.scale(k, x) == zero:
                out.append((x, k))
                break
    return out


def abs_asym(s: TwoOrderStructure, x: Element,
             window: Window | None = None) -> tuple[Element, Element]:
    """The two asymmetric absolute values of x:

        ul x = xv0 + 0v(-x)        lu x = 0vx + (-x)v0

    Raises LawError when any of the four envelopes is unresolved in the
    window.
    """
    _require_group(s, "asymmetric absolute values")
    s.carrier.check_element(x)
    ctx = s.context(window)
    zero = s.carrier.zero()
    neg = s.carrier.negate
    parts = {
        "xv0": envelope_value(ctx, "upper", x, zero, s.upper_hint),
        "0v(-x)": envelope_value(ctx, "upper", zero, neg(x), s.upper_hint),
        "0vx": envelope_value(ctx, "upper", zero, x, s.upper_hint),
        "(-x)v0": envelope_value(ctx, "upper", neg(x), zero, s.upper_hint),
    }
    missing = [name for name, value in parts.items() if value is None]
    if missing:
        raise LawError(
            f"unresolved: {', '.join(missing)} has no value in the window "
            f"for x = {render(x, s.carrier)}")
    add = s.carrier.add
    ul = add(parts["xv0"], parts["0v(-x)"])
    lu = add(parts["0vx"], parts["(-x)v0"])
    if x == zero and not (ul == zero and lu == zero):
        raise StructureError("absolute values of 0 must both be 0")
    return ul, lu


# -- homomorphism checks ---------------------------------------------------


@dataclass(frozen=True)
class HomomorphismSpec:
    """An additive map between two grid-carrier structures.

    `matrix` has one row per codomain component (free coordinates first,
    then torsion residues) and one column per domain component in the same
    layout; entries are integers. Torsion outputs are reduced modulo the
    codomain's moduli. Additivity over the domain window is verified before
    any envelope comparison runs.
    """

    domain: TwoOrderStructure
    codomain: TwoOrderStructure
    matrix: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self) -> None:
        for s in (self.domain, self.codomain):
            if s.carrier.kind != "grid":
                raise LawError("homomorphism checks need grid carriers")
        dom_n = self.domain.carrier.rank + len(self.domain.carrier.moduli)
        cod = self.codomain.carrier
        cod_n = cod.rank + len(cod.moduli)
        if len(self.matrix) != cod_n or any(len(row) != dom_n for row in self.matrix):
            raise LawError(
                f"matrix must be {cod_n} rows of {dom_n} integer entries")

    def apply(self, x: Element) -> Element:
        flat = tuple(x.coords) + tuple(Fraction(t) for t in x.torsion)
        cod = self.codomain.carrier
        values = [sum(c * v for c, v in zip(row, flat)) for row in self.matrix]
        coords = tuple(values[:cod.rank])
        tors = []
        for v, m in zip(values[cod.rank:], cod.moduli):
            if v.denominator != 1:
                raise LawError(
                    f"torsion image {v} of {render(x, self.domain.carrier)} "
                    "is not an integer")
            tors.append(v.numerator % m)
        return Element(coords, tuple(tors))


@dataclass(frozen=True)
class HomomorphismReport:
    """HOM: both envelopes are preserved. ABS-LU / ABS-UL: the matching
    asymmetric absolute value is preserved. The three verdicts must agree
    when the codomain window holds no element of order two."""

    verdicts: dict[str, Verdict]
    agree: bool
    agreement_expected: bool

    def outcome(self, key: str):
        return self.verdicts[key].outcome


def _abs_values(s: TwoOrderStructure, ctx: WindowContext,
                x: Element) -> tuple[Element | None, Element | None]:
    zero = s.carrier.zero()
    neg = s.carrier.negate
    up = lambda a, b: envelope_value(ctx, "upper", a, b, s.upper_hint)
    p1, p2 = up(x, zero), up(zero, neg(x))
    p3, p4 = up(zero, x), up(neg(x), zero)
    add = s.carrier.add
    ul = None if p1 is None or p2 is None else add(p1, p2)
    lu = None if p3 is None or p4 is None else add(p3, p4)
    return ul, lu


def check_homomorphism(spec: HomomorphismSpec,
                       window: Window | None = None,
                       codomain_window: Window | None = None) -> HomomorphismReport:
    """Check envelope and absolute-value preservation over the domain window.

    The domain sweep is the full in-window pair product (capped and sampled
    only past the usual pair cap), so a Fails witness is reproducible. Any
    envelope that does not resolve, on either side, makes its tuple Unknown.
    """
    dom, cod = spec.domain, spec.codomain
    _require_group(dom, "a homomorphism check")
    _require_group(cod, "a homomorphism check")
    dctx = dom.context(window)
    cctx = cod.context(codomain_window)
    add = dom.carrier.add
    for x, y in dctx.tuples(2, PAIR_CAP, "hom-additivity"):
        if spec.apply(add(x, y)) != cod.carrier.add(spec.apply(x), spec.apply(y)):
            raise StructureError(
                f"map is not additive on the window: witness "
                f"({render(x, dom.carrier)},{render(y, dom.carrier)})")

    d_up = lambda a, b: envelope_value(dctx, "upper", a, b, dom.upper_hint)
    d_lo = lambda a, b: envelope_value(dctx, "lower", a, b, dom.lower_hint)
    c_up = lambda a, b: envelope_value(cctx, "upper", a, b, cod.upper_hint)
    c_lo = lambda a, b: envelope_value(cctx, "lower", a, b, cod.lower_hint)

    hom_sw = _Sweep(dom, dctx, dctx.tuples_scope(2, PAIR_CAP), 1)
    hom: Verdict | None = None
    for x, y in dctx.tuples(2, PAIR_CAP, "hom-pairs"):
        up, lo = d_up(x, y), d_lo(x, y)
        tx, ty = spec.apply(x), spec.apply(y)
        up_t, lo_t = c_up(tx, ty), c_lo(tx, ty)
        if None in (up, lo, up_t, lo_t):
            hom_sw.skip((x, y), _UNRESOLVED)
            continue
        if spec.apply(up) != up_t or spec.apply(lo) != lo_t:
            hom = fails((x, y), reason="an envelope is not preserved")
            break
    if hom is None:
        hom = hom_sw.finish()

    verdicts = {"HOM": hom}
    for key, pick in (("ABS-LU", 1), ("ABS-UL", 0)):
        sw = _Sweep(dom, dctx, dctx.scope, 1)
        verdict: Verdict | None = None
        for x in dctx.base:
            d_vals = _abs_values(dom, dctx, x)
            c_vals = _abs_values(cod, cctx, spec.apply(x))
            if d_vals[pick] is None or c_vals[pick] is None:
                sw.skip((x,), _UNRESOLVED)
                continue
            if spec.apply(d_vals[pick]) != c_vals[pick]:
                verdict = fails((x,), reason=(
                    f"the {'lu' if pick else 'ul'} absolute value "
                    "is not preserved"))
                break
        verdicts[key] = verdict or sw.finish()

    outcomes = {v.outcome for v in verdicts.values()}
    expected = not finite_order_elements(cod, codomain_window, kmax=2)
    return HomomorphismReport(verdicts, len(outcomes) == 1, expected)


# the two structure-producing constructions sit alongside the law checkers
# in the public surface; implementations live in constructions.py
from .constructions import (ExtensionResult, extend_specific_order,  # noqa: E402
                            group_of_differences, zero_join_exists)
