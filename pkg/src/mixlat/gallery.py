"""Named example structures with pinned expected behavior.

Each catalog entry rebuilds one small two-order structure, attaches
closed-form envelope hints where a formula is known, and records the
classification rows, envelope values, and law verdicts the engine must
reproduce on the entry's default window.  ``run_regression`` replays
every pin and Holds only when all of them match, which makes the
catalog the regression core for the whole engine.

Default windows are chosen just large enough that every pinned value is
decided with a decisive certificate.  Entries that live on the real
line or plane in their usual presentation are instantiated over the
rationals; all of their defining constraints are rational-linear and
all pinned extrema are rational, so the substitution changes nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .classify import classify_structure
from .clauses import parse_clauses
from .elements import Carrier, Element
from .envelopes import lower_envelope, upper_envelope
from .laws import check_archimedean, check_law, finite_order_elements
from .orders import parse_order
from .structures import TwoOrderStructure, build_structure
from .verdicts import Outcome, Verdict, fails, holds, witness_text
from .windows import Window

__all__ = [
    "Expectation",
    "ExpectedBehavior",
    "GalleryEntry",
    "GalleryError",
    "build_gallery",
    "gallery_list",
    "run_regression",
]

_H = Outcome.HOLDS
_F = Outcome.FAILS
_U = Outcome.UNKNOWN


class GalleryError(ValueError):
    pass


def _el(*coords) -> Element:
    return Element(tuple(Fraction(c) for c in coords), ())


def _tel(free, tor: int) -> Element:
    return Element((Fraction(free),), (tor,))


def _win(lo, hi, rank: int = 1, q: int = 1, scale: int = 3) -> Window:
    return Window(((Fraction(lo), Fraction(hi)),) * rank, q=q, search_scale=scale)


# -- closed-form envelope hints --------------------------------------------
#
# Hints are verified against the windowed defining set before they are
# trusted, so a formula that is only valid on the default unit grid is
# still safe: a finer window rejects it and the scan decides instead.


def _halfline_upper(x: Element, y: Element) -> Element:
    # least w with w - x in {0} | [2, inf) and w >= y
    a, b = x.coords[0], y.coords[0]
    return x if a >= b else _el(max(b, a + 2))


def _halfline_lower(x: Element, y: Element) -> Element:
    a, b = x.coords[0], y.coords[0]
    return x if a <= b else _el(min(b, a - 2))


def _halfline_member_lower(x: Element, y: Element) -> Element | None:
    """Like _halfline_lower but snapped into the member set {0} | [2, inf):
    a greatest bound that lands in the open gap drops to 0."""
    a, b = x.coords[0], y.coords[0]
    if a <= b:
        return x
    m = min(b, a - 2)
    if m >= 2 or m == 0:
        return _el(m)
    return _el(0) if m > 0 else None


def _mod3_upper(x: Element, y: Element) -> Element:
    # climb from y in steps of 3 until standardly above x
    a, b = x.coords[0], y.coords[0]
    return _el(b + 3 * max(0, math.ceil((a - b) / 3)))


def _mod3_lower(x: Element, y: Element) -> Element | None:
    # descend from y in steps of 3; the carrier floor at 0 may empty the set
    a, b = x.coords[0], y.coords[0]
    v = b - 3 * max(0, math.ceil((b - a) / 3))
    return _el(v) if v >= 0 else None


def _double_lex_upper(x: Element, y: Element) -> Element:
    # one-step bumps assume the unit grid of the default window
    x1, x2 = x.coords
    y1, y2 = y.coords
    if x2 < y2:
        return y
    if x1 <= y1:
        return Element((y1, x2), ())
    return Element((y1, x2 + 1), ())


def _double_lex_lower(x: Element, y: Element) -> Element:
    x1, x2 = x.coords
    y1, y2 = y.coords
    if x2 > y2:
        return y
    if x1 >= y1:
        return Element((y1, x2), ())
    return Element((y1, x2 - 1), ())


def _lex_diag_upper(x: Element, y: Element) -> Element:
    x1, x2 = x.coords
    y1, y2 = y.coords
    return Element((y1, max(y2, x2 + abs(x1 - y1))), ())


def _lex_diag_lower(x: Element, y: Element) -> Element:
    x1, x2 = x.coords
    y1, y2 = y.coords
    return Element((y1, min(y2, x2 - abs(x1 - y1))), ())


def _diag_step_upper(x: Element, y: Element) -> Element:
    # diagonal translates of x; off-diagonal gaps must clear both step
    # thresholds at once, the diagonal itself is a chain on the unit grid
    a = x.coords[0] - y.coords[0]
    b = x.coords[1] - y.coords[1]
    if a == b:
        return x if a >= 0 else y
    t = max(0, 2 - a, 2 - b)
    return Element((x.coords[0] + t, x.coords[1] + t), ())


def _diag_step_lower(x: Element, y: Element) -> Element:
    a = x.coords[0] - y.coords[0]
    b = x.coords[1] - y.coords[1]
    if a == b:
        return x if a <= 0 else y
    t = max(0, 2 + a, 2 + b)
    return Element((x.coords[0] - t, x.coords[1] - t), ())


def _r3_upper(x: Element, y: Element) -> Element:
    # first two slots are forced by the cone equations; the third only has
    # to clear both slope constraints
    x1, x2, x3 = x.coords
    y1, y2, y3 = y.coords
    return Element((x1, y2, max(x3 + abs(y2 - x2), y3 + abs(x1 - y1))), ())


def _r3_lower(x: Element, y: Element) -> Element:
    x1, x2, x3 = x.coords
    y1, y2, y3 = y.coords
    return Element((x1, y2, min(x3 - abs(y2 - x2), y3 - abs(x1 - y1))), ())


def _torsion_upper(x: Element, y: Element) -> Element | None:
    xf, yf = x.coords[0], y.coords[0]
    xt, yt = x.torsion[0], y.torsion[0]
    d = yf - xf
    if d < 0:
        return x
    if d.denominator != 1:
        return None
    if (xt + int(d)) % 2 == yt:
        return y
    # parity mismatch at y's level: one more step lands on y's torsion bit
    return Element((yf + 1,), (yt,))


def _torsion_lower(x: Element, y: Element) -> Element | None:
    xf, yf = x.coords[0], y.coords[0]
    xt, yt = x.torsion[0], y.torsion[0]
    d = xf - yf
    if d < 0:
        return x
    if d.denominator != 1:
        return None
    if (xt + int(d)) % 2 == yt:
        return y
    return Element((yf - 1,), (yt,))


# -- structure builders -----------------------------------------------------


_HALFLINE_WINDOW = _win(-8, 8, q=2)
_HALFLINE_M_WINDOW = _win(0, 8)
_MOD3_WINDOW = _win(0, 12)
_PLANE_WINDOW = _win(-4, 4, rank=2)
_PLANE_WIDE_WINDOW = _win(-4, 4, rank=2, scale=5)
_TORSION_WINDOW = _win(-6, 6)
_R3_WINDOW = _win(-2, 2, rank=3, scale=7)

_GAP_CONE = "points: (0) | lin: x1 >= 2"
_LEX_X1 = "lin: x1 >= 1 | eq: x1 = 0 & lin: x2 >= 0"
_LEX_X2 = "lin: x2 >= 1 | eq: x2 = 0 & lin: x1 >= 0"


@lru_cache(maxsize=None)
def _build(name: str) -> TwoOrderStructure:
    if name == "halfline-gap-G":
        c = Carrier("grid", 1, (), True)
        return build_structure(
            name, c,
            parse_order("positive", "standard", c),
            parse_order("positive", _GAP_CONE, c),
            _HALFLINE_WINDOW,
            upper_hint=_halfline_upper, lower_hint=_halfline_lower)
    if name == "halfline-gap-M":
        base = Carrier("grid", 1, (), True)
        c = Carrier("grid", 1, (), False,
                    member_clauses=parse_clauses(_GAP_CONE, base))
        return build_structure(
            name, c,
            parse_order("positive", "standard", c),
            parse_order("positive", _GAP_CONE, c),
            _HALFLINE_M_WINDOW,
            upper_hint=_halfline_upper, lower_hint=_halfline_member_lower)
    if name == "nonneg-integers-mod3-cone":
        base = Carrier("grid", 1, (), True)
        c = Carrier("grid", 1, (), False,
                    member_clauses=parse_clauses("lin: x1 >= 0", base))
        return build_structure(
            name, c,
            parse_order("positive", "lin: x1 >= 0 & mod: x1 = 0 (mod 3)", c),
            parse_order("positive", "standard", c),
            _MOD3_WINDOW,
            upper_hint=_mod3_upper, lower_hint=_mod3_lower)
    if name == "double-lex":
        c = Carrier("grid", 2, (), True)
        return build_structure(
            name, c,
            parse_order("positive", _LEX_X1, c),
            parse_order("positive", _LEX_X2, c),
            _PLANE_WINDOW,
            upper_hint=_double_lex_upper, lower_hint=_double_lex_lower)
    if name == "r3-two-cones":
        c = Carrier("grid", 3, (), True)
        return build_structure(
            name, c,
            parse_order("positive",
                        "eq: x2 = 0 & lin: x3 - x1 >= 0 & lin: x3 + x1 >= 0", c),
            parse_order("positive",
                        "eq: x1 = 0 & lin: x3 - x2 >= 0 & lin: x3 + x2 >= 0", c),
            _R3_WINDOW,
            upper_hint=_r3_upper, lower_hint=_r3_lower)
    if name == "lex-diagcone":
        c = Carrier("grid", 2, (), True)
        return build_structure(
            name, c,
            parse_order("positive", _LEX_X1, c),
            parse_order("positive", "lin: x2 - x1 >= 0 & lin: x2 + x1 >= 0", c),
            _PLANE_WIDE_WINDOW,
            upper_hint=_lex_diag_upper, lower_hint=_lex_diag_lower)
    if name == "diag-step":
        c = Carrier("grid", 2, (), True)
        return build_structure(
            name, c,
            parse_order("positive",
                        "points: (0,0),(1,1) | lin: x1 >= 2 & lin: x2 >= 2", c),
            parse_order("positive",
                        "lin: x1 - x2 >= 0 & lin: x2 - x1 >= 0 & lin: x1 >= 0", c),
            _PLANE_WIDE_WINDOW,
            upper_hint=_diag_step_upper, lower_hint=_diag_step_lower,
            archimedean_recorded=(
                ("initial", (_el(0, -1), _el(2, 2)),
                 "every multiple n(0,-1) stays below (2,2) because the "
                 "difference (2, 2+n) has both entries at least 2"),))
    if name == "torsion-z2":
        c = Carrier("grid", 1, (2,), True)
        return build_structure(
            name, c,
            parse_order("positive", "lin: x1 >= 1 | points: (0,0)", c),
            parse_order("positive",
                        "lin: x1 >= 0 & mod: x1 = 0 (mod 2) & eq: t1 = 0 | "
                        "lin: x1 >= 0 & mod: x1 = 1 (mod 2) & eq: t1 = 1", c),
            _TORSION_WINDOW,
            upper_hint=_torsion_upper, lower_hint=_torsion_lower,
            archimedean_recorded=(
                ("initial", (_tel(0, 1), _tel(1, 0)),
                 "each multiple n(0,1) is (0,0) or (0,1), and both sit below "
                 "(1,0) because the difference has free part 1"),))
    raise GalleryError(f"unknown gallery name {name!r}")


# -- expectations -----------------------------------------------------------


class _EntryRun:
    """Engine state shared by the probes of one regression pass."""

    def __init__(self, entry: GalleryEntry):
        self.entry = entry
        self.structure = entry.builder()
        self.ctx = self.structure.context()
        self._report = None

    @property
    def report(self):
        if self._report is None:
            self._report = classify_structure(self.structure)
        return self._report


@dataclass(frozen=True)
class Expectation:
    """One pinned engine outcome: `probe` returns None on a match and a
    mismatch description otherwise.  `note` records how the pinned value
    was obtained."""

    label: str
    note: str
    probe: Callable[[_EntryRun], str | None]


@dataclass(frozen=True)
class ExpectedBehavior:
    classes: tuple[tuple[str, Outcome], ...]
    checks: tuple[Expectation, ...]


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    builder: Callable[[], TwoOrderStructure]
    default_window: Window
    expected: ExpectedBehavior
    notes: str = ""


def _outcome_text(v: Verdict, carrier: Carrier) -> str:
    out = v.outcome.value
    if v.witness:
        out += f" witness={witness_text(v.witness, carrier)}"
    return out


def _envelope_is(kind: str, x: Element, y: Element, value: Element | None,
                 note: str, detail_has: str | None = None) -> Expectation:
    def probe(run: _EntryRun) -> str | None:
        fn = upper_envelope if kind == "upper" else lower_envelope
        res = fn(run.structure, x, y)
        if res.value != value:
            return f"expected {value}, got {res.value} ({res.certificate})"
        if detail_has is not None and detail_has not in res.detail:
            return f"expected detail mentioning {detail_has!r}, got {res.detail!r}"
        return None

    c = "v" if kind == "upper" else "^"
    label = (f"{kind} envelope "
             f"{witness_text((x,))} {c} {witness_text((y,))}")
    return Expectation(label, note, probe)


def _law_is(law: str, outcome: Outcome, note: str,
            witness: tuple[Element, ...] | None = None,
            nmax: int = 8) -> Expectation:
    def probe(run: _EntryRun) -> str | None:
        v = check_law(run.structure, law, nmax=nmax)
        if v.outcome is not outcome:
            return f"expected {outcome.value}, got {_outcome_text(v, run.structure.carrier)}"
        if witness is not None and tuple(v.witness or ()) != witness:
            return (f"expected witness {witness_text(witness, run.structure.carrier)}, "
                    f"got {_outcome_text(v, run.structure.carrier)}")
        return None

    return Expectation(f"law {law}", note, probe)


def _class_is(class_id: str, outcome: Outcome, note: str,
              witness: tuple[Element, ...] | None = None,
              reason_has: str | None = None) -> Expectation:
    def probe(run: _EntryRun) -> str | None:
        v = run.report.verdicts[class_id]
        if v.outcome is not outcome:
            return f"expected {outcome.value}, got {_outcome_text(v, run.structure.carrier)}"
        if witness is not None and tuple(v.witness or ()) != witness:
            return (f"expected witness {witness_text(witness, run.structure.carrier)}, "
                    f"got {_outcome_text(v, run.structure.carrier)}")
        if reason_has is not None and reason_has not in (v.reason or ""):
            return f"expected reason mentioning {reason_has!r}, got {v.reason!r}"
        return None

    return Expectation(f"class {class_id}", note, probe)


def _arch_is(which: str, outcome: Outcome, note: str,
             witness: tuple[Element, ...] | None = None) -> Expectation:
    def probe(run: _EntryRun) -> str | None:
        v = check_archimedean(run.structure, which)
        if v.outcome is not outcome:
            return f"expected {outcome.value}, got {_outcome_text(v, run.structure.carrier)}"
        if witness is not None and tuple(v.witness or ()) != witness:
            return (f"expected witness {witness_text(witness, run.structure.carrier)}, "
                    f"got {_outcome_text(v, run.structure.carrier)}")
        return None

    return Expectation(f"{which}-order Archimedean", note, probe)


def _finite_orders_are(expected: tuple[tuple[Element, int], ...],
                       note: str) -> Expectation:
    def probe(run: _EntryRun) -> str | None:
        got = tuple(finite_order_elements(run.structure))
        if got != expected:
            return f"expected {expected}, got {got}"
        return None

    return Expectation("finite-order elements", note, probe)


def _order_sup(ctx, which: str, a: Element, b: Element):
    """Least upper bound of {a, b} inside one order over the search box,
    or (None, reason).  Classification only ever uses the mixed envelopes,
    so this single-order probe lives here with the entries that pin it."""
    cmp = ctx.order(which)
    ubs = [w for w in ctx.search if cmp(a, w) and cmp(b, w)]
    if not ubs:
        return None, "upper-bound set empty in window"
    best = ubs[0]
    for w in ubs[1:]:
        if cmp(w, best):
            best = w
    for w in ubs:
        if not cmp(best, w):
            return None, "upper-bound set has no least member"
    return best, "least upper bound in window"


def _no_order_sup(which: str, a: Element, b: Element, note: str) -> Expectation:
    def probe(run: _EntryRun) -> str | None:
        value, reason = _order_sup(run.ctx, which, a, b)
        if value is not None:
            return f"expected no supremum, got {witness_text((value,), run.structure.carrier)}"
        return None

    pair = witness_text((a, b))
    return Expectation(f"{which}-order sup of {pair}", note, probe)


def _sum_outside_both_cones(x: Element, y: Element, value: Element,
                            note: str) -> Expectation:
    """Pins upper(x, y) = value and that value - x escapes the set of
    elements positive in both orders at once."""

    def probe(run: _EntryRun) -> str | None:
        res = upper_envelope(run.structure, x, y)
        if res.value != value:
            return f"expected {value}, got {res.value}"
        d = run.structure.carrier.sub(res.value, x)
        zero = run.structure.carrier.zero()
        if run.ctx.leq(zero, d) and run.ctx.sleq(zero, d):
            return (f"difference {witness_text((d,), run.structure.carrier)} "
                    "is positive in both orders")
        return None

    return Expectation("upper envelope escapes the doubly-positive set",
                       note, probe)


_SEMI_ROW_FAILS = (
    ("A-STRUCTURE", _F), ("POSITIVE-A", _F), ("WEAK-MLS", _F), ("MLS", _F),
    ("B-STRUCTURE", _F), ("POSITIVE-B", _F))
_GROUP_ROW_UNSUPPORTED = (
    ("MLG", _U), ("PRE-NORMAL", _U), ("NORMAL", _U), ("PRE-REGULAR", _U),
    ("QUASI-REGULAR", _U), ("REGULAR", _U))


def _expected_for(name: str) -> ExpectedBehavior:
    if name == "halfline-gap-G":
        return ExpectedBehavior(
            classes=_SEMI_ROW_FAILS + (
                ("MLG", _H), ("PRE-NORMAL", _H), ("NORMAL", _H),
                ("PRE-REGULAR", _H), ("QUASI-REGULAR", _F), ("REGULAR", _F)),
            checks=(
                _envelope_is("lower", _el(3), _el(2), _el(1),
                             "dual of the piecewise closed form: 3 > 2, so "
                             "the greatest bound is min(2, 3 - 2) = 1"),
                _envelope_is("upper", _el(3), _el(2), _el(3),
                             "3 already sits above 2, so the least bound is 3 itself"),
                _class_is("QUASI-REGULAR", _F,
                          "both 5/2 and 2 sit in the specific cone but their "
                          "meet 1/2 lands in the open gap",
                          witness=(_el(Fraction(5, 2)), _el(2))),
                _law_is("R0", _H, "the specific cone is a subset of the "
                        "initial one, so joins with 0 stay initial-positive"),
                _law_is("P1", _H, "the mixed join/meet pair splits every sum, "
                        "verified over all window pairs"),
            ))
    if name == "halfline-gap-M":
        return ExpectedBehavior(
            classes=(
                ("A-STRUCTURE", _H), ("POSITIVE-A", _H), ("WEAK-MLS", _H),
                ("MLS", _F), ("B-STRUCTURE", _F), ("POSITIVE-B", _F),
            ) + _GROUP_ROW_UNSUPPORTED,
            checks=(
                _envelope_is("lower", _el(3), _el(2), _el(0),
                             "the unsnapped greatest bound 1 falls in the gap; "
                             "the member set drops it to 0"),
                _envelope_is("lower", _el(5), _el(4), _el(3),
                             "min(4, 5 - 2) = 3 is a member, so no snapping"),
                _law_is("TRANS-LOW", _F,
                        "translating the meet 3 ^ 2 by 2 overshoots: "
                        "(3+2) ^ (2+2) = 3 but (3 ^ 2) + 2 = 2",
                        witness=(_el(3), _el(2), _el(2))),
                _law_is("MLS-SLEQ", _F,
                        "the defect pair of the identity that full mixed "
                        "lattice semigroups satisfy", witness=(_el(3), _el(2))),
                _law_is("WMLS-INEQ", _H,
                        "the weakened inequality form survives the gap"),
            ))
    if name == "nonneg-integers-mod3-cone":
        return ExpectedBehavior(
            classes=(
                ("A-STRUCTURE", _H), ("POSITIVE-A", _F), ("WEAK-MLS", _F),
                ("MLS", _F), ("B-STRUCTURE", _F), ("POSITIVE-B", _F),
            ) + _GROUP_ROW_UNSUPPORTED,
            checks=(
                _envelope_is("lower", _el(1), _el(2), None,
                             "descending from 2 in steps of 3 immediately "
                             "leaves the carrier, so no candidate exists",
                             detail_has="defining set empty"),
                _envelope_is("upper", _el(1), _el(2), _el(2),
                             "2 is standardly above 1 and initial steps of 3 "
                             "from 2 only climb, so the least bound is 2"),
                _law_is("POS-A", _F,
                        "1 v 0 = 3 is not initially below 0 + 1 because "
                        "3 - 1 = 2 is no multiple of 3", witness=(_el(0), _el(1))),
                _law_is("P0", _U,
                        "the pair (0,1) has no meet inside the carrier, so "
                        "the sweep cannot decide", witness=(_el(0), _el(1))),
                _law_is("P5B", _U,
                        "the first premise pair already lacks its envelope",
                        witness=(_el(1), _el(0))),
            ))
    if name == "double-lex":
        return ExpectedBehavior(
            classes=_SEMI_ROW_FAILS + (
                ("MLG", _H), ("PRE-NORMAL", _F), ("NORMAL", _F),
                ("PRE-REGULAR", _F), ("QUASI-REGULAR", _F), ("REGULAR", _F)),
            checks=(
                _sum_outside_both_cones(
                    _el(1, 1), _el(0, 1), _el(0, 2),
                    "the join bumps the second slot one step past 1; its "
                    "offset (-1,1) from (1,1) is initially negative, so the "
                    "doubly-positive subset is not closed under this join"),
                _class_is("PRE-NORMAL", _F,
                          "(-1,1) is specifically positive while its negative "
                          "(1,-1) is initially positive", witness=(_el(-1, 1),)),
                _law_is("R0", _F,
                        "joining (1,-1) with 0 lands at (0,0) + a specific "
                        "step that is initially negative",
                        witness=(_el(0, 0), _el(1, -1))),
                _law_is("QR-C", _F,
                        "the quasi-regularity chain breaks at the first "
                        "specifically-positive initially-negative element",
                        witness=(_el(0, 0), _el(-1, 1), _el(0, 0))),
            ))
    if name == "r3-two-cones":
        return ExpectedBehavior(
            classes=_SEMI_ROW_FAILS + (
                ("MLG", _H), ("PRE-NORMAL", _H), ("NORMAL", _F),
                ("PRE-REGULAR", _F), ("QUASI-REGULAR", _F), ("REGULAR", _F)),
            checks=(
                _envelope_is("upper", _el(0, 1, 1), _el(1, 0, 1), _el(0, 0, 2),
                             "the cone equations force slots (x1, y2); the "
                             "third slot clears both slope constraints at 2"),
                _envelope_is("lower", _el(0, 1, 1), _el(1, 0, 1), _el(0, 0, 0),
                             "dual form: min(1 - 1, 1 - 1) = 0 in the third slot"),
                _class_is("NORMAL", _F,
                          "the two cones sit crosswise: neither contains the "
                          "other", witness=(_el(0, -1, 1), _el(-1, 0, 1))),
                _law_is("R0", _H,
                        "joins with 0 stay initially positive although the "
                        "cones differ"),
                _law_is("QR-C", _F,
                        "(0,-1,1) is specifically positive but initially "
                        "negative, breaking the chain at 0",
                        witness=(_el(0, 0, 0), _el(0, -1, 1), _el(0, 0, 0))),
            ))
    if name == "lex-diagcone":
        return ExpectedBehavior(
            classes=_SEMI_ROW_FAILS + (
                ("MLG", _H), ("PRE-NORMAL", _F), ("NORMAL", _F),
                ("PRE-REGULAR", _F), ("QUASI-REGULAR", _F), ("REGULAR", _F)),
            checks=(
                _envelope_is("upper", _el(-1, 1), _el(1, 1), _el(1, 3),
                             "the diagonal cone forces the second slot up to "
                             "1 + |(-1) - 1| = 3 over the first slot 1"),
                _envelope_is("lower", _el(-1, 1), _el(1, 1), _el(1, -1),
                             "dual form: (1, min(1, 1 - 2)) = (1, -1)"),
                _class_is("PRE-NORMAL", _F,
                          "(-1,1) sits in the diagonal cone while (1,-1) is "
                          "initially positive", witness=(_el(-1, 1),)),
                _law_is("R0", _F,
                        "joining (1,-1) with 0 exits the initial cone",
                        witness=(_el(0, 0), _el(1, -1))),
                _law_is("POS-A", _F,
                        "the join of two initially negative elements need "
                        "not stay below their sum",
                        witness=(_el(0, 0), _el(-1, -1))),
                _law_is("QR-C", _F,
                        "the chain breaks at the diagonal element (-1,1)",
                        witness=(_el(0, 0), _el(-1, 1), _el(0, 0))),
            ))
    if name == "diag-step":
        return ExpectedBehavior(
            classes=_SEMI_ROW_FAILS + (
                ("MLG", _H), ("PRE-NORMAL", _H), ("NORMAL", _H),
                ("PRE-REGULAR", _H), ("QUASI-REGULAR", _H), ("REGULAR", _U)),
            checks=(
                _law_is("DIV-LEQ", _F,
                        "2(1,2) = (2,4) clears both step thresholds but "
                        "(1,2) itself does not", witness=(_el(1, 2),), nmax=2),
                _arch_is("initial", _F,
                         "every multiple of (0,-1) stays below (2,2); the "
                         "violating pair is recorded on the structure",
                         witness=(_el(0, -1), _el(2, 2))),
                _law_is("R0", _H,
                        "diagonal joins with 0 are initially positive"),
                _envelope_is("upper", _el(0, 0), _el(1, 2), _el(4, 4),
                             "(4,4) is the first diagonal point whose offset "
                             "from (1,2) clears both step thresholds"),
            ))
    if name == "torsion-z2":
        return ExpectedBehavior(
            classes=_SEMI_ROW_FAILS + (
                ("MLG", _H), ("PRE-NORMAL", _H), ("NORMAL", _H),
                ("PRE-REGULAR", _H), ("QUASI-REGULAR", _H), ("REGULAR", _U)),
            checks=(
                _finite_orders_are(
                    ((_tel(0, 1), 2),),
                    "(0,1) + (0,1) = (0,0): the torsion bit is the only "
                    "source of finite order"),
                _arch_is("initial", _F,
                         "multiples of (0,1) alternate between (0,0) and "
                         "(0,1), both below (1,0); recorded on the structure",
                         witness=(_tel(0, 1), _tel(1, 0))),
                _arch_is("specific", _H,
                         "in the parity-linked order no in-window pair "
                         "survives the multiple sweep"),
                _no_order_sup("initial", _tel(0, 0), _tel(0, 1),
                              "the common upper bounds (1,0) and (1,1) are "
                              "incomparable, so no least one exists"),
                _no_order_sup("specific", _tel(0, 0), _tel(0, 1),
                              "the parity links of the two elements "
                              "contradict, so no common upper bound exists"),
                _law_is("DIV-SLEQ", _F,
                        "2(0,1) = (0,0) is specifically positive but (0,1) "
                        "is not", witness=(_tel(0, 1),), nmax=2),
                _law_is("QR-C", _H,
                        "the parity-linked cone sits inside the initial one"),
                _class_is("REGULAR", _U, "the window cannot decide whether "
                          "the specific cone generates the group",
                          reason_has="decomposition"),
            ))
    raise GalleryError(f"unknown gallery name {name!r}")


_RATIONAL_NOTE = ("Usually presented over the reals; instantiated over the "
                  "rationals, which changes no pinned value because every "
                  "constraint is rational-linear and every pinned extremum "
                  "is rational.")

_NOTES = {
    "halfline-gap-G": (
        "The rational line under addition with its standard order, and a "
        "specific cone {0} | [2, inf) that leaves a gap. " + _RATIONAL_NOTE),
    "halfline-gap-M": (
        "The sub-semigroup {0} | [2, inf) of halfline-gap-G with the "
        "restricted orders: meets that fall into the gap snap down to 0. "
        + _RATIONAL_NOTE),
    "nonneg-integers-mod3-cone": (
        "Nonnegative integers where the initial order only steps in "
        "multiples of 3 and the specific order is standard; some meets "
        "do not exist at all."),
    "double-lex": (
        "The plane with two lexicographic orders, led by the first and the "
        "second slot respectively. " + _RATIONAL_NOTE),
    "r3-two-cones": (
        "Rational 3-space with two crosswise wedge cones, one opening along "
        "the first slot, one along the second. " + _RATIONAL_NOTE),
    "lex-diagcone": (
        "The plane with the first-slot lexicographic order and the upward "
        "diagonal wedge |x1| <= x2 as specific cone. " + _RATIONAL_NOTE),
    "diag-step": (
        "The plane where initial positivity needs both slots to clear a "
        "step threshold of 2 (plus the isolated points (0,0) and (1,1)) "
        "while the specific cone is the nonnegative diagonal. "
        + _RATIONAL_NOTE),
    "torsion-z2": (
        "Integers times a two-element torsion part; the specific order "
        "links the parity of the free part to the torsion bit, so (0,1) "
        "has order 2."),
}

_CATALOG = (
    "nonneg-integers-mod3-cone",
    "halfline-gap-G",
    "halfline-gap-M",
    "double-lex",
    "r3-two-cones",
    "lex-diagcone",
    "diag-step",
    "torsion-z2",
)


def gallery_list() -> list[str]:
    return list(_CATALOG)


@lru_cache(maxsize=None)
def build_gallery(name: str) -> GalleryEntry:
    if name not in _CATALOG:
        raise GalleryError(f"unknown gallery name {name!r}")
    structure = _build(name)
    return GalleryEntry(
        name=name,
        builder=lambda: structure,
        default_window=structure.default_window,
        expected=_expected_for(name),
        notes=_NOTES[name])


def run_regression(name: str) -> Verdict:
    """Replay every pinned expectation of one entry.

    Holds iff the classification row, every pinned envelope value, and
    every pinned law verdict match the engine's output on the default
    window; Fails lists the mismatches in its reason."""
    entry = build_gallery(name)
    run = _EntryRun(entry)
    mismatches = []
    for class_id, want in entry.expected.classes:
        got = run.report.verdicts[class_id].outcome
        if got is not want:
            mismatches.append(
                f"class {class_id}: expected {want.value}, got {got.value}")
    for check in entry.expected.checks:
        bad = check.probe(run)
        if bad is not None:
            mismatches.append(f"{check.label}: {bad}")
    count = len(entry.expected.classes) + len(entry.expected.checks)
    if mismatches:
        shown = "; ".join(mismatches[:6])
        if len(mismatches) > 6:
            shown += f"; and {len(mismatches) - 6} more"
        return fails((), reason=shown)
    return holds(scope=f"{count} expectations, {run.ctx.scope}")
