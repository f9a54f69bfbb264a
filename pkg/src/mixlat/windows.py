"""Windows and window contexts.

All universal claims are checked over a finite window of the carrier. A
Window fixes per-coordinate bounds and a grid denominator q (step 1/q); the
search box for envelope candidates is the window scaled by `search_scale` so
that extrema living just outside the stated bounds are still found. Windowed
verdicts carry the window description as their scope.

A WindowContext caches everything expensive: the ball-ordered member lists,
memoized order tests keyed by ambient differences, the positive-set cones
used to generate envelope defining sets, and an envelope result memo.
"""
from __future__ import annotations

import itertools
import os
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

from .clauses import member as clause_member
from .elements import Carrier, Element, ball_key, norm
from .orders import OrderSpec

DEFAULT_CAP = 10**6


class WindowError(ValueError):
    pass


def window_cap() -> int:
    raw = os.environ.get("MIXLAT_WINDOW_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise WindowError(f"bad MIXLAT_WINDOW_CAP value {raw!r}") from exc


@dataclass(frozen=True)
class Window:
    """bounds: one (lo, hi) pair per free coordinate. q: grid denominator.
    search_scale: factor applied to the bounds for envelope candidate search.
    elements: optional explicit member sublist (finite carriers)."""

    bounds: tuple[tuple[Fraction, Fraction], ...] = ()
    q: int = 1
    search_scale: int = 3
    elements: tuple[Element, ...] = ()

    def __post_init__(self) -> None:
        if self.q < 1:
            raise WindowError("q must be a positive integer")
        if self.search_scale < 1:
            raise WindowError("search_scale must be a positive integer")
        for lo, hi in self.bounds:
            if lo > hi:
                raise WindowError(f"empty bound [{lo},{hi}]")

    def describe(self) -> str:
        if not self.bounds:
            if self.elements:
                return f"elements={len(self.elements)}"
            return "full-carrier"
        spans = {b: 0 for b in self.bounds}
        for b in self.bounds:
            spans[b] += 1
        parts = []
        for (lo, hi), count in spans.items():
            box = f"[{_fmt(lo)},{_fmt(hi)}]"
            parts.append(box if count == 1 else f"{box}^{count}")
        return "x".join(parts) + f" q={self.q}"

    def search_bounds(self) -> tuple[tuple[Fraction, Fraction], ...]:
        s = self.search_scale
        return tuple((min(lo, lo * s), max(hi, hi * s)) for lo, hi in self.bounds)


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _box_points(bounds: tuple[tuple[Fraction, Fraction], ...], q: int,
                moduli: tuple[int, ...], cap: int):
    """All grid elements in the box, unordered. Raises when the count would
    exceed the enumeration cap."""
    counts = []
    for lo, hi in bounds:
        k_lo = -((-lo * q).__floor__())  # ceil(lo*q)
        k_hi = (hi * q).__floor__()
        counts.append(max(0, k_hi - k_lo + 1))
    total = 1
    for c in counts:
        total *= c
    for m in moduli:
        total *= m
    if total > cap:
        raise WindowError(
            f"window would enumerate {total} elements, over the cap {cap}; "
            "shrink the window or raise MIXLAT_WINDOW_CAP")
    axes = []
    for lo, hi in bounds:
        k_lo = -((-lo * q).__floor__())
        k_hi = (hi * q).__floor__()
        axes.append([Fraction(k, q) for k in range(k_lo, k_hi + 1)])
    for m in moduli:
        axes.append([Fraction(r) for r in range(m)])
    n_free = len(bounds)
    for combo in itertools.product(*axes):
        yield Element(tuple(combo[:n_free]),
                      tuple(int(r) for r in combo[n_free:]))


class WindowContext:
    """Enumeration and memoization for one (carrier, orders, window) triple."""

    def __init__(self, carrier: Carrier, initial: OrderSpec, specific: OrderSpec,
                 window: Window) -> None:
        self.carrier = carrier
        self.initial = initial
        self.specific = specific
        self.window = window
        self.scope = window.describe()
        cap = window_cap()
        self._member_memo: dict[Element, bool] = {}
        self._leq_memo: dict[Element, bool] = {}
        self._sleq_memo: dict[Element, bool] = {}
        self._tuples_memo: dict = {}
        self.zero = carrier.zero()
        self.envelope_memo: dict = {}

        if carrier.kind == "finite":
            everything = [Element((), (i,)) for i in range(carrier.size)]
            base = list(window.elements) if window.elements else list(everything)
            for x in base:
                carrier.check_element(x)
            self.base = tuple(sorted(base, key=ball_key))
            self.search = tuple(everything)
            self.initial_cone = ()
            self.specific_cone = ()
            self.search_box = ()
            return

        if not window.bounds and carrier.rank > 0:
            raise WindowError("grid carrier needs per-coordinate window bounds")
        if len(window.bounds) != carrier.rank:
            raise WindowError(
                f"window has {len(window.bounds)} bounds for rank {carrier.rank}")

        base = [x for x in _box_points(window.bounds, window.q, carrier.moduli, cap)
                if self.member(x)]
        self.base = tuple(sorted(base, key=ball_key))
        sbounds = window.search_bounds()
        search = [x for x in _box_points(sbounds, window.q, carrier.moduli, cap)
                  if self.member(x)]
        self.search = tuple(sorted(search, key=ball_key))
        self.search_box = sbounds
        # Differences of two search-box points land in the doubled box; the
        # cones live there so every candidate w = u + c is reachable.  Only
        # the filtered cones are sorted; the ambient box is far larger.
        cone_bounds = tuple((lo - hi, hi - lo) for lo, hi in sbounds)
        ambient = list(_box_points(cone_bounds, window.q, carrier.moduli, cap))
        self.initial_cone = tuple(sorted(
            (c for c in ambient if clause_member(initial.clauses, c)),
            key=ball_key)) if initial.style == "positive" else ()
        self.specific_cone = tuple(sorted(
            (c for c in ambient if clause_member(specific.clauses, c)),
            key=ball_key)) if specific.style == "positive" else ()

    # -- membership and orders --------------------------------------------

    def member(self, x: Element) -> bool:
        """Carrier membership (shape assumed valid)."""
        if self.carrier.kind == "finite":
            return True
        if not self.carrier.member_clauses:
            return True
        hit = self._member_memo.get(x)
        if hit is None:
            hit = clause_member(self.carrier.member_clauses, x)
            self._member_memo[x] = hit
        return hit

    def in_search_box(self, x: Element) -> bool:
        if self.carrier.kind == "finite":
            return True
        return all(lo <= c <= hi for c, (lo, hi) in zip(x.coords, self.search_box))

    def leq(self, a: Element, b: Element) -> bool:
        if self.initial.style == "pairs":
            return self.initial.leq(self.carrier, a, b)
        d = b if a == self.zero else self.carrier.sub(b, a)
        hit = self._leq_memo.get(d)
        if hit is None:
            hit = clause_member(self.initial.clauses, d)
            self._leq_memo[d] = hit
        return hit

    def sleq(self, a: Element, b: Element) -> bool:
        if self.specific.style == "pairs":
            return self.specific.leq(self.carrier, a, b)
        d = b if a == self.zero else self.carrier.sub(b, a)
        hit = self._sleq_memo.get(d)
        if hit is None:
            hit = clause_member(self.specific.clauses, d)
            self._sleq_memo[d] = hit
        return hit

    def order(self, which: str):
        """The comparison callable for "initial" or "specific"."""
        return self.leq if which == "initial" else self.sleq

    @property
    def base_set(self) -> frozenset:
        hit = getattr(self, "_base_set", None)
        if hit is None:
            hit = self._base_set = frozenset(self.base)
        return hit

    def cone_with_norms(self, which: str, negated: bool = False):
        """One positive cone plus the parallel list of member norms; the cone
        is ball-sorted, so the norms are nondecreasing and bisectable.  With
        `negated` the elementwise-negated cone is returned, itself ball-sorted
        (norms are negation-invariant, so the same norm list serves both)."""
        cone = self.initial_cone if which == "initial" else self.specific_cone
        attr = "_initial_cone_aux" if which == "initial" else "_specific_cone_aux"
        aux = getattr(self, attr, None)
        if aux is None:
            neg = tuple(sorted((self.carrier.negate(c) for c in cone),
                               key=ball_key))
            aux = (neg, [norm(c) for c in cone])
            setattr(self, attr, aux)
        return (aux[0] if negated else cone), aux[1]

    # -- deterministic tuple streams ---------------------------------------

    def tuples(self, arity: int, cap: int, label: str) -> tuple[tuple[Element, ...], ...]:
        """Tuples over the base window in ball order: sorted by the largest
        component norm first, then componentwise. When the full product
        exceeds `cap`, a deterministic seeded sample (always including the
        all-components-small region via the first cap//4 tuples of the sorted
        ball enumeration) is used instead; callers report the narrowed scope.
        """
        memo_key = (arity, cap, label)
        hit = self._tuples_memo.get(memo_key)
        if hit is not None:
            return hit
        n = len(self.base)
        total = n ** arity
        if total <= cap:
            combos = list(itertools.product(self.base, repeat=arity))
            combos.sort(key=_tuple_key)
            combos = tuple(combos)
            self._tuples_memo[memo_key] = combos
            return combos
        head_count = max(1, cap // 4)
        head_side = 1
        while (head_side + 1) ** arity <= head_count and head_side < n:
            head_side += 1
        head = list(itertools.product(self.base[:head_side], repeat=arity))
        seed = zlib.crc32(f"{label}|{arity}|{n}|{cap}".encode())
        picks: set[int] = set()
        state = seed or 1
        want = cap - len(head)
        limit = 8 * cap
        while len(picks) < want and limit > 0:
            state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
            picks.add((state >> 16) % total)
            limit -= 1
        sampled = [_decode_tuple(self.base, arity, ix) for ix in sorted(picks)]
        combos = list({t for t in head + sampled})
        combos.sort(key=_tuple_key)
        combos = tuple(combos)
        self._tuples_memo[memo_key] = combos
        return combos

    def tuples_scope(self, arity: int, cap: int) -> str:
        n = len(self.base)
        if n ** arity <= cap:
            return self.scope
        return f"{self.scope} sampled={cap}/{n ** arity}"


def _tuple_key(combo: tuple[Element, ...]):
    return (max(norm(e) for e in combo), tuple(ball_key(e) for e in combo))


def _decode_tuple(base: tuple[Element, ...], arity: int, index: int) -> tuple[Element, ...]:
    n = len(base)
    out = []
    for _ in range(arity):
        index, r = divmod(index, n)
        out.append(base[r])
    return tuple(out)


_CONTEXTS: dict[tuple, WindowContext] = {}


def get_context(carrier: Carrier, initial: OrderSpec, specific: OrderSpec,
                window: Window) -> WindowContext:
    key = (carrier, initial, specific, window)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        ctx = WindowContext(carrier, initial, specific, window)
        _CONTEXTS[key] = ctx
    return ctx
