"""Two-order structures.

A TwoOrderStructure bundles a carrier with two partial orders: the initial
order (<=) that all minima and maxima refer to, and the specific order that
supplies the other half of each mixed envelope constraint. It also carries a
default window, optional closed-form envelope hints, and recorded witnesses
for unbounded-behaviour checks. Structures are immutable once validated;
every operation is a pure query.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .axioms import carrier_violation, order_violation
from .elements import Carrier, CarrierError, Element, sort_key
from .orders import OrderSpec
from .verdicts import witness_text
from .windows import Window, WindowContext, WindowError, get_context

Hint = Callable[[Element, Element], Element | None]


class StructureError(ValueError):
    pass


class UnsupportedOperationError(CarrierError):
    pass


@dataclass(frozen=True)
class TwoOrderStructure:
    name: str
    carrier: Carrier
    initial: OrderSpec
    specific: OrderSpec
    default_window: Window
    upper_hint: Hint | None = None
    lower_hint: Hint | None = None
    # entries (which-order, (x, y), why the violation persists beyond any bound)
    archimedean_recorded: tuple = ()
    notes: str = ""

    def context(self, window: Window | None = None) -> WindowContext:
        return get_context(self.carrier, self.initial, self.specific,
                           window or self.default_window)

    def add(self, x: Element, y: Element) -> Element:
        return self.carrier.add(x, y)

    def negate(self, x: Element) -> Element:
        if not self.carrier.has_negation:
            raise UnsupportedOperationError(
                f"{self.name}: carrier has no negation")
        return self.carrier.negate(x)

    def compare(self, which: str, x: Element, y: Element) -> bool:
        if which not in ("initial", "specific"):
            raise StructureError(f"unknown order {which!r}")
        ctx = self.context()
        return ctx.leq(x, y) if which == "initial" else ctx.sleq(x, y)

    def validate(self, window: Window | None = None) -> None:
        """Monoid laws, member closure, and both orders' partial order laws
        plus translation compatibility; raises on the first violation."""
        ctx = self.context(window)
        hit = carrier_violation(ctx)
        if hit is not None:
            name, wit = hit
            raise StructureError(
                f"{self.name}: carrier violation: {name}, "
                f"witness {witness_text(wit, self.carrier)}")
        for which in ("initial", "specific"):
            hit = order_violation(ctx, which)
            if hit is not None:
                name, wit = hit
                raise StructureError(
                    f"{self.name}: axiom violation ({which} order): {name}, "
                    f"witness {witness_text(wit, self.carrier)}")


def build_structure(name: str, carrier: Carrier, initial: OrderSpec,
                    specific: OrderSpec, default_window: Window,
                    **extras) -> TwoOrderStructure:
    """Construct and validate in one step."""
    initial.validate(carrier)
    specific.validate(carrier)
    s = TwoOrderStructure(name, carrier, initial, specific, default_window, **extras)
    s.validate()
    return s


def enumerate_window(s: TwoOrderStructure, window: Window | None = None) -> tuple[Element, ...]:
    """The window's member elements in lexicographic order (coordinates,
    then torsion). Always finite, duplicate-free, and contains zero."""
    ctx = s.context(window)
    if s.carrier.zero() not in ctx.base:
        raise WindowError(f"{s.name}: window does not contain zero")
    return tuple(sorted(ctx.base, key=sort_key))
