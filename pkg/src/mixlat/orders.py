"""Order descriptions.

A partial order on a carrier comes in one of two styles:

    positive   a <= b iff b - a lies in a clause-defined positive set; grids
               only, since the test uses the ambient difference and is exact
               regardless of any membership restriction on the carrier.
    pairs      the reflexive-transitive closure of finitely many generating
               pairs; finite-explicit carriers only.

Order axioms (antisymmetry, translation compatibility, ...) are checked by
the axiom layer, never assumed here.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .clauses import Clause, clauses_text, member, parse_clauses
from .elements import Carrier, Element, parse_element, render


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class OrderSpec:
    style: str  # "positive" | "pairs"
    clauses: tuple[Clause, ...] = ()
    pairs: tuple[tuple[Element, Element], ...] = ()

    def __post_init__(self) -> None:
        if self.style not in ("positive", "pairs"):
            raise OrderError(f"unknown order style {self.style!r}")

    def validate(self, carrier: Carrier) -> None:
        if self.style == "positive" and carrier.kind != "grid":
            raise OrderError("positive-set orders require a grid carrier")
        if self.style == "pairs" and carrier.kind != "finite":
            raise OrderError("pair-generated orders require a finite carrier")
        for a, b in self.pairs:
            carrier.check_element(a)
            carrier.check_element(b)

    def leq(self, carrier: Carrier, a: Element, b: Element) -> bool:
        if self.style == "positive":
            return member(self.clauses, carrier.sub(b, a))
        rows = _pairs_closure(self.pairs, carrier.size)
        return bool(rows[a.torsion[0]] >> b.torsion[0] & 1)


@lru_cache(maxsize=None)
def _pairs_closure(pairs: tuple[tuple[Element, Element], ...], n: int) -> tuple[int, ...]:
    """Row i is a bitmask of the j with i <= j, closed reflexively and
    transitively."""
    rows = [1 << i for i in range(n)]
    for a, b in pairs:
        rows[a.torsion[0]] |= 1 << b.torsion[0]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            row = rows[i]
            new, rest = row, row
            while rest:
                lsb = rest & -rest
                new |= rows[lsb.bit_length() - 1]
                rest ^= lsb
            if new != row:
                rows[i] = new
                changed = True
    return tuple(rows)


def parse_order(style: str, value: str, carrier: Carrier) -> OrderSpec:
    if style == "positive":
        spec = OrderSpec("positive", clauses=parse_clauses(value, carrier))
    elif style == "pairs":
        pairs = []
        for chunk in value.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if not (chunk.startswith("(") and chunk.endswith(")")):
                raise OrderError(f"pair {chunk!r} must be parenthesized")
            left, sep, right = chunk[1:-1].partition(",")
            if not sep:
                raise OrderError(f"pair {chunk!r} needs two elements")
            pairs.append((parse_element(left, carrier), parse_element(right, carrier)))
        spec = OrderSpec("pairs", pairs=tuple(pairs))
    else:
        raise OrderError(f"order must be given as positive=... or pairs=..., got {style!r}")
    spec.validate(carrier)
    return spec


def order_text(order: OrderSpec, carrier: Carrier) -> tuple[str, str]:
    """Return the (key, value) line for a spec file section."""
    if order.style == "positive":
        return "positive", clauses_text(order.clauses, carrier)
    body = ";".join(
        f"({render(a, carrier)},{render(b, carrier)})" for a, b in order.pairs)
    return "pairs", body
