"""Elements and carriers.

An element is a tuple of exact rational free coordinates plus a tuple of
torsion residues. Finite-explicit carriers reuse the same shape with a single
index slot, so one element type serves both carrier kinds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


class Element(NamedTuple):
    coords: tuple[Fraction, ...]
    torsion: tuple[int, ...]

    def __repr__(self) -> str:  # debugging aid; reports use render()
        return "Element" + render(self)


class CarrierError(ValueError):
    """Raised when a carrier description is inconsistent."""


@dataclass(frozen=True)
class Carrier:
    """A commutative monoid presented either as a grid or an explicit table.

    kind "grid": elements live in Q^rank x Z_m1 x ... x Z_mk with componentwise
    addition; `member_clauses` (from mixlat.clauses) may cut the grid down to a
    sub-monoid such as {0} u [2, inf). kind "finite": `names` and `table` give
    the elements and their addition; rank is 0 and the single torsion slot
    indexes the element list.
    """

    kind: str
    rank: int
    moduli: tuple[int, ...]
    has_negation: bool
    member_clauses: tuple = ()
    names: tuple[str, ...] = ()
    table: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("grid", "finite"):
            raise CarrierError(f"unknown carrier kind {self.kind!r}")
        if self.kind == "finite":
            if not self.names:
                raise CarrierError("finite carrier requires an element list")
            n = len(self.names)
            if len(set(self.names)) != n:
                raise CarrierError("duplicate element names")
            if len(self.table) != n or any(len(row) != n for row in self.table):
                raise CarrierError("addition table must be square over the element list")
            if self.rank != 0:
                raise CarrierError("finite carrier has rank 0")
        else:
            if self.rank < 0:
                raise CarrierError("rank must be nonnegative")
            if any(m < 2 for m in self.moduli):
                raise CarrierError("torsion moduli must be at least 2")

    @property
    def size(self) -> int:
        return len(self.names)

    def signature(self) -> tuple[int, tuple[int, ...]]:
        if self.kind == "finite":
            return (0, (len(self.names),))
        return (self.rank, self.moduli)

    def zero(self) -> Element:
        if self.kind == "finite":
            return Element((), (self._neutral_index(),))
        return Element((Fraction(0),) * self.rank, (0,) * len(self.moduli))

    def _neutral_index(self) -> int:
        for i, row in enumerate(self.table):
            if all(row[j] == j for j in range(len(self.names))):
                return i
        raise CarrierError("addition table has no neutral element")

    def add(self, x: Element, y: Element) -> Element:
        if self.kind == "finite":
            return Element((), (self.table[x.torsion[0]][y.torsion[0]],))
        coords = tuple(a + b for a, b in zip(x.coords, y.coords))
        tors = tuple((a + b) % m for a, b, m in zip(x.torsion, y.torsion, self.moduli))
        return Element(coords, tors)

    def negate(self, x: Element) -> Element:
        """Additive inverse. For grids this is the ambient inverse, which may
        fall outside a member-restricted carrier; callers guard on membership."""
        if self.kind == "finite":
            i = x.torsion[0]
            zero = self._neutral_index()
            for j in range(len(self.names)):
                if self.table[i][j] == zero:
                    return Element((), (j,))
            raise CarrierError(f"element {self.names[i]!r} has no inverse")
        coords = tuple(-a for a in x.coords)
        tors = tuple((-a) % m for a, m in zip(x.torsion, self.moduli))
        return Element(coords, tors)

    def sub(self, x: Element, y: Element) -> Element:
        if self.kind == "finite":
            return self.add(x, self.negate(y))
        coords = tuple(a - b for a, b in zip(x.coords, y.coords))
        tors = tuple((a - b) % m for a, b, m in zip(x.torsion, y.torsion, self.moduli))
        return Element(coords, tors)

    def scale(self, n: int, x: Element) -> Element:
        if n < 0:
            return self.negate(self.scale(-n, x))
        if self.kind == "finite":
            acc = self.zero()
            for _ in range(n):
                acc = self.add(acc, x)
            return acc
        coords = tuple(n * a for a in x.coords)
        tors = tuple((n * a) % m for a, m in zip(x.torsion, self.moduli))
        return Element(coords, tors)

    def check_element(self, x: Element) -> None:
        rank, moduli = self.signature()
        if len(x.coords) != rank or len(x.torsion) != len(moduli):
            raise CarrierError(f"element shape {render(x)} does not match carrier signature")
        for r, m in zip(x.torsion, moduli):
            if not 0 <= r < m:
                raise CarrierError(f"residue {r} out of range for modulus {m}")

    def element_from_numbers(self, values: tuple[Fraction, ...]) -> Element:
        """Build an element from rank + len(moduli) numbers, coords first."""
        rank, moduli = self.rank, self.moduli
        if self.kind == "finite":
            raise CarrierError("finite carrier elements are named, not numeric")
        if len(values) != rank + len(moduli):
            raise CarrierError(
                f"expected {rank + len(moduli)} components, got {len(values)}")
        coords = tuple(values[:rank])
        tors = []
        for v, m in zip(values[rank:], moduli):
            if v.denominator != 1:
                raise CarrierError(f"torsion component {v} is not an integer")
            tors.append(int(v) % m)
        return Element(coords, tuple(tors))


def norm(x: Element) -> Fraction:
    """Chebyshev norm of the free part; drives smallest-first enumeration."""
    if not x.coords:
        return Fraction(0)
    return max(abs(c) for c in x.coords)


def sort_key(x: Element):
    return (x.coords, x.torsion)


def ball_key(x: Element):
    """Order elements by norm first, then lexicographically."""
    return (norm(x), x.coords, x.torsion)


def render(x: Element, carrier: Carrier | None = None) -> str:
    """Canonical text form: bare value for a single component, tuple otherwise;
    finite-carrier elements render by name when the carrier is supplied."""
    if carrier is not None and carrier.kind == "finite":
        return carrier.names[x.torsion[0]]
    parts = [_render_q(c) for c in x.coords] + [str(t) for t in x.torsion]
    if len(parts) == 1:
        return parts[0]
    return "(" + ",".join(parts) + ")"


def _render_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CarrierError(f"bad rational {text!r}") from exc


def parse_element(text: str, carrier: Carrier) -> Element:
    """Parse "3", "-1/2", "(0,1)" or a finite element name."""
    text = text.strip()
    if carrier.kind == "finite":
        name = text.strip("()")
        if name not in carrier.names:
            raise CarrierError(f"unknown element {text!r}")
        return Element((), (carrier.names.index(name),))
    body = text[1:-1] if text.startswith("(") and text.endswith(")") else text
    values = tuple(parse_rational(p) for p in body.split(",") if p.strip())
    return carrier.element_from_numbers(values)
