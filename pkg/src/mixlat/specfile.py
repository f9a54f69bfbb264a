"""Structure description files.

Line-oriented UTF-8 text, `#` starts a comment, sections in brackets:

    [meta]            optional: name = my-structure
    [carrier]         kind = grid|finite, rank = <int>, moduli = m1,m2,...,
                      negation = true|false, members = <clauses> (grid
                      sub-monoids); finite kind instead: elements = e0,e1,...
                      and add = table rows (comma inside a row, ; between)
    [order.initial]   pairs = (a,b);(c,d);...  or  positive = <clauses>
    [order.specific]  same
    [window]          bounds = [lo1,hi1];[lo2,hi2];..., q = <int>,
                      search_scale = <int>, elements = e3,e7 (finite subsets)

Clause syntax lives in mixlat.clauses. Round-trip guarantee:
parse -> build -> serialize -> parse gives an equivalent structure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .clauses import ClauseError, clauses_text, parse_clauses
from .elements import Carrier, CarrierError, Element, parse_element, parse_rational, render
from .orders import OrderError, OrderSpec, order_text, parse_order
from .structures import TwoOrderStructure, build_structure as _build
from .windows import Window, WindowError


class SpecError(ValueError):
    pass


@dataclass
class SpecDocument:
    sections: dict[str, dict[str, str]] = field(default_factory=dict)

    @property
    def name(self) -> str | None:
        return self.sections.get("meta", {}).get("name")

    def section(self, title: str) -> dict[str, str]:
        try:
            return self.sections[title]
        except KeyError:
            raise SpecError(f"missing [{title}] section") from None


_SECTIONS = ("meta", "carrier", "order.initial", "order.specific", "window")


def parse_spec(text: str) -> SpecDocument:
    doc = SpecDocument()
    current: dict[str, str] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            title = line[1:-1].strip()
            if title not in _SECTIONS:
                raise SpecError(f"line {lineno}: unknown section [{title}]")
            if title in doc.sections:
                raise SpecError(f"line {lineno}: duplicate section [{title}]")
            current = doc.sections.setdefault(title, {})
            continue
        if current is None:
            raise SpecError(f"line {lineno}: content before any section header")
        key, sep, value = line.partition("=")
        if not sep:
            raise SpecError(f"line {lineno}: expected key = value, got {line!r}")
        key = key.strip()
        if key in current:
            raise SpecError(f"line {lineno}: duplicate key {key!r}")
        current[key] = value.strip()
    if "carrier" not in doc.sections:
        raise SpecError("missing [carrier] section")
    return doc


def _parse_carrier(sec: dict[str, str]) -> Carrier:
    kind = sec.get("kind")
    if kind not in ("grid", "finite"):
        raise SpecError(f"carrier kind must be grid or finite, got {kind!r}")
    negation = _parse_bool(sec.get("negation", "false"))
    if kind == "finite":
        names = tuple(n.strip() for n in sec.get("elements", "").split(",") if n.strip())
        if not names:
            raise SpecError("finite carrier needs elements = name,name,...")
        rows = []
        for row in sec.get("add", "").split(";"):
            entries = [e.strip() for e in row.split(",") if e.strip()]
            if entries:
                rows.append(tuple(_name_index(e, names) for e in entries))
        table = tuple(rows)
        if len(table) != len(names) or any(len(r) != len(names) for r in table):
            raise SpecError("addition table not square over the element list")
        return Carrier("finite", 0, (), negation, names=names, table=table)
    rank = int(sec.get("rank", "0"))
    moduli = tuple(int(m) for m in sec.get("moduli", "").split(",") if m.strip())
    carrier = Carrier("grid", rank, moduli, negation)
    members = sec.get("members")
    if members:
        clauses = parse_clauses(members, carrier)
        carrier = Carrier("grid", rank, moduli, negation, member_clauses=clauses)
    return carrier


def _name_index(entry: str, names: tuple[str, ...]) -> int:
    if entry not in names:
        raise SpecError(f"addition table references unknown element {entry!r}")
    return names.index(entry)


def _parse_bool(text: str) -> bool:
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise SpecError(f"expected true or false, got {text!r}")


def _parse_order_section(sec: dict[str, str], carrier: Carrier) -> OrderSpec:
    styles = [k for k in ("pairs", "positive") if k in sec]
    if len(styles) != 1:
        raise SpecError("order section needs exactly one of pairs = ... / positive = ...")
    return parse_order(styles[0], sec[styles[0]], carrier)


def _parse_window(sec: dict[str, str], carrier: Carrier) -> Window:
    bounds = []
    for chunk in sec.get("bounds", "").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("[") and chunk.endswith("]")):
            raise SpecError(f"bound {chunk!r} must look like [lo,hi]")
        lo, sep, hi = chunk[1:-1].partition(",")
        if not sep:
            raise SpecError(f"bound {chunk!r} needs two endpoints")
        bounds.append((parse_rational(lo), parse_rational(hi)))
    q = int(sec.get("q", "1"))
    scale = int(sec.get("search_scale", "3"))
    elements: tuple[Element, ...] = ()
    if "elements" in sec:
        elements = tuple(parse_element(e, carrier)
                         for e in sec["elements"].split(",") if e.strip())
    return Window(tuple(bounds), q, scale, elements)


def build_structure(doc: SpecDocument, name: str | None = None) -> TwoOrderStructure:
    try:
        carrier = _parse_carrier(doc.section("carrier"))
        initial = _parse_order_section(doc.section("order.initial"), carrier)
        specific = _parse_order_section(doc.section("order.specific"), carrier)
        window = _parse_window(doc.section("window"), carrier)
    except (CarrierError, ClauseError, OrderError, WindowError) as exc:
        raise SpecError(str(exc)) from exc
    return _build(name or doc.name or "spec", carrier, initial, specific, window)


def load_structure(path: str) -> TwoOrderStructure:
    with open(path, encoding="utf-8") as fh:
        return build_structure(parse_spec(fh.read()))


def serialize_spec(s: TwoOrderStructure) -> str:
    lines = ["[meta]", f"name = {s.name}", "", "[carrier]",
             f"kind = {s.carrier.kind}"]
    if s.carrier.kind == "finite":
        lines.append(f"elements = {','.join(s.carrier.names)}")
        rows = ";".join(
            ",".join(s.carrier.names[v] for v in row) for row in s.carrier.table)
        lines.append(f"add = {rows}")
    else:
        lines.append(f"rank = {s.carrier.rank}")
        if s.carrier.moduli:
            lines.append(f"moduli = {','.join(str(m) for m in s.carrier.moduli)}")
        if s.carrier.member_clauses:
            lines.append(f"members = {clauses_text(s.carrier.member_clauses, s.carrier)}")
    lines.append(f"negation = {'true' if s.carrier.has_negation else 'false'}")
    for title, order in (("order.initial", s.initial), ("order.specific", s.specific)):
        key, value = order_text(order, s.carrier)
        lines += ["", f"[{title}]", f"{key} = {value}"]
    w = s.default_window
    lines += ["", "[window]"]
    if w.bounds:
        body = ";".join(f"[{_fmt(lo)},{_fmt(hi)}]" for lo, hi in w.bounds)
        lines.append(f"bounds = {body}")
    lines.append(f"q = {w.q}")
    if w.search_scale != 3:
        lines.append(f"search_scale = {w.search_scale}")
    if w.elements:
        body = ",".join(render(e, s.carrier) for e in w.elements)
        lines.append(f"elements = {body}")
    return "\n".join(lines) + "\n"


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
