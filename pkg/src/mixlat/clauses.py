"""Positive-set clause language.

A positive set (or a carrier membership set) is a union of clauses; a clause
is a conjunction of atoms over the free coordinates x1..xn and torsion slots
t1..tk:

    lin:    a1*x1 + a2*x2 <op> c      with <op> one of >= > <= < =
    mod:    xi = r (mod m)            integer congruence on a free coordinate
    eq:     xi = c   or   ti = r      coordinate pin
    points: (0,0),(1,1)               finite list of whole elements

Clause text uses '|' between clauses and '&' between atoms. The keyword
`standard` denotes the componentwise cone: all free coordinates >= 0 and all
torsion residues 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .elements import Carrier, Element, parse_rational


class ClauseError(ValueError):
    pass


@dataclass(frozen=True)
class LinAtom:
    coeffs: tuple[Fraction, ...]
    op: str
    rhs: Fraction

    def holds(self, x: Element) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, x.coords)), Fraction(0))
        if self.op == ">=":
            return lhs >= self.rhs
        if self.op == ">":
            return lhs > self.rhs
        if self.op == "<=":
            return lhs <= self.rhs
        if self.op == "<":
            return lhs < self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class ModAtom:
    coord: int
    residue: int
    modulus: int

    def holds(self, x: Element) -> bool:
        v = x.coords[self.coord]
        return v.denominator == 1 and int(v) % self.modulus == self.residue


@dataclass(frozen=True)
class TorsionAtom:
    slot: int
    residue: int

    def holds(self, x: Element) -> bool:
        return x.torsion[self.slot] == self.residue


@dataclass(frozen=True)
class PointsAtom:
    points: tuple[Element, ...]

    def holds(self, x: Element) -> bool:
        return x in self.points


Atom = LinAtom | ModAtom | TorsionAtom | PointsAtom


@dataclass(frozen=True)
class Clause:
    atoms: tuple[Atom, ...]

    def holds(self, x: Element) -> bool:
        return all(a.holds(x) for a in self.atoms)


def member(clauses: tuple[Clause, ...], x: Element) -> bool:
    return any(c.holds(x) for c in clauses)


def standard_cone(carrier: Carrier) -> tuple[Clause, ...]:
    atoms: list[Atom] = []
    for i in range(carrier.rank):
        coeffs = tuple(Fraction(1 if j == i else 0) for j in range(carrier.rank))
        atoms.append(LinAtom(coeffs, ">=", Fraction(0)))
    for k in range(len(carrier.moduli)):
        atoms.append(TorsionAtom(k, 0))
    return (Clause(tuple(atoms)),)


# -- parsing ---------------------------------------------------------------

_OPS = (">=", "<=", "=", ">", "<")


def parse_clauses(text: str, carrier: Carrier) -> tuple[Clause, ...]:
    text = text.strip()
    if text == "standard":
        return standard_cone(carrier)
    clauses = []
    for part in text.split("|"):
        atoms = tuple(_parse_atom(a.strip(), carrier) for a in part.split("&"))
        clauses.append(Clause(atoms))
    if not clauses:
        raise ClauseError("empty clause set")
    return tuple(clauses)


def _parse_atom(text: str, carrier: Carrier) -> Atom:
    head, sep, body = text.partition(":")
    if not sep:
        raise ClauseError(f"atom {text!r} is missing its 'kind:' prefix")
    head, body = head.strip(), body.strip()
    if head == "lin":
        return _parse_lin(body, carrier)
    if head == "mod":
        return _parse_mod(body, carrier)
    if head == "eq":
        return _parse_eq(body, carrier)
    if head == "points":
        pts = tuple(_parse_point(p, carrier) for p in _split_points(body))
        return PointsAtom(pts)
    raise ClauseError(f"unknown atom kind {head!r}")


def _parse_lin(body: str, carrier: Carrier) -> LinAtom:
    for op in _OPS:
        if op in body:
            lhs, rhs = body.split(op, 1)
            coeffs = _parse_linear_expr(lhs, carrier.rank)
            return LinAtom(coeffs, op, parse_rational(rhs))
    raise ClauseError(f"no comparison operator in {body!r}")


def _parse_linear_expr(text: str, rank: int) -> tuple[Fraction, ...]:
    coeffs = [Fraction(0)] * rank
    text = text.replace("-", "+-").replace(" ", "")
    for term in text.split("+"):
        if not term:
            continue
        if "*" in term:
            c, var = term.split("*", 1)
            coef = parse_rational(c) if c not in ("", "-") else Fraction(-1 if c == "-" else 1)
        else:
            var = term.lstrip("-")
            coef = Fraction(-1) if term.startswith("-") else Fraction(1)
        if not var.startswith("x"):
            raise ClauseError(f"linear atoms use free coordinates x1..x{rank}, got {term!r}")
        idx = int(var[1:]) - 1
        if not 0 <= idx < rank:
            raise ClauseError(f"coordinate {var!r} out of range for rank {rank}")
        coeffs[idx] += coef
    return tuple(coeffs)


def _parse_mod(body: str, carrier: Carrier) -> ModAtom:
    # xi = r (mod m)
    lhs, sep, rest = body.partition("=")
    if not sep or "(mod" not in rest:
        raise ClauseError(f"mod atom must look like 'x1 = 1 (mod 2)', got {body!r}")
    var = lhs.strip()
    if not var.startswith("x"):
        raise ClauseError(f"mod atoms apply to free coordinates, got {var!r}")
    idx = int(var[1:]) - 1
    if not 0 <= idx < carrier.rank:
        raise ClauseError(f"coordinate {var!r} out of range")
    res_text, mod_text = rest.split("(mod", 1)
    modulus = int(mod_text.strip().rstrip(")"))
    if modulus < 1:
        raise ClauseError("modulus must be positive")
    residue = int(res_text.strip()) % modulus
    return ModAtom(idx, residue, modulus)


def _parse_eq(body: str, carrier: Carrier) -> Atom:
    lhs, sep, rhs = body.partition("=")
    if not sep:
        raise ClauseError(f"eq atom needs '=', got {body!r}")
    var, value = lhs.strip(), rhs.strip()
    if var.startswith("t"):
        slot = int(var[1:]) - 1
        if not 0 <= slot < len(carrier.moduli):
            raise ClauseError(f"torsion slot {var!r} out of range")
        return TorsionAtom(slot, int(value) % carrier.moduli[slot])
    if var.startswith("x"):
        idx = int(var[1:]) - 1
        if not 0 <= idx < carrier.rank:
            raise ClauseError(f"coordinate {var!r} out of range")
        coeffs = tuple(Fraction(1 if j == idx else 0) for j in range(carrier.rank))
        return LinAtom(coeffs, "=", parse_rational(value))
    raise ClauseError(f"eq atoms apply to x<i> or t<i>, got {var!r}")


def _split_points(body: str) -> list[str]:
    pts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            pts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        pts.append("".join(cur))
    return [p.strip() for p in pts if p.strip()]


def _parse_point(text: str, carrier: Carrier) -> Element:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ClauseError(f"point literal must be parenthesized, got {text!r}")
    values = tuple(parse_rational(p) for p in body[1:-1].split(",") if p.strip())
    return carrier.element_from_numbers(values)


# -- serialization ---------------------------------------------------------

def clauses_text(clauses: tuple[Clause, ...], carrier: Carrier) -> str:
    return " | ".join(_clause_text(c, carrier) for c in clauses)


def _clause_text(clause: Clause, carrier: Carrier) -> str:
    return " & ".join(_atom_text(a, carrier) for a in clause.atoms)


def _atom_text(atom: Atom, carrier: Carrier) -> str:
    if isinstance(atom, LinAtom):
        terms = []
        for i, c in enumerate(atom.coeffs):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"x{i + 1}" if not terms else f"+ x{i + 1}")
            elif c == -1:
                terms.append(f"-x{i + 1}" if not terms else f"- x{i + 1}")
            else:
                sign = "" if not terms else ("+ " if c > 0 else "- ")
                mag = c if not terms else abs(c)
                terms.append(f"{sign}{_q(mag)}*x{i + 1}")
        expr = " ".join(terms) if terms else "0*x1"
        return f"lin: {expr} {atom.op} {_q(atom.rhs)}"
    if isinstance(atom, ModAtom):
        return f"mod: x{atom.coord + 1} = {atom.residue} (mod {atom.modulus})"
    if isinstance(atom, TorsionAtom):
        return f"eq: t{atom.slot + 1} = {atom.residue}"
    pts = ",".join(_point_text(p) for p in atom.points)
    return f"points: {pts}"


def _point_text(p: Element) -> str:
    parts = [_q(c) for c in p.coords] + [str(t) for t in p.torsion]
    return "(" + ",".join(parts) + ")"


def _q(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
