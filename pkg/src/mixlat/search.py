"""Counterexample search over small finite structures.

Enumerates commutative monoids on up to six elements as explicit addition
tables, equips each with pairs of submonoid-cone orders, classifies the
result, and emits every structure that separates an adjacent pair of
taxonomy classes: the weaker class holds while the stronger fails.

Determinism: tables come out of a fixed-order depth-first fill (identity
listed first), deduplicated by canonical form; cones are visited by
ascending membership mask; seeds are examined before any enumeration.
Budget counts classified candidates; exhausting it flags the result partial.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .classify import IMPLICATION_CHAINS, classify_structure
from .elements import Carrier, Element
from .orders import OrderSpec
from .specfile import serialize_spec
from .structures import TwoOrderStructure, build_structure
from .verdicts import Verdict
from .windows import Window

__all__ = ["SearchError", "SearchResult", "SearchWitness", "adjacent_targets",
           "monoid_tables", "search_small_structures"]

MAX_SIZE_LIMIT = 6


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchWitness:
    """One separating structure: weaker class holds, stronger fails."""

    name: str
    structure: TwoOrderStructure
    spec_text: str
    weaker: Verdict
    stronger: Verdict


@dataclass(frozen=True)
class SearchResult:
    target: tuple[str, str]
    max_size: int
    budget: int
    examined: int
    witnesses: tuple[SearchWitness, ...]
    partial: bool


def adjacent_targets() -> tuple[tuple[str, str], ...]:
    """The admissible (weaker, stronger) targets, one per implication-chain
    edge."""
    out = []
    for chain in IMPLICATION_CHAINS:
        for stronger, weaker in zip(chain, chain[1:]):
            out.append((weaker, stronger))
    return tuple(out)


# -- table enumeration -----------------------------------------------------


def _assoc_ok(t: list[list[int | None]], n: int) -> bool:
    # triples with the identity in any slot hold automatically
    for a in range(1, n):
        ta = t[a]
        for b in range(1, n):
            ab = ta[b]
            tb = t[b]
            for c in range(1, n):
                bc = tb[c]
                if ab is None or bc is None:
                    continue
                left = t[ab][c]
                right = ta[bc]
                if left is not None and right is not None and left != right:
                    return False
    return True


def _canonical(table: tuple[tuple[int, ...], ...], n: int):
    """Lexicographically least row-major flattening over the relabelings that
    keep the identity listed first."""
    best = None
    for perm in itertools.permutations(range(1, n)):
        sigma = (0,) + perm
        inv = [0] * n
        for i, v in enumerate(sigma):
            inv[v] = i
        flat = tuple(inv[table[sigma[i]][sigma[j]]]
                     for i in range(n) for j in range(n))
        if best is None or flat < best:
            best = flat
    return best


def monoid_tables(n: int):
    """Commutative monoid addition tables on n elements, identity at index
    0, one per isomorphism class (canonical-form dedup), in a fixed
    depth-first order.  Lazy: nothing past the consumed prefix is built."""
    if n == 1:
        yield ((0,),)
        return
    t: list[list[int | None]] = [[None] * n for _ in range(n)]
    for j in range(n):
        t[0][j] = t[j][0] = j
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    seen: set = set()

    def fill(k: int):
        if k == len(cells):
            table = tuple(tuple(row) for row in t)
            key = _canonical(table, n)
            if key not in seen:
                seen.add(key)
                yield table
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = t[j][i] = v
            if _assoc_ok(t, n):
                yield from fill(k + 1)
        t[i][j] = t[j][i] = None

    yield from fill(0)


# -- cone orders -----------------------------------------------------------


def _cone_masks(table: tuple[tuple[int, ...], ...], n: int) -> list[int]:
    """Bitmasks of the submonoids (identity included, addition-closed)."""
    out = []
    for mask in range(1, 1 << n):
        if not mask & 1:
            continue
        ok = True
        for i in range(n):
            if not mask >> i & 1:
                continue
            for j in range(i, n):
                if mask >> j & 1 and not mask >> table[i][j] & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(mask)
    return out


def _cone_rows(table: tuple[tuple[int, ...], ...], n: int,
               mask: int) -> tuple[int, ...] | None:
    """Row bitmasks of x <= y iff y = x + w for some cone member w, or None
    when that relation is not antisymmetric.  Reflexivity comes from the
    identity, transitivity from cone closure."""
    rows = []
    for x in range(n):
        row = 0
        for w in range(n):
            if mask >> w & 1:
                row |= 1 << table[x][w]
        rows.append(row)
    for x in range(n):
        for y in range(x + 1, n):
            if rows[x] >> y & 1 and rows[y] >> x & 1:
                return None
    return tuple(rows)


def _rows_to_pairs(rows: tuple[int, ...], n: int):
    pairs = []
    for x in range(n):
        for y in range(n):
            if x != y and rows[x] >> y & 1:
                pairs.append((Element((), (x,)), Element((), (y,))))
    return tuple(pairs)


def _table_structures(table: tuple[tuple[int, ...], ...], n: int,
                      group_only: bool):
    """The candidate structures of one table: every ordered pair of
    antisymmetric cone orders, ascending by the two masks."""
    zero = 0
    invertible = all(any(row[j] == zero for j in range(n)) for row in table)
    if group_only and not invertible:
        return
    names = tuple(f"e{i}" for i in range(n))
    carrier = Carrier("finite", 0, (), invertible, names=names, table=table)
    orders = []
    for mask in _cone_masks(table, n):
        rows = _cone_rows(table, n, mask)
        if rows is not None:
            orders.append(OrderSpec("pairs", pairs=_rows_to_pairs(rows, n)))
    window = Window()
    for initial in orders:
        for specific in orders:
            yield carrier, initial, specific, window


# -- the search ------------------------------------------------------------


def _rebuild_named(s: TwoOrderStructure, name: str) -> TwoOrderStructure:
    return build_structure(name, s.carrier, s.initial, s.specific,
                           s.default_window)


def search_small_structures(max_size: int, target: tuple[str, str],
                            budget: int,
                            seeds: tuple[TwoOrderStructure, ...] = ()
                            ) -> SearchResult:
    """Find structures separating `target` = (weaker, stronger), an adjacent
    implication-chain pair.  `seeds` are caller-supplied structures examined
    ahead of the enumeration and re-emitted under their own names when they
    separate the pair; enumerated witnesses get generated names.  Classifying
    a candidate costs one budget unit; a used-up budget ends the search with
    `partial` set."""
    target = tuple(target)
    if target not in adjacent_targets():
        raise SearchError(
            f"target {target!r} is not an adjacent implication-chain pair; "
            f"choose one of {', '.join(','.join(t) for t in adjacent_targets())}")
    if not 1 <= max_size <= MAX_SIZE_LIMIT:
        raise SearchError(f"max_size must be between 1 and {MAX_SIZE_LIMIT}")
    if budget < 1:
        raise SearchError("budget must be a positive count")
    weaker, stronger = target
    # group-chain targets can only be separated by group tables; skipping the
    # rest early keeps the budget for candidates that could match
    group_only = stronger in IMPLICATION_CHAINS[1]

    witnesses: list[SearchWitness] = []
    examined = 0
    partial = False
    stem = f"{weaker.lower()}-not-{stronger.lower()}"

    def examine(s: TwoOrderStructure, name: str | None) -> bool:
        """Classify one candidate; record it when it separates the target.
        Returns False when the budget is used up."""
        nonlocal examined
        if examined >= budget:
            return False
        examined += 1
        report = classify_structure(s)
        vw = report.verdicts[weaker]
        vs = report.verdicts[stronger]
        if vw.holds and vs.fails:
            final = s if name is None else _rebuild_named(s, name)
            witnesses.append(SearchWitness(
                final.name, final, serialize_spec(final), vw, vs))
        return True

    for seed in seeds:
        if not examine(seed, None):
            partial = True
            break
    if not partial:
        done = False
        for n in range(1, max_size + 1):
            for table in monoid_tables(n):
                for carrier, initial, specific, window in _table_structures(
                        table, n, group_only):
                    scratch = build_structure(
                        f"{stem}-candidate", carrier, initial, specific, window)
                    if not examine(scratch, f"{stem}-{len(witnesses) + 1:03d}"):
                        partial = True
                        done = True
                        break
                if done:
                    break
            if done:
                break
    return SearchResult(target, max_size, budget, examined,
                        tuple(witnesses), partial)
