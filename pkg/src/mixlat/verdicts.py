"""Three-valued verdicts.

Every checker answers Holds, Fails, or Unknown. Fails always carries a
witness tuple that re-evaluates to a violation; Holds and Unknown carry the
window scope they are relative to, since bounded enumeration can certify a
universal claim only inside its window.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .elements import Carrier, Element, render


class Outcome(enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: tuple[Element, ...] | None = None
    scope: str | None = None
    reason: str | None = None

    def __post_init__(self) -> None:
        if self.outcome is Outcome.FAILS and not self.witness:
            raise ValueError("a failing verdict must carry a witness")

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def fails(self) -> bool:
        return self.outcome is Outcome.FAILS


def holds(scope: str | None = None, reason: str | None = None) -> Verdict:
    return Verdict(Outcome.HOLDS, scope=scope, reason=reason)


def fails(witness: tuple[Element, ...], reason: str | None = None) -> Verdict:
    return Verdict(Outcome.FAILS, witness=witness, reason=reason)


def unknown(scope: str | None = None, reason: str | None = None,
            witness: tuple[Element, ...] | None = None) -> Verdict:
    """Unknown may carry a candidate witness (e.g. a bounded violation that a
    bounded check cannot promote to Fails)."""
    return Verdict(Outcome.UNKNOWN, witness=witness, scope=scope, reason=reason)


def witness_text(witness: tuple[Element, ...], carrier: Carrier | None = None) -> str:
    if len(witness) == 1:
        return render(witness[0], carrier)
    return "(" + ",".join(render(w, carrier) for w in witness) + ")"


def verdict_line(label: str, v: Verdict, carrier: Carrier | None = None) -> str:
    """One report line: `LABEL: OUTCOME [witness=...] [window=...]`."""
    parts = [f"{label}: {v.outcome.value}"]
    if v.witness is not None:
        parts.append(f"witness={witness_text(v.witness, carrier)}")
    if v.scope and v.outcome is not Outcome.FAILS:
        parts.append(f"window={v.scope}")
    return " ".join(parts)


def exit_code(verdicts: list[Verdict]) -> int:
    """0 all hold, 1 any fails, 2 some unknown and none fail."""
    if any(v.outcome is Outcome.FAILS for v in verdicts):
        return 1
    if any(v.outcome is Outcome.UNKNOWN for v in verdicts):
        return 2
    return 0
