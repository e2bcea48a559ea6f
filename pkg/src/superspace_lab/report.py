"""Verdict records and their text/JSON rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

MATCH = "match"
SIGN_FLIP = "sign-flip"
MISMATCH = "mismatch"
# the engine replays a heuristic step and reports where it disagrees; not a failure
DISCREPANCY = "discrepancy"
DEGENERATE = "degenerate"

STATUSES = (MATCH, SIGN_FLIP, MISMATCH, DISCREPANCY, DEGENERATE)


@dataclass(frozen=True)
class Verdict:
    """Outcome of replaying one identity.

    ``anchor`` names the construction the identity belongs to, ``claim`` is
    the statement as usually written, ``result`` what the engine computed and
    ``computation`` the engine call that reproduces it.
    """

    identity: str
    anchor: str
    claim: str
    result: str
    status: str
    computation: str = ""
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown verdict status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status != MISMATCH

    def to_text(self) -> str:
        lines = [
            f"[{self.status}] {self.identity} ({self.anchor})",
            f"    claim:  {self.claim}",
            f"    engine: {self.result}",
        ]
        if self.computation:
            lines.append(f"    replay: {self.computation}")
        if self.note:
            lines.append(f"    note:   {self.note}")
        return "\n".join(lines)


def all_passed(verdicts: Iterable[Verdict]) -> bool:
    return all(v.passed for v in verdicts)


@dataclass
class Section:
    """One command's output: free-form named values plus verdicts."""

    name: str
    values: dict[str, Any] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "values": {k: _jsonable(v) for k, v in self.values.items()},
            "verdicts": [asdict(v) for v in self.verdicts],
        }

    def to_text(self) -> str:
        out = [f"== {self.name} =="]
        for k, v in self.values.items():
            text = str(v)
            if "\n" in text:
                out.append(f"{k}:")
                out.extend("    " + line for line in text.splitlines())
            else:
                out.append(f"{k}: {text}")
        out.extend(v.to_text() for v in self.verdicts)
        return "\n".join(out)


def _jsonable(v: Any) -> Any:
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
