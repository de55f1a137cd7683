"""Group configurations: JSON files, inline flags and the built-in test set."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import ConfigInvalid, InvalidTuple
from ..spinal import SpinalGroup
from ..zmodp import DefiningTuple


@dataclass(frozen=True)
class GroupConfig:
    p: int
    rows: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        try:
            DefiningTuple(self.p, self.rows)
        except (InvalidTuple, TypeError) as exc:
            raise ConfigInvalid(str(exc)) from exc

    def group(self) -> SpinalGroup:
        return SpinalGroup.from_rows(self.p, self.rows, self.label)

    @property
    def name(self) -> str:
        return self.label or f"p{self.p}-" + "_".join("".join(map(str, r)) for r in self.rows)

    def to_dict(self) -> dict:
        return {"p": self.p, "rows": [list(r) for r in self.rows], "label": self.label}


BUILTIN = {
    "gupta-sidki-3": GroupConfig(3, ((1, 2),), "gupta-sidki-3"),
    "exceptional-3": GroupConfig(3, ((1, 1),), "exceptional-3"),
    "p3-r2": GroupConfig(3, ((1, 0), (1, 1)), "p3-r2"),
    "gupta-sidki-5": GroupConfig(5, ((1, 4, 0, 0),), "gupta-sidki-5"),
    "p5-r2": GroupConfig(5, ((1, 1, 1, 2), (1, 2, 3, 4)), "p5-r2"),
}

# Groups exercised by default in the test suite and by ``verify --all``.
STANDARD_TEST_SET = tuple(BUILTIN)


def from_dict(data: dict) -> GroupConfig:
    try:
        p = int(data["p"])
        rows = tuple(tuple(int(x) for x in row) for row in data["rows"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigInvalid(f"config needs integer 'p' and list-of-lists 'rows': {exc}") from exc
    return GroupConfig(p, rows, str(data.get("label", "")))


def parse_row(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigInvalid(f"bad row {text!r}; expected comma-separated integers") from exc


def load(source: str | None = None, p: int | None = None, rows=None, label: str = "") -> GroupConfig:
    """Resolve a config from a built-in name, a JSON file, or inline values."""
    if source is None:
        if p is None or not rows:
            raise ConfigInvalid("give a config file, a built-in name, or --p with --row")
        return GroupConfig(p, tuple(rows), label)
    if source in BUILTIN:
        return BUILTIN[source]
    path = Path(source)
    if not path.is_file():
        raise ConfigInvalid(f"{source!r} is neither a file nor one of {sorted(BUILTIN)}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{source}: {exc}") from exc
    return from_dict(data)
