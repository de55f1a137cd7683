"""Frozen reference values, stored as ``group-id,depth,quantity,value`` rows."""

from __future__ import annotations

import csv
from functools import lru_cache
from importlib import resources

FIELDS = ("group-id", "depth", "quantity", "value")


@lru_cache(maxsize=None)
def table() -> dict[tuple[str, int, str], str]:
    text = resources.files("spinalgroups.data").joinpath("golden.csv").read_text()
    out = {}
    for row in csv.DictReader(text.splitlines()):
        out[(row["group-id"], int(row["depth"]), row["quantity"])] = row["value"]
    return out


def lookup(group: str, depth: int, quantity: str) -> str | None:
    return table().get((group, depth, quantity))


def write(rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(FIELDS)
    for row in rows:
        writer.writerow(row)
