"""Parsing of the ``a^-1*b1^-1*a*b1`` word syntax."""

from __future__ import annotations

import re

from ..errors import WordSyntaxError
from ..words import ReducedWord, reduce_word

_TOKEN = re.compile(r"^(a|b(\d+))(?:\^(-?\d+))?$")


def parse_word(text: str, p: int, r: int) -> ReducedWord:
    """Parse ``*``-separated generator powers; ``1`` or an empty string is the identity."""
    text = text.replace(" ", "")
    if text in ("", "1"):
        return ReducedWord.identity(p, r)
    raw = []
    for tok in text.split("*"):
        m = _TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"cannot parse {tok!r} in {text!r}")
        index = 0 if m.group(1) == "a" else int(m.group(2))
        if m.group(2) is not None and not 1 <= index <= r:
            raise WordSyntaxError(f"generator {m.group(1)} does not exist for r={r}")
        raw.append((index, int(m.group(3) or 1)))
    return reduce_word(p, r, raw)
