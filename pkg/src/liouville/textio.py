"""Text encodings shared by the JSON artifacts."""

from __future__ import annotations

import json
from fractions import Fraction


def fraction_to_text(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def dumps(obj) -> str:
    # fixed layout so identical inputs give byte-identical artifacts
    return json.dumps(obj, indent=1, sort_keys=False, separators=(",", ": ")) + "\n"
