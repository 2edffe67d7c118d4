"""Dowker-Thistlethwaite codes.

Walking a diagram from its basepoint labels the passages 1..2n.  Every
crossing of a planar diagram ends up with one odd and one even label, and
the code lists, for odd labels 1, 3, 5, ..., the even partner, negated when
the even-labelled passage is an under-crossing.
"""

from __future__ import annotations

import re

from .diagram import Diagram, passages, require_valid
from .errors import DTCodeError, NonRealizableLabelingError, SuffixMismatchError

__all__ = [
    "DTCode",
    "extract_dt",
    "dt_from_walk",
    "canonical_dt",
    "dt_connected_sum",
    "strip_suffix",
    "offset",
    "parse_dt",
    "format_dt",
]


class DTCode(tuple):
    """Immutable DT code; construction checks the even-label permutation."""

    def __new__(cls, entries=()):
        entries = tuple(int(e) for e in entries)
        n = len(entries)
        seen = set()
        for pos, e in enumerate(entries):
            m = abs(e)
            if m % 2 or not 2 <= m <= 2 * n:
                raise DTCodeError(f"{e} is not an even label in 2..{2 * n}", pos)
            if m in seen:
                raise DTCodeError(f"duplicate magnitude {m}", pos)
            seen.add(m)
        return super().__new__(cls, entries)

    @property
    def n(self) -> int:
        return len(self)

    def __repr__(self):
        return f"DTCode({tuple(self)!r})"

    def __str__(self):
        return format_dt(self)


def dt_from_walk(walk) -> DTCode:
    """DT code of a walk given as a sequence of ``(crossing, over)`` pairs."""
    labels: dict = {}
    over_at: dict = {}
    for i, (ci, over) in enumerate(walk, start=1):
        labels.setdefault(ci, []).append(i)
        over_at[i] = over
    n = len(walk) // 2
    code = [0] * n
    for ci, (x, y) in labels.items():
        if x % 2 == y % 2:
            raise NonRealizableLabelingError(
                f"non-realizable labeling: crossing {ci} gets labels {x} and {y}"
            )
        odd, even = (x, y) if x % 2 else (y, x)
        code[(odd - 1) // 2] = even if over_at[even] else -even
    return DTCode(code)


def extract_dt(d: Diagram) -> DTCode:
    """Presentation DT code of ``d`` read from its basepoint."""
    require_valid(d)
    return dt_from_walk([(p.crossing, p.over) for p in passages(d)])


def _dt_key(code):
    return tuple(abs(e) for e in code), tuple(e < 0 for e in code)


def canonical_dt(d: Diagram) -> DTCode:
    """Least code over every starting passage and both walking directions.

    Codes are compared on their magnitudes first, then on signs with
    positive before negative.
    """
    require_valid(d)
    best = None
    for direction in (1, -1):
        walk = [(p.crossing, p.over) for p in passages(d, direction)]
        for k in range(max(len(walk), 1)):
            code = dt_from_walk(walk[k:] + walk[:k])
            if best is None or _dt_key(code) < _dt_key(best):
                best = code
    return best


def offset(code, shift: int) -> tuple[int, ...]:
    """Increase every magnitude by ``shift``, keeping signs."""
    return tuple(e + shift if e > 0 else e - shift for e in code)


def dt_connected_sum(a, b) -> DTCode:
    a, b = DTCode(a), DTCode(b)
    return DTCode(a + offset(b, 2 * len(a)))


def strip_suffix(composite, known) -> DTCode:
    """Remove the trailing summand ``known`` from ``composite``.

    Inverse of :func:`dt_connected_sum` in its second argument.
    """
    composite, known = DTCode(composite), DTCode(known)
    head = len(composite) - len(known)
    if head < 0:
        raise SuffixMismatchError(
            f"suffix mismatch: known code has {len(known)} entries, composite only {len(composite)}"
        )
    if composite[head:] != offset(known, 2 * head):
        raise SuffixMismatchError("suffix mismatch")
    return DTCode(composite[:head])


_TOKEN = re.compile(r"-?[1-9]\d*")


def parse_dt(text: str) -> DTCode:
    """Parse signed integers separated by single spaces, e.g. ``"-6 8 -10 2 4"``."""
    if text == "":
        return DTCode()
    values = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            raise DTCodeError("expected a signed integer", pos)
        values.append(int(m.group()))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != " ":
            raise DTCodeError(f"unexpected character {text[pos]!r}", pos)
        pos += 1
    return DTCode(values)


def format_dt(code) -> str:
    return " ".join(str(e) for e in code)
