"""Planar diagrams of oriented knots.

A diagram is stored as a PD code: one 4-tuple of arc labels per crossing,
listed counterclockwise starting from the incoming under-strand, so that the
under-strand always runs from slot 0 to slot 2.  The direction of the
over-strand is not stored; it follows from walking the knot.

Most of the machinery here goes through *passages*: the knot traversed from
its basepoint is a cyclic sequence of ``2n`` passages ``(crossing, in_slot,
out_slot)``.  Moves, connected sums and tangle closures are all expressed as
edits of a passage sequence followed by :func:`from_passages`, which assigns
fresh arc labels ``1..2n`` in traversal order.
"""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, NamedTuple, Sequence

from .errors import InvalidDiagramError, PDSyntaxError

__all__ = [
    "Diagram",
    "Passage",
    "ValidationReport",
    "unknot",
    "validate_diagram",
    "require_valid",
    "passages",
    "from_passages",
    "normalize",
    "connected_sum",
    "mirror_diagram",
    "reverse_diagram",
    "is_alternating",
    "crossing_signs",
    "faces",
    "is_planar",
    "canonical_form",
    "is_isomorphic",
    "parse_pd",
    "format_pd",
]


class Passage(NamedTuple):
    crossing: int
    in_slot: int
    out_slot: int

    @property
    def over(self) -> bool:
        return self.in_slot % 2 == 1


@dataclass(frozen=True)
class Diagram:
    """An oriented knot diagram in PD form.

    ``base_arc`` and ``base_dir`` fix where (and in which direction) a walk
    along the knot starts; ``base_dir`` is +1 to follow the orientation and
    -1 to walk against it.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    base_arc: int = 1
    base_dir: int = 1
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "crossings", tuple(tuple(int(a) for a in c) for c in self.crossings)
        )

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> frozenset[int]:
        if not self.crossings:
            return frozenset([self.base_arc])
        return frozenset(a for c in self.crossings for a in c)

    @cached_property
    def _walk(self) -> list[Passage]:
        return _forward_walk(self)

    def __str__(self):
        return format_pd(self)


def unknot(name: str | None = "unknot") -> Diagram:
    return Diagram((), 1, 1, name)


# ---------------------------------------------------------------------------
# traversal and validation


def _occurrences(crossings) -> dict[int, list[tuple[int, int]]]:
    where = defaultdict(list)
    for ci, c in enumerate(crossings):
        for s, a in enumerate(c):
            where[a].append((ci, s))
    return where


def _other_end(where, label, ci, s):
    a, b = where[label]
    return b if a == (ci, s) else a


def _trace(crossings) -> tuple[list[Passage], list[str]]:
    """Walk the knot from crossing 0, entering on its under-strand.

    Returns the passages seen and any orientation problems met on the way.
    """
    where = _occurrences(crossings)
    problems = []
    walk = []
    seen = set()
    ci, s = 0, 0
    while (ci, s) not in seen:
        seen.add((ci, s))
        if s == 2:
            problems.append(f"crossing {ci}: under-strand runs from slot 2 to slot 0")
            break
        out = (s + 2) % 4
        walk.append(Passage(ci, s, out))
        ci, s = _other_end(where, crossings[ci][out], ci, out)
    return walk, problems


def _forward_walk(d: Diagram) -> list[Passage]:
    if not d.crossings:
        return []
    walk, problems = _trace(d.crossings)
    if problems or len(walk) != 2 * d.n:
        raise InvalidDiagramError(problems or ["diagram is not a single closed component"])
    for k, p in enumerate(walk):
        if d.crossings[p.crossing][p.in_slot] == d.base_arc:
            return walk[k:] + walk[:k]
    raise InvalidDiagramError([f"basepoint arc {d.base_arc} is not an arc of the diagram"])


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_diagram(d: Diagram) -> ValidationReport:
    """Check every structural invariant of ``d``; never raises."""
    v = []
    if d.base_dir not in (1, -1):
        v.append(f"basepoint direction {d.base_dir} is not +1 or -1")
    if not d.crossings:
        return ValidationReport(tuple(v))
    for ci, c in enumerate(d.crossings):
        if len(c) != 4:
            v.append(f"crossing {ci} has {len(c)} arc slots, expected 4")
    if v:
        return ValidationReport(tuple(v))
    counts = Counter(a for c in d.crossings for a in c)
    for a, k in sorted(counts.items()):
        if k != 2:
            v.append(f"arc {a} appears {k} times")
    if d.base_arc not in counts:
        v.append(f"basepoint arc {d.base_arc} is not an arc of the diagram")
    if v:
        return ValidationReport(tuple(v))
    walk, problems = _trace(d.crossings)
    v.extend(problems)
    if not problems:
        visits = Counter(p.crossing for p in walk)
        if len(walk) != 2 * d.n:
            v.append(
                f"diagram has more than one component "
                f"(walk covers {len(walk)} of {2 * d.n} passages)"
            )
        for ci in range(d.n):
            if visits[ci] != 2:
                v.append(f"traversal visits crossing {ci} {visits[ci]} times")
    return ValidationReport(tuple(v))


def require_valid(d: Diagram) -> Diagram:
    report = validate_diagram(d)
    if not report.ok:
        raise InvalidDiagramError(report.violations)
    return d


def passages(d: Diagram, direction: int | None = None) -> list[Passage]:
    """The passages met walking from the basepoint.

    With ``direction=-1`` (or ``d.base_dir == -1`` by default) the walk goes
    against the orientation and each passage is reported with its slots
    swapped, i.e. still as (entered slot, left slot).
    """
    walk = d._walk
    if direction is None:
        direction = d.base_dir
    if direction == 1 or not walk:
        return list(walk)
    # backwards: start at the passage the base arc leaves
    rev = [Passage(p.crossing, p.out_slot, p.in_slot) for p in reversed(walk)]
    return rev


def from_passages(
    seq: Sequence[tuple[Hashable, int, int]],
    under_parity: dict | None = None,
    name: str | None = None,
) -> Diagram:
    """Build a diagram from a cyclic passage sequence.

    Each crossing key must occur in exactly two passages whose slots together
    cover 0..3.  Crossings are numbered by sorted key.  Arc ``k`` is the arc
    entering passage ``k-1``; the result's basepoint is arc 1.

    ``under_parity`` maps a key to 1 when the slots given for that crossing
    put the under-strand on slots 1 and 3; the tuple is rotated so the
    incoming under-strand lands in slot 0.
    """
    m = len(seq)
    if m == 0:
        return unknot(name)
    slots: dict = defaultdict(lambda: [None] * 4)
    for i, (key, sin, sout) in enumerate(seq):
        lab = slots[key]
        if lab[sin] is not None or lab[sout] is not None:
            raise InvalidDiagramError([f"crossing {key!r} slot used twice"])
        lab[sin] = i + 1
        lab[sout] = (i + 1) % m + 1
    keys = sorted(slots)
    rank = {k: i for i, k in enumerate(keys)}
    parity = under_parity or {}
    incoming_under = {}
    for key, sin, _ in seq:
        if sin % 2 == parity.get(key, 0):
            incoming_under[key] = sin
    crossings = []
    for key in keys:
        lab = slots[key]
        if None in lab or key not in incoming_under:
            raise InvalidDiagramError([f"crossing {rank[key]} is not crossed twice"])
        r = incoming_under[key]
        crossings.append(tuple(lab[r:] + lab[:r]))
    return Diagram(tuple(crossings), 1, 1, name)


def normalize(d: Diagram) -> Diagram:
    """Relabel arcs 1..2n from the basepoint and number crossings by first visit."""
    require_valid(d)
    walk = passages(d, 1)
    order = {}
    for p in walk:
        order.setdefault(p.crossing, len(order))
    out = from_passages([(order[p.crossing], p.in_slot, p.out_slot) for p in walk])
    return Diagram(out.crossings, out.base_arc, d.base_dir, d.name)


# ---------------------------------------------------------------------------
# elementary operations


def reverse_diagram(d: Diagram) -> Diagram:
    """Reverse the orientation of the knot; the basepoint walk is unchanged."""
    require_valid(d)
    return Diagram(
        tuple((c[2], c[3], c[0], c[1]) for c in d.crossings),
        d.base_arc,
        -d.base_dir,
        d.name,
    )


def mirror_diagram(d: Diagram) -> Diagram:
    """Swap over and under at every crossing."""
    require_valid(d)
    over_in = {p.crossing: p.in_slot for p in d._walk if p.over}
    out = []
    for ci, (a, b, c, e) in enumerate(d.crossings):
        out.append((e, a, b, c) if over_in[ci] == 3 else (b, c, e, a))
    name = None if d.name is None else (d.name if d.n == 0 else f"mirror({d.name})")
    return Diagram(tuple(out), d.base_arc, d.base_dir, name)


def crossing_signs(d: Diagram) -> list[int]:
    """Right-hand rule sign of each crossing (+1 when the over-strand enters at slot 3)."""
    require_valid(d)
    over_in = {p.crossing: p.in_slot for p in d._walk if p.over}
    return [1 if over_in[ci] == 3 else -1 for ci in range(d.n)]


def connected_sum(k1: Diagram, k2: Diagram) -> Diagram:
    """Cut both diagrams at their basepoint arcs and splice them together.

    The walk of the result runs through all of ``k1`` and then all of
    ``k2``; its basepoint is the new arc entering ``k1``.  Crossings of
    ``k1`` keep their numbers, those of ``k2`` follow.
    """
    require_valid(k1)
    require_valid(k2)
    seq = []
    for tag, k in ((0, k1), (1, k2)):
        if k.base_dir == -1:
            k = reverse_diagram(k)
        seq.extend(((tag, p.crossing), p.in_slot, p.out_slot) for p in passages(k, 1))
    name = None
    if k1.name is not None and k2.name is not None:
        name = f"{k1.name}#{k2.name}"
    return from_passages(seq, name=name)


def is_alternating(d: Diagram) -> bool:
    require_valid(d)
    flags = [p.over for p in d._walk]
    return all(flags[i] != flags[i - 1] for i in range(len(flags)))


# ---------------------------------------------------------------------------
# faces and isomorphism


def faces(d: Diagram) -> list[tuple[tuple[int, bool], ...]]:
    """Faces of the diagram on the sphere.

    Each face is its boundary as a cyclic tuple of ``(arc, forward)`` edges
    traversed with the face on the left; ``forward`` tells whether the
    traversal agrees with the knot's orientation.  Faces are listed in a
    deterministic order.
    """
    require_valid(d)
    if not d.crossings:
        return [((d.base_arc, True),), ((d.base_arc, False),)]
    where = _occurrences(d.crossings)
    out_slots = {(p.crossing, p.out_slot) for p in d._walk}
    done = set()
    result = []
    for ci in range(d.n):
        for s in range(4):
            if (ci, s) in done:
                continue
            face = []
            dart = (ci, s)
            while dart not in done:
                done.add(dart)
                c, t = dart
                label = d.crossings[c][t]
                face.append((label, (c, t) in out_slots))
                c2, t2 = _other_end(where, label, c, t)
                dart = (c2, (t2 - 1) % 4)
            result.append(tuple(face))
    return result


def is_planar(d: Diagram) -> bool:
    """Euler characteristic check: a knot diagram on the sphere has n + 2 faces."""
    return len(faces(d)) == d.n + 2


def canonical_form(d: Diagram) -> tuple:
    """Labelling-independent form of an oriented diagram (basepoint ignored)."""
    require_valid(d)
    walk = d._walk
    best = None
    for k in range(max(len(walk), 1)):
        seq = walk[k:] + walk[:k]
        order = {}
        for p in seq:
            order.setdefault(p.crossing, len(order))
        form = from_passages([(order[p.crossing], p.in_slot, p.out_slot) for p in seq]).crossings
        if best is None or form < best:
            best = form
    return best


def is_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    return d1.n == d2.n and canonical_form(d1) == canonical_form(d2)


# ---------------------------------------------------------------------------
# text format

_X = re.compile(r"X\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
_BASE = re.compile(r"BASE\s+(-?\d+)\s+([+-])")


def format_pd(d: Diagram) -> str:
    lines = [f"X({a},{b},{c},{e})" for a, b, c, e in d.crossings]
    lines.append(f"BASE {d.base_arc} {'+' if d.base_dir == 1 else '-'}")
    return "\n".join(lines) + "\n"


def parse_pd(text: str, name: str | None = None) -> Diagram:
    """Parse the PD text format (``X(a,b,c,d)`` items then ``BASE arc +|-``).

    Items may be separated by newlines or spaces.  The ``BASE`` item is
    optional when there is at least one crossing and defaults to the arc
    in slot 0 of the first crossing.
    """
    crossings = []
    base = None
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _X.match(text, pos)
        if m:
            if base is not None:
                raise PDSyntaxError(f"crossing after BASE at offset {pos}")
            crossings.append(tuple(int(g) for g in m.groups()))
            pos = m.end()
            continue
        m = _BASE.match(text, pos)
        if m and base is None:
            base = (int(m.group(1)), 1 if m.group(2) == "+" else -1)
            pos = m.end()
            continue
        raise PDSyntaxError(f"unexpected text at offset {pos}: {text[pos:pos + 12]!r}")
    if base is None:
        if not crossings:
            raise PDSyntaxError("empty PD code needs a BASE line")
        base = (crossings[0][0], 1)
    return Diagram(tuple(crossings), base[0], base[1], name)

