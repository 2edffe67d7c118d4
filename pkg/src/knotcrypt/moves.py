"""Reidemeister moves on PD diagrams.

Moves edit the walk (the cyclic passage sequence) and rebuild the diagram.
Existing crossings keep their numbers; inserted crossings are appended, so
an R1-insert creates crossing ``n`` and an R2-insert creates ``n`` and
``n + 1``.
"""

from __future__ import annotations

import enum
import random
from collections import defaultdict
from dataclasses import dataclass

from .diagram import Diagram, faces, from_passages, passages, require_valid
from .errors import MoveError

__all__ = [
    "MoveKind",
    "MoveSpec",
    "apply_reidemeister",
    "applicable_moves",
    "random_move",
    "inverse_move",
]


class MoveKind(enum.Enum):
    R1_INSERT = "R1-insert"
    R1_DELETE = "R1-delete"
    R2_INSERT = "R2-insert"
    R2_DELETE = "R2-delete"
    R3_SLIDE = "R3-slide"


@dataclass(frozen=True)
class MoveSpec:
    """Where and how to apply a move.

    ``location`` is ``(arc,)`` for R1-insert, ``(crossing,)`` for R1-delete,
    ``(arc_u, arc_v, face)`` for R2-insert, ``(crossing, crossing)`` for
    R2-delete and ``(face,)`` for R3-slide, where ``face`` indexes
    :func:`knotcrypt.diagram.faces`.

    ``sign`` and ``first_under`` pick one of the four kinks for R1-insert;
    ``u_over`` says whether arc_u passes over arc_v in an R2-insert.
    """

    kind: MoveKind
    location: tuple[int, ...]
    sign: int = 1
    first_under: bool = True
    u_over: bool = True


# slots (in, out) of the two kink passages, keyed by (first_under, sign)
_KINKS = {
    (True, 1): ((0, 2), (3, 1)),
    (True, -1): ((0, 2), (1, 3)),
    (False, 1): ((3, 1), (0, 2)),
    (False, -1): ((1, 3), (0, 2)),
}


def _rebuild(d: Diagram, seq, under_parity=None) -> Diagram:
    out = from_passages(seq, under_parity)
    return Diagram(out.crossings, out.base_arc, d.base_dir if out.crossings else 1, d.name)


def _entering(walk, d: Diagram, arc: int) -> int:
    for i, p in enumerate(walk):
        if d.crossings[p.crossing][p.in_slot] == arc:
            return i
    raise MoveError(f"arc {arc} is not an arc of the diagram")


def _r1_insert(d, walk, m):
    (arc,) = m.location
    if m.sign not in (1, -1):
        raise MoveError("R1-insert sign must be +1 or -1")
    first, second = _KINKS[(bool(m.first_under), m.sign)]
    new = d.n
    kink = [(new, *first), (new, *second)]
    if not walk:
        if arc != d.base_arc:
            raise MoveError(f"arc {arc} is not an arc of the diagram")
        return _rebuild(d, kink)
    i = _entering(walk, d, arc)
    seq = [tuple(p) for p in walk]
    if i == 0:
        seq = seq + kink
    else:
        seq = seq[:i] + kink + seq[i:]
    return _rebuild(d, seq)


def _kink_slots(c):
    for s in range(4):
        if c[s] == c[(s + 1) % 4]:
            return s
    return None


def _r1_delete(d, walk, m):
    (ci,) = m.location
    if not 0 <= ci < d.n:
        raise MoveError(f"crossing {ci} does not exist")
    if _kink_slots(d.crossings[ci]) is None:
        raise MoveError(f"R1-delete: crossing {ci} has no monogon loop at adjacent slots")
    return _rebuild(d, [tuple(p) for p in walk if p.crossing != ci])


def _face_edge(face, arc):
    hits = [fwd for a, fwd in face if a == arc]
    if len(hits) != 1:
        raise MoveError(f"arc {arc} must occur exactly once on the face, found {len(hits)}")
    return hits[0]


def _r2_insert(d, walk, m):
    u, v, fi = m.location
    if not walk:
        raise MoveError("R2-insert needs at least one crossing")
    if u == v:
        raise MoveError("R2-insert needs two distinct arcs")
    fs = faces(d)
    if not 0 <= fi < len(fs):
        raise MoveError(f"face {fi} does not exist")
    su = _face_edge(fs[fi], u)
    sv = _face_edge(fs[fi], v)
    c1, c2 = d.n, d.n + 1
    if sv:
        u_pass = [(c1, 3, 1), (c2, 1, 3)]
    else:
        u_pass = [(c1, 1, 3), (c2, 3, 1)]
    if su != sv:
        v_pass = [(c1, 0, 2), (c2, 0, 2)]
    else:
        v_pass = [(c2, 0, 2), (c1, 0, 2)]
    iu, iv = _entering(walk, d, u), _entering(walk, d, v)
    seq = [tuple(p) for p in walk]
    # insert at the later position first so the earlier index stays valid
    for idx, ins in sorted(((iu, u_pass), (iv, v_pass)), reverse=True):
        if idx == 0:
            seq = seq + ins
        else:
            seq = seq[:idx] + ins + seq[idx:]
    parity = None if m.u_over else {c1: 1, c2: 1}
    return _rebuild(d, seq, parity)


def _arc_ends(d):
    ends = defaultdict(list)
    for ci, c in enumerate(d.crossings):
        for s, a in enumerate(c):
            ends[a].append((ci, s))
    return ends


def _bigon(d, c1, c2):
    """Return True when crossings c1, c2 bound a bigon face with coherent over/under."""
    ends = _arc_ends(d)
    for face in faces(d):
        if len(face) != 2:
            continue
        (e, _), (f, _) = face
        if e == f:
            continue
        ce = ends[e]
        cf = ends[f]
        if {x for x, _ in ce} != {c1, c2} or {x for x, _ in cf} != {c1, c2}:
            continue
        over_e = {s % 2 for _, s in ce}
        over_f = {s % 2 for _, s in cf}
        if len(over_e) == 1 and len(over_f) == 1 and over_e != over_f:
            return True
    return False


def _r2_delete(d, walk, m):
    c1, c2 = m.location
    if c1 == c2 or not (0 <= c1 < d.n and 0 <= c2 < d.n):
        raise MoveError(f"R2-delete needs two distinct existing crossings, got {c1}, {c2}")
    if not _bigon(d, c1, c2):
        raise MoveError(
            f"R2-delete: crossings {c1} and {c2} do not bound a bigon with one strand over both"
        )
    return _rebuild(d, [tuple(p) for p in walk if p.crossing not in (c1, c2)])


def _triangle(d, face):
    """Check the R3 pattern on a face; return its three arcs or None."""
    if len(face) != 3:
        return None
    arcs = [a for a, _ in face]
    if len(set(arcs)) != 3:
        return None
    ends = _arc_ends(d)
    crossings = set()
    patterns = []
    for a in arcs:
        (x, sx), (y, sy) = ends[a]
        if x == y:
            return None
        crossings.update((x, y))
        patterns.append(tuple(sorted((sx % 2, sy % 2))))
    if len(crossings) != 3:
        return None
    if sorted(patterns) != [(0, 0), (0, 1), (1, 1)]:
        return None
    return arcs


def _r3_slide(d, walk, m):
    (fi,) = m.location
    fs = faces(d)
    if not 0 <= fi < len(fs):
        raise MoveError(f"face {fi} does not exist")
    arcs = _triangle(d, fs[fi])
    if arcs is None:
        raise MoveError(
            f"R3-slide: face {fi} is not a triangle with one strand over, one under "
            "and one in the middle"
        )
    # each crossing keeps its local picture; every strand meets its two
    # triangle crossings in the opposite order
    seq = [tuple(p) for p in walk]
    for a in arcs:
        k = _entering(walk, d, a)
        seq[k - 1], seq[k] = seq[k], seq[k - 1]
    return _rebuild(d, seq)


_APPLY = {
    MoveKind.R1_INSERT: _r1_insert,
    MoveKind.R1_DELETE: _r1_delete,
    MoveKind.R2_INSERT: _r2_insert,
    MoveKind.R2_DELETE: _r2_delete,
    MoveKind.R3_SLIDE: _r3_slide,
}


def apply_reidemeister(d: Diagram, m: MoveSpec) -> Diagram:
    require_valid(d)
    kind = MoveKind(m.kind)
    walk = passages(d, 1)
    return _APPLY[kind](d, walk, m)


def applicable_moves(d: Diagram, max_crossings: int | None = None) -> dict[MoveKind, list[MoveSpec]]:
    """Every move that applies to ``d``, grouped by kind.

    Insertions that would push the crossing count above ``max_crossings``
    are left out.
    """
    require_valid(d)
    moves: dict[MoveKind, list[MoveSpec]] = {k: [] for k in MoveKind}
    room = max_crossings is None or d.n + 1 <= max_crossings
    if room:
        for arc in sorted(d.arcs):
            for sign in (1, -1):
                for first_under in (True, False):
                    moves[MoveKind.R1_INSERT].append(
                        MoveSpec(MoveKind.R1_INSERT, (arc,), sign, first_under)
                    )
    for ci, c in enumerate(d.crossings):
        if _kink_slots(c) is not None:
            moves[MoveKind.R1_DELETE].append(MoveSpec(MoveKind.R1_DELETE, (ci,)))
    if d.n == 0:
        return moves
    fs = faces(d)
    if max_crossings is None or d.n + 2 <= max_crossings:
        for fi, face in enumerate(fs):
            counts = defaultdict(int)
            for a, _ in face:
                counts[a] += 1
            single = [a for a, _ in face if counts[a] == 1]
            for u in single:
                for v in single:
                    if u != v:
                        for u_over in (True, False):
                            moves[MoveKind.R2_INSERT].append(
                                MoveSpec(MoveKind.R2_INSERT, (u, v, fi), u_over=u_over)
                            )
    for c1 in range(d.n):
        for c2 in range(c1 + 1, d.n):
            if _bigon(d, c1, c2):
                moves[MoveKind.R2_DELETE].append(MoveSpec(MoveKind.R2_DELETE, (c1, c2)))
    for fi, face in enumerate(fs):
        if _triangle(d, face) is not None:
            moves[MoveKind.R3_SLIDE].append(MoveSpec(MoveKind.R3_SLIDE, (fi,)))
    return moves


def random_move(d: Diagram, rng: random.Random, max_crossings: int | None = None) -> MoveSpec:
    """Pick a kind uniformly among those that apply, then an instance of it."""
    moves = applicable_moves(d, max_crossings)
    kinds = [k for k in MoveKind if moves[k]]
    if not kinds:
        raise MoveError("no Reidemeister move applies")
    kind = rng.choice(kinds)
    return rng.choice(moves[kind])


def inverse_move(before: Diagram, m: MoveSpec, after: Diagram) -> MoveSpec:
    """The move undoing ``m``; defined for insertions and R3 slides."""
    kind = MoveKind(m.kind)
    if kind is MoveKind.R1_INSERT:
        return MoveSpec(MoveKind.R1_DELETE, (before.n,))
    if kind is MoveKind.R2_INSERT:
        return MoveSpec(MoveKind.R2_DELETE, (before.n, before.n + 1))
    if kind is MoveKind.R3_SLIDE:
        fs = faces(before)
        old = {ci for a in _triangle(before, fs[m.location[0]]) for ci, _ in _arc_ends(before)[a]}
        ends = _arc_ends(after)
        for fi, face in enumerate(faces(after)):
            arcs = _triangle(after, face)
            if arcs and {ci for a in arcs for ci, _ in ends[a]} == old:
                return MoveSpec(MoveKind.R3_SLIDE, (fi,))
        raise MoveError("no matching triangle after the slide")
    raise MoveError(f"no inverse recorded for {kind.value}")

