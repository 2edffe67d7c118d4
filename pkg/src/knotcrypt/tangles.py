"""Four-ended tangles, their pi-rotations, and closing tangle pairs into knots.

A tangle keeps its crossings unoriented: four labels counterclockwise plus
the parity of the slots carrying the under-strand.  Orientation is put back
only when a presentation is closed, by walking the knot from the basepoint
in the outer tangle.  That walk is what repairs strand directions after the
inner tangle has been turned over.
"""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, replace
from typing import Hashable

from .diagram import Diagram, faces, from_passages, passages, require_valid
from .errors import KnotCryptError, MultiComponentError

__all__ = [
    "POSITIONS",
    "RotationKind",
    "Tangle",
    "TanglePresentation",
    "rotate_tangle",
    "close_presentation",
    "mutate",
    "split_diagram",
    "boundary_order",
]

POSITIONS = ("NW", "NE", "SE", "SW")


class RotationKind(enum.Enum):
    NONE = "I"
    FLIP_HORIZONTAL = "H"
    FLIP_VERTICAL = "V"
    HALF_TURN = "Z"

    @property
    def letter(self) -> str:
        return self.value

    @classmethod
    def from_letter(cls, letter: str) -> "RotationKind":
        return cls(letter)

    def then(self, other: "RotationKind") -> "RotationKind":
        """Rotation equal to applying ``self`` and then ``other``."""
        perm = tuple(_PERM[self][_PERM[other][k]] for k in range(4))
        return _BY_PERM[perm]


# new boundary slot k takes the content of old slot _PERM[r][k]
_PERM = {
    RotationKind.NONE: (0, 1, 2, 3),
    RotationKind.FLIP_VERTICAL: (1, 0, 3, 2),
    RotationKind.FLIP_HORIZONTAL: (3, 2, 1, 0),
    RotationKind.HALF_TURN: (2, 3, 0, 1),
}
_BY_PERM = {v: k for k, v in _PERM.items()}


@dataclass(frozen=True)
class Tangle:
    """Crossings ``((a, b, c, d), under_parity)`` and boundary labels at NW, NE, SE, SW."""

    crossings: tuple[tuple[tuple[Hashable, ...], int], ...]
    boundary: tuple[Hashable, Hashable, Hashable, Hashable]

    def __post_init__(self):
        if len(self.boundary) != 4:
            raise KnotCryptError("a tangle has exactly four boundary endpoints")
        counts = Counter(a for c, _ in self.crossings for a in c)
        counts.update(self.boundary)
        odd = sorted(str(a) for a, k in counts.items() if k != 2)
        if odd:
            raise KnotCryptError(f"tangle labels not used exactly twice: {', '.join(odd)}")

    @property
    def n(self) -> int:
        return len(self.crossings)

    def occurrences(self, label) -> list[tuple]:
        """Places where ``label`` ends: ``("x", crossing, slot)`` then ``("b", position)``."""
        out = [("x", ci, s) for ci, (c, _) in enumerate(self.crossings) for s, a in enumerate(c) if a == label]
        out += [("b", k) for k, a in enumerate(self.boundary) if a == label]
        return out


@dataclass(frozen=True)
class TanglePresentation:
    """Outer tangle S and inner tangle R glued along their boundaries.

    ``gluing[k]`` is the outer position meeting inner position ``k``.  The
    walk starts on outer label ``base[0]`` heading toward its
    ``base[1]``-th end as listed by :meth:`Tangle.occurrences`.
    """

    outer: Tangle
    inner: Tangle
    base: tuple[Hashable, int]
    gluing: tuple[int, int, int, int] = (0, 1, 2, 3)

    def __post_init__(self):
        if sorted(self.gluing) != [0, 1, 2, 3]:
            raise KnotCryptError("gluing must be a bijection of the four endpoints")


def rotate_tangle(t: Tangle, r: RotationKind) -> Tangle:
    """Turn the tangle by pi about one of the three axes.

    The in-plane half turn only moves the endpoints.  The two flips turn the
    tangle over, so they also mirror every crossing's cyclic order and swap
    over with under.
    """
    r = RotationKind(r)
    perm = _PERM[r]
    boundary = tuple(t.boundary[perm[k]] for k in range(4))
    if r in (RotationKind.NONE, RotationKind.HALF_TURN):
        return Tangle(t.crossings, boundary)
    flipped = tuple(((a, d, c, b), parity ^ 1) for (a, b, c, d), parity in t.crossings)
    return Tangle(flipped, boundary)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def _start_slot(p: TanglePresentation, n_outer: int):
    """Crossing slot (merged numbering) the walk enters first, or None if there is none."""
    inv = {g: k for k, g in enumerate(p.gluing)}
    label, end = p.base
    occ = p.outer.occurrences(label)
    if len(occ) != 2 or end not in (0, 1):
        raise KnotCryptError(f"basepoint {p.base!r} does not name an end of an outer label")
    side, tangle, place = "o", p.outer, occ[end]
    for _ in range(8):
        if place[0] == "x":
            return place[1] + (n_outer if side == "i" else 0), place[2]
        # crossed a boundary port: continue along the label on the other side
        pos = place[1]
        if side == "o":
            side, tangle, pos = "i", p.inner, inv[pos]
        else:
            side, tangle, pos = "o", p.outer, p.gluing[pos]
        label = tangle.boundary[pos]
        place = next(o for o in tangle.occurrences(label) if o != ("b", pos))
    return None


def close_presentation(p: TanglePresentation, name: str | None = None) -> Diagram:
    """Glue the two tangles and orient the result by walking from the basepoint."""
    uf = _UnionFind()
    for k in range(4):
        uf.union(("i", p.inner.boundary[k]), ("o", p.outer.boundary[p.gluing[k]]))
    merged = []
    parity = []
    for tag, t in (("o", p.outer), ("i", p.inner)):
        for c, par in t.crossings:
            merged.append(tuple(uf.find((tag, a)) for a in c))
            parity.append(par)
    ends = defaultdict(list)
    for ci, c in enumerate(merged):
        for s, a in enumerate(c):
            ends[a].append((ci, s))
    all_labels = {uf.find((tag, a)) for tag, t in (("o", p.outer), ("i", p.inner))
                  for a in list(t.boundary) + [x for c, _ in t.crossings for x in c]}
    free_loops = [a for a in all_labels if a not in ends]
    if not merged:
        if len(free_loops) != 1:
            raise MultiComponentError(f"multi-component closure: {len(free_loops)} circles")
        return Diagram((), 1, 1, name)
    if free_loops:
        raise MultiComponentError("multi-component closure: a closed strand has no crossings")
    start = _start_slot(p, p.outer.n)
    walk = []
    seen = set()
    ci, s = start
    while (ci, s) not in seen:
        seen.add((ci, s))
        out = (s + 2) % 4
        walk.append((ci, s, out))
        a, b = ends[merged[ci][out]]
        ci, s = b if a == (ci, out) else a
    if len(walk) != 2 * len(merged) or (ci, s) != start:
        raise MultiComponentError(
            f"multi-component closure: walk covers {len(walk)} of {2 * len(merged)} passages"
        )
    order = {}
    for ci, _, _ in walk:
        order.setdefault(ci, len(order))
    seq = [(order[ci], s, o) for ci, s, o in walk]
    return from_passages(seq, {order[ci]: parity[ci] for ci in order}, name=name)


def mutate(p: TanglePresentation, r: RotationKind, name: str | None = None) -> Diagram:
    """Replace the inner tangle by its rotation and close up."""
    if p.inner.n < 1:
        raise KnotCryptError("the mutation tangle must contain at least one crossing")
    return close_presentation(replace(p, inner=rotate_tangle(p.inner, r)), name=name)


# ---------------------------------------------------------------------------
# presentations cut from a diagram


def boundary_order(d: Diagram, inner: set[int]) -> list[int] | None:
    """Cut arcs around ``inner`` in counterclockwise order, or None.

    Returns None unless exactly four arcs join ``inner`` to the rest and a
    simple closed curve through four distinct faces separates them.
    """
    require_valid(d)
    ends = defaultdict(list)
    for ci, c in enumerate(d.crossings):
        for s, a in enumerate(c):
            ends[a].append((ci, s))
    cut = [a for a, e in ends.items() if len({ci in inner for ci, _ in e}) == 2]
    if len(cut) != 4:
        return None
    left, right = {}, {}
    for fi, face in enumerate(faces(d)):
        for a, fwd in face:
            (left if fwd else right)[a] = fi
    head = {d.crossings[p.crossing][p.in_slot]: p.crossing for p in passages(d, 1)}
    lin, rin = {}, {}
    for a in cut:
        if head[a] in inner:
            lin[a], rin[a] = left[a], right[a]
        else:
            lin[a], rin[a] = right[a], left[a]
    if len(set(lin.values())) != 4:
        return None
    by_left = {f: a for a, f in lin.items()}
    order = [min(cut)]
    while len(order) < 4:
        nxt = by_left.get(rin[order[-1]])
        if nxt is None or nxt in order:
            return None
        order.append(nxt)
    if by_left.get(rin[order[-1]]) != order[0]:
        return None
    return order


def split_diagram(d: Diagram, inner_ids, boundary) -> TanglePresentation:
    """Cut ``d`` into outer and inner tangles.

    ``boundary`` lists the four cut arcs at NW, NE, SE, SW.  The basepoint
    is placed at the first passage of ``d``'s walk through an outer
    crossing, so closing the presentation reproduces ``d``'s walk whenever
    that passage is the first one.
    """
    require_valid(d)
    inner = set(inner_ids)
    boundary = tuple(boundary)
    if not inner or not inner < set(range(d.n)):
        raise KnotCryptError("inner crossings must be a non-empty proper subset")
    side = {}
    for ci, c in enumerate(d.crossings):
        for a in c:
            side.setdefault(a, set()).add(ci in inner)
    cut = {a for a, s in side.items() if len(s) == 2}
    if cut != set(boundary) or len(boundary) != 4:
        raise KnotCryptError(f"boundary arcs {boundary} do not match the cut arcs {sorted(cut)}")
    outer_t = Tangle(
        tuple((c, 0) for ci, c in enumerate(d.crossings) if ci not in inner), boundary
    )
    inner_t = Tangle(tuple((c, 0) for ci, c in enumerate(d.crossings) if ci in inner), boundary)
    outer_index = {ci: k for k, ci in enumerate(i for i in range(d.n) if i not in inner)}
    for p in passages(d, 1):
        if p.crossing not in inner:
            label = d.crossings[p.crossing][p.in_slot]
            occ = outer_t.occurrences(label)
            end = occ.index(("x", outer_index[p.crossing], p.in_slot))
            return TanglePresentation(outer_t, inner_t, (label, end))
    raise KnotCryptError("no outer crossing to carry the basepoint")
