"""Writhe, Kauffman bracket and Jones polynomial.

The bracket is the usual state sum over all 2^n smoothings.  Rather than
enumerating states one by one, crossings are smoothed in walk order and
partial states that leave the same open-strand pattern are merged, so the
work grows with the number of distinct boundary patterns rather than with
2^n.  Loops are counted exactly, so the result is the same polynomial.
"""

from __future__ import annotations

from functools import lru_cache

from .diagram import Diagram, crossing_signs, require_valid
from .errors import KnotCryptError, SizeLimitError
from .polynomial import LaurentPolynomial, divide_exact

__all__ = ["MAX_CROSSINGS", "writhe", "kauffman_bracket", "jones", "delta", "state_sum_peak"]

MAX_CROSSINGS = 20

# delta = -A^2 - A^-2
_DELTA = {2: -1, -2: -1}


def delta() -> LaurentPolynomial:
    return LaurentPolynomial(_DELTA, "A")


def writhe(d: Diagram) -> int:
    return sum(crossing_signs(d))


def _mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _join(m: dict, p: int, q: int) -> int:
    """Connect arc ends p and q in the open-strand matching ``m``; return loops closed."""
    if p == q:
        return 1
    if m.get(p) == q:
        del m[p], m[q]
        return 1
    ends = []
    for x in (p, q):
        y = m.pop(x, None)
        if y is None:
            ends.append(x)
        else:
            del m[y]
            ends.append(y)
    u, v = ends
    m[u] = v
    m[v] = u
    return 0


def _smooth_order(d: Diagram) -> list[int]:
    order: dict[int, None] = {}
    for p in d._walk:
        order.setdefault(p.crossing, None)
    return list(order)


@lru_cache(maxsize=4096)
def _state_sum(d: Diagram) -> tuple[tuple, int]:
    """Unnormalised state sum and the largest number of partial states held at once."""
    delta_pows = [{0: 1}]
    states = {frozenset(): {0: 1}}
    peak = 1
    for ci in _smooth_order(d):
        a, b, c, e = d.crossings[ci]
        nxt: dict = {}
        for key, poly in states.items():
            # A-smoothing joins (a,b)(c,e), B-smoothing joins (a,e)(b,c)
            for weight, pairs in ((1, ((a, b), (c, e))), (-1, ((a, e), (b, c)))):
                m = dict(key)
                loops = sum(_join(m, p, q) for p, q in pairs)
                while len(delta_pows) <= loops:
                    delta_pows.append(_mul(delta_pows[-1], _DELTA))
                contrib = _mul({x + weight: y for x, y in poly.items()}, delta_pows[loops])
                k = frozenset(m.items())
                acc = nxt.setdefault(k, {})
                for x, y in contrib.items():
                    acc[x] = acc.get(x, 0) + y
        states = {k: {x: y for x, y in v.items() if y} for k, v in nxt.items()}
        peak = max(peak, len(states))
    (total,) = states.values()
    return tuple(sorted(total.items())), peak


def state_sum_peak(d: Diagram) -> int:
    """Most partial smoothing states alive at any step of the bracket computation.

    Enumerating states one at a time would visit 2^n of them; this is the
    size of the merged frontier actually kept.
    """
    require_valid(d)
    return _state_sum(d)[1] if d.n else 1


def kauffman_bracket(d: Diagram, max_crossings: int = MAX_CROSSINGS) -> LaurentPolynomial:
    """Kauffman bracket in the variable A, normalised so the unknot gives 1."""
    require_valid(d)
    if d.n > max_crossings:
        raise SizeLimitError(f"{d.n} crossings exceeds the limit of {max_crossings}")
    if d.n == 0:
        return LaurentPolynomial.constant(1, "A")
    # every state closes at least one loop, so one factor of delta divides out
    raw = LaurentPolynomial(dict(_state_sum(d)[0]), "A")
    q = divide_exact(raw, delta())
    if q is None:
        raise KnotCryptError("state sum not divisible by delta")
    return q


def jones(d: Diagram, max_crossings: int = MAX_CROSSINGS) -> LaurentPolynomial:
    """Jones polynomial in t, via (-A^3)^(-w) <D> and t = A^(-4)."""
    bracket = kauffman_bracket(d, max_crossings)
    w = writhe(d)
    f = bracket.shift(-3 * w) * (-1 if w % 2 else 1)
    out = {}
    for e, c in f.terms.items():
        if e % 4:
            raise KnotCryptError(f"non-integral exponent: A^{e} is not a power of t")
        out[-e // 4] = c
    return LaurentPolynomial(out, "t")
