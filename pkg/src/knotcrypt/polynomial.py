"""Sparse Laurent polynomials with integer coefficients in one variable."""

from __future__ import annotations

import re
from typing import Mapping

__all__ = ["LaurentPolynomial", "divide_exact", "laurent_arith"]


class LaurentPolynomial:
    """Immutable mapping exponent -> nonzero integer coefficient.

    >>> t = LaurentPolynomial.monomial(1)
    >>> str(t + 1)
    '1 + 1*t^1'
    """

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "t"):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                clean[int(e)] = int(c)
        self._terms = dict(sorted(clean.items()))
        self.var = var
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, var: str = "t"):
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "t"):
        return cls({0: c}, var)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int:
        return min(self._terms)

    def max_degree(self) -> int:
        return max(self._terms)

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.var != self.var and other._terms and self._terms:
                if not (other.is_constant() or self.is_constant()):
                    raise ValueError(f"variables differ: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self.var)
        return NotImplemented

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            ((e, c),) = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial is not a unit")
            return LaurentPolynomial({e * k: c ** abs(k)}, self.var)
        result = LaurentPolynomial.constant(1, self.var)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def shift(self, k: int):
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()}, self.var)

    def substitute_power(self, k: int, var: str | None = None):
        """Replace the variable ``x`` by ``x**k`` (``k`` may be negative)."""
        return LaurentPolynomial({e * k: c for e, c in self._terms.items()}, var or self.var)

    def evaluate(self, x):
        return sum(c * x**e for e, c in self._terms.items())

    def __repr__(self):
        return f"LaurentPolynomial({self._terms!r}, var={self.var!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            parts.append(str(c) if e == 0 else f"{c}*{self.var}^{e}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, var: str = "t"):
        """Inverse of ``str``: terms ``c`` or ``c*t^e`` joined by `` + ``."""
        text = text.strip()
        if text == "0":
            return cls({}, var)
        pat = re.compile(rf"(-?\d+)(?:\*{re.escape(var)}\^(-?\d+))?")
        terms: dict[int, int] = {}
        for part in text.split(" + "):
            m = pat.fullmatch(part.strip())
            if not m:
                raise ValueError(f"bad polynomial term {part!r}")
            e = int(m.group(2)) if m.group(2) is not None else 0
            terms[e] = terms.get(e, 0) + int(m.group(1))
        return cls(terms, var)


def divide_exact(lhs: LaurentPolynomial, rhs: LaurentPolynomial) -> LaurentPolynomial | None:
    """Quotient ``lhs / rhs`` in the Laurent ring Z[x, 1/x], or None if it does not exist."""
    if rhs.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if lhs.is_zero():
        return LaurentPolynomial({}, lhs.var)
    # long division on the ordinary polynomials obtained by clearing the lowest powers
    rem = {e - lhs.min_degree(): c for e, c in lhs._terms.items()}
    div = {e - rhs.min_degree(): c for e, c in rhs._terms.items()}
    ddeg = max(div)
    lead = div[ddeg]
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top < ddeg:
            return None
        q, r = divmod(rem[top], lead)
        if r:
            return None
        k = top - ddeg
        quot[k] = q
        for e, c in div.items():
            v = rem.get(e + k, 0) - q * c
            if v:
                rem[e + k] = v
            else:
                rem.pop(e + k, None)
    return LaurentPolynomial(quot, lhs.var).shift(lhs.min_degree() - rhs.min_degree())


def laurent_arith(lhs, rhs, kind: str):
    """Dispatch ``add | multiply | divide_exact | equal`` on two polynomials."""
    if kind == "add":
        return lhs + rhs
    if kind == "multiply":
        return lhs * rhs
    if kind == "divide_exact":
        return divide_exact(lhs, rhs)
    if kind == "equal":
        return lhs == rhs
    raise ValueError(f"unknown operation {kind!r}")
