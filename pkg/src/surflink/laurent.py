"""Exact integer Laurent polynomials.

Brackets are stored in the variable ``A``.  Jones-like polynomials are stored
in ``q = A^2`` so that every exponent is an integer; the reported variable is
``t = A^4 = q^2``, hence a q-exponent ``k`` is the t-degree ``k/2``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class LaurentPolynomial:
    """Sparse ``exponent -> coefficient`` polynomial with integer coefficients.

    Values are immutable; zero coefficients are never stored, so equality and
    hashing are exact.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"exponent must be an int, got {e!r}")
            c = clean.get(e, 0) + int(c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coefficient})

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPolynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPolynomial({e * k: c ** (-k)})
        result = LaurentPolynomial.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by the monomial of degree ``k``."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def scale(self, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        """Multiply by ``coefficient * x**exponent``."""
        return LaurentPolynomial({e + exponent: c * coefficient for e, c in self._terms.items()})

    def invert_variable(self) -> "LaurentPolynomial":
        """Substitute ``x -> x^-1``."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def compress(self, k: int) -> "LaurentPolynomial":
        """Substitute ``x^k -> y``; every exponent must be divisible by ``k``."""
        out = {}
        for e, c in self._terms.items():
            if e % k:
                raise ValueError(f"exponent {e} is not divisible by {k}")
            out[e // k] = c
        return LaurentPolynomial(out)

    def expand(self, k: int) -> "LaurentPolynomial":
        """Substitute ``x -> y^k``."""
        return LaurentPolynomial({e * k: c for e, c in self._terms.items()})

    # -- inspection ------------------------------------------------------

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    @property
    def degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    @property
    def min_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    def __repr__(self):
        return f"LaurentPolynomial({self.render('x')})"

    def render(self, var: str = "A") -> str:
        """Human readable form, highest degree first."""
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mon = var if e == 1 else f"{var}^{e}"
                body = mon if mag == 1 else f"{mag}*{mon}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def render_t(self) -> str:
        """Canonical ``c*t^{k}`` rendering of a polynomial in ``q = t^(1/2)``."""
        if not self._terms:
            return "0"
        return " + ".join(
            f"{c}*t^{{{format_t_degree(Fraction(e, 2))}}}"
            for e, c in sorted(self._terms.items(), reverse=True)
        )

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentPolynomial":
        return cls((int(e), int(c)) for e, c in data)


def _coerce(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return LaurentPolynomial({0: x})
    return NotImplemented


def format_t_degree(k: Fraction) -> str:
    k = Fraction(k)
    if k.denominator == 1:
        return str(k.numerator)
    return f"{k.numerator}/{k.denominator}"


# -A^2 - A^-2 in the variable A
DELTA_A = LaurentPolynomial({2: -1, -2: -1})
# the same constant written in q = A^2
DELTA_Q = LaurentPolynomial({1: -1, -1: -1})


class PolynomialAccumulator:
    """Mutable, mergeable sum of monomials.

    Merging is associative and commutative, so partial sums from independent
    workers can be combined in any order.
    """

    def __init__(self):
        self._terms: dict[int, int] = {}

    def add_term(self, exponent: int, coefficient: int) -> None:
        self._terms[exponent] = self._terms.get(exponent, 0) + coefficient

    def add(self, poly: LaurentPolynomial) -> None:
        for e, c in poly:
            self.add_term(e, c)

    def merge(self, other: "PolynomialAccumulator") -> "PolynomialAccumulator":
        for e, c in other._terms.items():
            self.add_term(e, c)
        return self

    def freeze(self) -> LaurentPolynomial:
        return LaurentPolynomial(self._terms)


def extract_coefficients(p: LaurentPolynomial, m, n) -> tuple[int, int, int, int]:
    """Coefficients of ``p`` (a polynomial in ``q``) at t-degrees m, m-1, n+1, n.

    ``m`` and ``n`` are t-degrees (integers or halves); missing terms read as 0.
    """
    m, n = Fraction(m), Fraction(n)
    if m < n:
        raise ValueError(f"m ({m}) must not be below n ({n})")
    for k in (m, n):
        if (2 * k).denominator != 1:
            raise ValueError(f"t-degree {k} is not a multiple of 1/2")
    qm, qn = int(2 * m), int(2 * n)
    return p[qm], p[qm - 2], p[qn + 2], p[qn]
