"""Exact scalars: Q-linear combinations of square roots of square-free integers.

A value is stored as a map ``{d: q}`` meaning ``sum(q * sqrt(d))``.  Keys are
square-free integers; ``d = 1`` is the rational part.  Negative keys carry the
imaginary unit, ``sqrt(-m) = i*sqrt(m)``, so the complexified Lie algebra
computations stay inside one canonical type.  Real values only ever have
positive keys.

The set ``{sqrt(d) : d square-free}`` is linearly independent over Q, so the
canonical form (no zero coefficients) makes equality structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Union

Rational = Union[int, Fraction]

__all__ = [
    "ExactScalar",
    "ZERO",
    "ONE",
    "I",
    "sqrt_rational",
    "parse_rational",
    "add",
    "mul",
    "total",
]


@lru_cache(maxsize=None)
def _square_split(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n = k*k*d`` and ``d`` square-free (sign kept in ``d``)."""
    if n == 0:
        raise ValueError("zero has no square-free part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    k, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            k *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= n
    return k, sign * d


@lru_cache(maxsize=None)
def _key_product(a: int, b: int) -> tuple[int, int]:
    """sqrt(a)*sqrt(b) = c*sqrt(d); returns (c, d)."""
    if a == 1:
        return 1, b
    if b == 1:
        return 1, a
    k, d = _square_split(a * b)
    if a < 0 and b < 0:
        k = -k
    return k, d


@lru_cache(maxsize=None)
def _generators(d: int) -> frozenset:
    """Multiplicative generators of a square-free key: -1 and its primes."""
    gens = set()
    if d < 0:
        gens.add(-1)
    n = abs(d)
    p = 2
    while p * p <= n:
        if n % p == 0:
            gens.add(p)
            n //= p
        p += 1
    if n > 1:
        gens.add(n)
    return frozenset(gens)


class ExactScalar:
    """Immutable exact element of Q(i, sqrt(2), sqrt(3), ...)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, value: Rational | "ExactScalar" = 0):
        if isinstance(value, ExactScalar):
            self.terms = value.terms
        else:
            q = Fraction(value)
            self.terms = {1: q} if q else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction]) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, terms: Mapping[int, Rational]) -> "ExactScalar":
        """Build from an arbitrary ``{radicand: coefficient}`` map, normalizing radicands."""
        out: Dict[int, Fraction] = {}
        for m, q in terms.items():
            q = Fraction(q)
            if not q:
                continue
            k, d = _square_split(m)
            out[d] = out.get(d, 0) + q * k
        return cls._raw({d: q for d, q in out.items() if q})

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 1 in self.terms)

    def is_real(self) -> bool:
        return all(d > 0 for d in self.terms)

    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.terms.get(1, Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            if isinstance(other, (int, Fraction)):
                other = ExactScalar(other)
            else:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for d, q in other.terms.items():
            s = out.get(d)
            if s is None:
                out[d] = q
            else:
                s += q
                if s:
                    out[d] = s
                else:
                    del out[d]
        return ExactScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw({d: -q for d, q in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        elif not isinstance(other, ExactScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return ExactScalar._raw({d: q * other for d, q in self.terms.items()})
        if not isinstance(other, ExactScalar):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        out: Dict[int, Fraction] = {}
        for da, qa in a.items():
            for db, qb in b.items():
                c, d = _key_product(da, db)
                v = qa * qb * c
                s = out.get(d)
                out[d] = v if s is None else s + v
        return ExactScalar._raw({d: q for d, q in out.items() if q})

    __rmul__ = __mul__

    def conjugate(self) -> "ExactScalar":
        """Complex conjugate (imaginary keys change sign)."""
        return ExactScalar._raw({d: (-q if d < 0 else q) for d, q in self.terms.items()})

    def real_part(self) -> "ExactScalar":
        return ExactScalar._raw({d: q for d, q in self.terms.items() if d > 0})

    def imag_part(self) -> "ExactScalar":
        """Real scalar y with self = x + i*y."""
        out = {}
        for d, q in self.terms.items():
            if d < 0:
                out[-d] = q
        return ExactScalar._raw(out)

    def _galois_flip(self, gen: int) -> "ExactScalar":
        return ExactScalar._raw(
            {d: (-q if gen in _generators(d) else q) for d, q in self.terms.items()}
        )

    def inverse(self) -> "ExactScalar":
        """Multiplicative inverse.

        Single-term values invert directly; general values are reduced by
        multiplying with Galois conjugates until a single term remains.
        """
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        if len(self.terms) == 1:
            ((d, q),) = self.terms.items()
            # 1/(q sqrt d) = sqrt d / (q d)
            return ExactScalar._raw({d: 1 / (q * d)})
        gens = set()
        for d in self.terms:
            gens |= _generators(d)
        gen = max(gens)
        conj = self._galois_flip(gen)
        return conj * (self * conj).inverse()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ExactScalar(other) * self.inverse()

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({1: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- rendering --------------------------------------------------------
    def approx(self) -> complex:
        """Floating-point value; display only."""
        re_, im_ = 0.0, 0.0
        for d, q in self.terms.items():
            if d > 0:
                re_ += float(q) * d ** 0.5
            else:
                im_ += float(q) * (-d) ** 0.5
        return complex(re_, im_)

    def render(self) -> str:
        """Exact text form, e.g. ``1/2*sqrt(3)+-1*i``."""
        if not self.terms:
            return "0"
        parts = []
        for d in sorted(self.terms, key=lambda k: (k < 0, abs(k))):
            q = self.terms[d]
            qs = str(q)
            if d == 1:
                parts.append(qs)
            elif d == -1:
                parts.append(f"{qs}*i")
            elif d > 0:
                parts.append(f"{qs}*sqrt({d})")
            else:
                parts.append(f"{qs}*i*sqrt({-d})")
        return "+".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ExactScalar({self.render()!r})"


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar._raw({-1: Fraction(1)})


def add(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return a + b


def mul(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return a * b


def sqrt_rational(q: Rational) -> ExactScalar:
    """Square root of a positive rational as ``(k/den) * sqrt(d)``."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"sqrt_rational needs a positive rational, got {q}")
    k, d = _square_split(q.numerator * q.denominator)
    return ExactScalar._raw({d: Fraction(k, q.denominator)})


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(m.group(1)), den)


def total(values: Iterable[ExactScalar]) -> ExactScalar:
    acc = ZERO
    for v in values:
        acc = acc + v
    return acc
