"""Exact scalars: finite fields and real quadratic fields.

Integers and ``fractions.Fraction`` are used as they are. The two classes here
interoperate with plain ints so that generic matrix code can write ``0`` and
``1`` for the zero and unit of any domain.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import isqrt

from .errors import ParseError


def exact_div(a, b):
    """a / b without ever falling back to floats."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def is_zero(x) -> bool:
    return x == 0


# --------------------------------------------------------------- finite fields


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    """Product of coefficient lists (lowest degree first) modulo a monic polynomial."""
    k = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for deg in range(len(out) - 1, k - 1, -1):
        c = out[deg]
        if c:
            for j in range(k + 1):
                out[deg - k + j] = (out[deg - k + j] - c * modulus[j]) % p
    return (out + [0] * k)[:k]


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Monic ``poly`` of degree k has no monic factor of degree 1..k//2."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            rem = list(poly)
            for deg in range(k, d - 1, -1):
                c = rem[deg]
                if c:
                    for j in range(d + 1):
                        rem[deg - d + j] = (rem[deg - d + j] - c * divisor[j]) % p
            if not any(rem[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def _irreducible(p: int, k: int) -> tuple[int, ...]:
    for tail in product(range(p), repeat=k):
        poly = list(reversed(tail)) + [1]
        if poly[0] and _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """GF(q), q = p^k <= 2^16, elements coded as integers 0..q-1.

    The code of an element is its coefficient vector in base p, constant term
    in the lowest digit, for the polynomial basis over the first irreducible
    monic polynomial in lexicographic order.
    """

    MAX_ORDER = 2 ** 16

    def __init__(self, q: int):
        if q > self.MAX_ORDER:
            raise ValueError(f"field order {q} above {self.MAX_ORDER}")
        self.q = q
        self.p, self.k = _prime_power(q)
        self.modulus = list(_irreducible(self.p, self.k)) if self.k > 1 else [0, 1]

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __call__(self, value) -> "GFElement":
        if isinstance(value, GFElement):
            return value
        return GFElement(self, int(value) % self.p if self.k == 1 else self._from_int(int(value)))

    def _from_int(self, n: int) -> int:
        return n % self.p

    def element(self, code: int) -> "GFElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} outside GF({self.q})")
        return GFElement(self, code)

    def elements(self) -> list["GFElement"]:
        return [GFElement(self, c) for c in range(self.q)]

    @property
    def zero(self) -> "GFElement":
        return GFElement(self, 0)

    @property
    def one(self) -> "GFElement":
        return GFElement(self, 1)

    def digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def code(self, digits: list[int]) -> int:
        return sum(d * self.p ** i for i, d in enumerate(digits))

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.code([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.code([(-x) % self.p for x in self.digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        return self.code(_poly_mulmod(self.digits(a), self.digits(b), self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        result, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


class GFElement:
    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, GFElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.field(other).code
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GFElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __neg__(self):
        return GFElement(self.field, self.field.neg(self.code))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.field, self.field.add(self.code, self.field.neg(o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GFElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def inverse(self) -> "GFElement":
        return GFElement(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * GFElement(self.field, self.field.inv(o))

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse() if isinstance(other, int) else NotImplemented

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        result = self.field.one
        for _ in range(abs(e)):
            result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return other.field == self.field and other.code == self.code
        if isinstance(other, int):
            return self.code == self.field(other).code
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __repr__(self):
        return f"GF{self.field.q}({self.code})"

    __str__ = __repr__


# ---------------------------------------------------------- quadratic numbers


def _squarefree_check(d: int) -> None:
    if d < 2 or isqrt(d) ** 2 == d:
        raise ValueError(f"sqrt({d}) must be irrational with d > 1")


class QuadraticNumber:
    """u + v*sqrt(d) with rational u, v and a fixed non-square d > 1."""

    __slots__ = ("u", "v", "d")

    def __init__(self, u=0, v=0, d: int = 2):
        _squarefree_check(d)
        self.u = Fraction(u)
        self.v = Fraction(v)
        self.d = d

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticNumber":
        return cls(0, 1, d)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.u, -self.v, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.u * o.u + self.d * self.v * o.v, self.u * o.v + self.v * o.u, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.u, -self.v, self.d)

    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadraticNumber(self.u / n, -self.v / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o * self.inverse()

    def sign(self) -> int:
        """Exact sign of u + v*sqrt(d)."""
        su = (self.u > 0) - (self.u < 0)
        sv = (self.v > 0) - (self.v < 0)
        if su == sv or sv == 0:
            return su
        if su == 0:
            return sv
        # opposite signs: compare u^2 with d v^2
        diff = self.u * self.u - self.d * self.v * self.v
        return su if diff > 0 else (sv if diff < 0 else 0)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v, self.d))

    def __float__(self):
        return float(self.u) + float(self.v) * self.d ** 0.5

    def __repr__(self):
        sign = "-" if self.v < 0 else "+"
        return f"{self.u}{sign}{abs(self.v)}√{self.d}"

    __str__ = __repr__


_QUAD = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*\*?\s*[√]\s*(\d+))?\s*$")
_PURE_SQRT = re.compile(r"^\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*√\s*(\d+)\s*$")


def parse_scalar(token):
    """Read an int, a ``"p/q"`` string or a ``"u+v√d"`` string exactly."""
    if isinstance(token, bool):
        raise ParseError(f"booleans are not scalars: {token!r}")
    if isinstance(token, int):
        return token
    if not isinstance(token, str):
        raise ParseError(f"unsupported scalar {token!r}")
    text = token.replace(" ", "")
    if "√" not in text:
        try:
            value = Fraction(text)
        except ValueError:
            raise ParseError(f"cannot read scalar {token!r}") from None
        return int(value) if value.denominator == 1 else value
    m = _PURE_SQRT.match(text)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        return QuadraticNumber(0, sign * Fraction(m.group(2) or 1), int(m.group(3)))
    m = _QUAD.match(text)
    if not m or m.group(2) is None:
        raise ParseError(f"cannot read scalar {token!r}")
    sign = -1 if m.group(2) == "-" else 1
    return QuadraticNumber(Fraction(m.group(1) or 0), sign * Fraction(m.group(3) or 1), int(m.group(4)))
