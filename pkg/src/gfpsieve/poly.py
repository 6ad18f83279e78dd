"""Polynomials over a prime field GF(p) and their base-p integer codes.

A polynomial a_n x^n + ... + a_1 x + a_0 is identified with the integer
a_n p^n + ... + a_1 p + a_0, its *code*.  Coefficients are stored
least-significant degree first, so coefficient k of a product is the sum of
a[i] * b[j] over i + j = k.

Codes are kept inside the unsigned 64-bit range; a field GF(p^q) is accepted
only if every degree-q code fits, i.e. p^(q+1) <= 2^64.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Sequence

__all__ = [
    "CODE_LIMIT",
    "NEG_INF",
    "Code",
    "CodeOverflowError",
    "CodeRangeError",
    "ConfigurationError",
    "ModulusMismatchError",
    "Polynomial",
    "PrimeModulus",
    "check_field",
    "decode",
    "encode",
    "is_prime",
    "modulus",
    "poly_divmod",
    "poly_mul",
    "scalar_mul",
]

CODE_LIMIT = 1 << 64

# Degree of the zero polynomial. Adding an int keeps it at -inf, which is
# exactly the degree rule for products.
NEG_INF = float("-inf")

Code = int


class ConfigurationError(ValueError):
    """Rejected field parameters (non-prime p, bad q, code range overflow)."""


class CodeOverflowError(OverflowError):
    pass


class CodeRangeError(ConfigurationError, CodeOverflowError):
    """Field whose degree-q codes do not fit in 64 bits."""


class ModulusMismatchError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    for f in range(5, isqrt(n) + 1, 6):
        if n % f == 0 or n % (f + 2) == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ConfigurationError(f"modulus must be an integer, got {self.p!r}")
        if not is_prime(self.p):
            raise ConfigurationError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        """Inverse of a nonzero residue by Fermat's little theorem."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return pow(a, self.p - 2, self.p)


@lru_cache(maxsize=None)
def modulus(p: int) -> PrimeModulus:
    return PrimeModulus(p)


def _as_modulus(m) -> PrimeModulus:
    return m if isinstance(m, PrimeModulus) else modulus(m)


def check_field(p: int, q: int) -> PrimeModulus:
    """Validate GF(p^q) parameters and return the prime modulus.

    Raises ConfigurationError if p is not prime, q < 1, or degree-q codes
    would not fit in 64 bits.
    """
    m = _as_modulus(p)
    if not isinstance(q, int) or q < 1:
        raise ConfigurationError(f"extension degree must be >= 1, got {q!r}")
    if m.p ** (q + 1) > CODE_LIMIT:
        raise CodeRangeError(
            f"GF({m.p}^{q}) codes need {m.p}^{q + 1} >= 2^64 values; "
            "outside the 64-bit code range"
        )
    return m


class Polynomial:
    """Immutable polynomial over GF(p), coefficients low degree first."""

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs: Sequence[int], p):
        m = _as_modulus(p)
        cs = [c % m.p for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "modulus", m)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, p) -> Polynomial:
        return cls((0,), p)

    @classmethod
    def one(cls, p) -> Polynomial:
        return cls((1,), p)

    @classmethod
    def x(cls, p) -> Polynomial:
        return cls((0, 1), p)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def degree(self):
        """Highest nonzero index, or NEG_INF for the zero polynomial."""
        if self.is_zero():
            return NEG_INF
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return self.leading == 1

    def monic(self) -> Polynomial:
        """Divide through by the leading coefficient."""
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        return scalar_mul(self, self.modulus.inv(self.leading))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs and self.p == other.p

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r}, p={self.p})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = "x" if k == 1 else f"x^{k}"
            terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)

    def __add__(self, other: Polynomial) -> Polynomial:
        _same_field(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)], self.modulus)

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs], self.modulus)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        return poly_mul(self, other)

    def __divmod__(self, other: Polynomial):
        return poly_divmod(self, other)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return poly_divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return poly_divmod(self, other)[1]

    def __call__(self, value: int) -> int:
        """Evaluate at an element of GF(p) by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * value + c) % self.p
        return acc


def _same_field(a: Polynomial, b: Polynomial) -> None:
    if a.p != b.p:
        raise ModulusMismatchError(f"polynomials over GF({a.p}) and GF({b.p})")


def encode(poly: Polynomial) -> Code:
    """Base-p positional value sum(coeffs[i] * p**i)."""
    p = poly.p
    value = 0
    for c in reversed(poly.coeffs):
        value = value * p + c
    if value >= CODE_LIMIT:
        raise CodeOverflowError(
            f"code of degree-{poly.degree} polynomial over GF({p}) exceeds 64 bits"
        )
    return value


def decode(code: Code, p) -> Polynomial:
    """Inverse of encode: base-p digit expansion of code."""
    m = _as_modulus(p)
    if code < 0 or code >= CODE_LIMIT:
        raise CodeOverflowError(f"code {code} outside the unsigned 64-bit range")
    digits = []
    while code:
        code, d = divmod(code, m.p)
        digits.append(d)
    return Polynomial(digits or (0,), m)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _same_field(a, b)
    p = a.p
    if a.is_zero() or b.is_zero():
        return Polynomial.zero(a.modulus)
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    return Polynomial([c % p for c in out], a.modulus)


def scalar_mul(poly: Polynomial, alpha: int) -> Polynomial:
    if not 1 <= alpha < poly.p:
        raise ValueError(f"scalar must lie in [1, {poly.p}), got {alpha}")
    return Polynomial([c * alpha for c in poly.coeffs], poly.modulus)


def poly_divmod(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division: num = den * quotient + remainder, deg(remainder) < deg(den)."""
    _same_field(num, den)
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    p = num.p
    m = num.modulus
    rem = list(num.coeffs)
    dd = len(den.coeffs) - 1
    if num.is_zero() or len(rem) - 1 < dd:
        return Polynomial.zero(m), num
    lead_inv = m.inv(den.leading)
    quot = [0] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        f = rem[k] * lead_inv % p
        if f == 0:
            continue
        quot[k - dd] = f
        shift = k - dd
        for i, d in enumerate(den.coeffs):
            rem[shift + i] = (rem[shift + i] - f * d) % p
    return Polynomial(quot, m), Polynomial(rem[:dd] or (0,), m)
