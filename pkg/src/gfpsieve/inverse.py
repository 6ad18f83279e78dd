"""Multiplicative inverse tables (S-boxes) in GF(p)[x] / (m(x)).

Entry c of the table is the code of the inverse of decode(c) modulo the
chosen monic irreducible m; entry 0 maps to 0 as in the AES convention.
No affine stage is applied.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .oracle import find_factor
from .poly import ConfigurationError, Polynomial, check_field, decode, encode

__all__ = ["ReducibleModulusError", "SBoxTable", "build_sbox", "poly_inverse"]


class ReducibleModulusError(ValueError):
    """The modulus polynomial has a nontrivial factor (kept in ``factor``)."""

    def __init__(self, modulus: Polynomial, factor: Polynomial):
        self.modulus = modulus
        self.factor = factor
        super().__init__(
            f"modulus {modulus} (code {encode(modulus)}) is reducible: "
            f"divisible by {factor} (code {encode(factor)})"
        )


def poly_inverse(a: Polynomial, modulus_poly: Polynomial) -> Polynomial:
    """Inverse of a modulo modulus_poly by the extended Euclidean algorithm."""
    if a.p != modulus_poly.p:
        raise ValueError("operands live over different prime fields")
    a = a % modulus_poly
    if a.is_zero():
        raise ZeroDivisionError("zero has no multiplicative inverse")
    m = a.modulus
    r0, r1 = modulus_poly, a
    s0, s1 = Polynomial.zero(m), Polynomial.one(m)
    while not r1.is_zero():
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
    # r0 is gcd(modulus, a) up to a unit.
    if r0.degree > 0:
        raise ReducibleModulusError(modulus_poly, r0.monic())
    return (s0 * Polynomial((m.inv(r0.leading),), m)) % modulus_poly


def _inverse_chunk(args):
    p, ip_code, lo, hi = args
    mod = decode(ip_code, p)
    return [encode(poly_inverse(decode(c, p), mod)) for c in range(lo, hi)]


@dataclass
class SBoxTable:
    p: int
    q: int
    ip_code: int
    entries: list

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, c):
        return self.entries[c]

    def to_lines(self) -> str:
        return "".join(f"{e}\n" for e in self.entries)

    def to_csv(self, width: int = 16) -> str:
        rows = [self.entries[i : i + width] for i in range(0, len(self.entries), width)]
        return "".join(",".join(map(str, r)) + "\n" for r in rows)

    def to_c_array(self, name: str = "sbox", width: int = 16) -> str:
        top = max(self.entries, default=0)
        ctype = next(
            t for t, bits in (("uint8_t", 8), ("uint16_t", 16), ("uint32_t", 32), ("uint64_t", 64))
            if top < 1 << bits
        )
        mod = decode(self.ip_code, self.p)
        lines = [
            f"/* Multiplicative inverses in GF({self.p}^{self.q}) modulo {mod}",
            f"   (code {self.ip_code}, {self.ip_code:#x}); entry 0 maps to 0. */",
            "#include <stdint.h>",
            "",
            f"static const {ctype} {name}[{len(self.entries)}] = {{",
        ]
        for i in range(0, len(self.entries), width):
            chunk = ", ".join(str(e) for e in self.entries[i : i + width])
            lines.append(f"    {chunk},")
        lines.append("};")
        return "\n".join(lines) + "\n"


def build_sbox(p: int, q: int, ip_code: int, workers: int | None = 1) -> SBoxTable:
    check_field(p, q)
    mod = decode(ip_code, p)
    if mod.degree != q or not mod.is_monic():
        raise ConfigurationError(f"code {ip_code} is not monic of degree {q} over GF({p})")
    factor = find_factor(mod)
    if factor is not None:
        raise ReducibleModulusError(mod, factor)

    size = p**q
    workers = workers or 1
    if workers == 1 or size < 4096:
        inverses = _inverse_chunk((p, ip_code, 1, size))
    else:
        step = -(-(size - 1) // workers)
        jobs = [(p, ip_code, lo, min(lo + step, size)) for lo in range(1, size, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            inverses = [e for part in pool.map(_inverse_chunk, jobs) for e in part]
    return SBoxTable(p, q, ip_code, [0] + inverses)
