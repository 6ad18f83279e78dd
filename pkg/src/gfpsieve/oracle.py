"""Ground truth for the sieve: the Moebius count and plain trial division.

Nothing here builds products of factors; irreducibility is decided only by
dividing by every monic polynomial of degree at most q // 2.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from .poly import Polynomial, check_field, decode

__all__ = [
    "DEFAULT_EXHAUSTIVE_BOUND",
    "PUBLISHED_COUNTS",
    "VerificationResult",
    "count_monic_irreducible",
    "count_root_free",
    "find_factor",
    "is_irreducible_trial",
    "moebius",
    "trial_survivors",
    "verify",
]

DEFAULT_EXHAUSTIVE_BOUND = 10**5

# Monic irreducible counts as printed in earlier tables. The GF(7^5) entry is
# the number of root-free quintics, not irreducibles; see count_root_free.
PUBLISHED_COUNTS = {(7, 3): 112, (11, 3): 440, (101, 3): 343400, (7, 5): 5712}


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError(f"moebius is defined for n >= 1, got {n}")
    sign = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            sign = -sign
        f += 1
    if n > 1:
        sign = -sign
    return sign


def count_monic_irreducible(p: int, q: int) -> int:
    """Number of monic irreducibles of degree q: (1/q) sum_{d | q} mu(d) p^(q/d)."""
    check_field(p, q)
    total = sum(moebius(d) * p ** (q // d) for d in range(1, q + 1) if q % d == 0)
    assert total % q == 0, (p, q, total)
    return total // q


def count_root_free(p: int, q: int) -> int:
    """Monic degree-q polynomials with no root in GF(p), by inclusion-exclusion.

    Equals the irreducible count for q <= 3 only.  This is what a sieve that
    marks only products with a linear factor would report.
    """
    return sum((-1) ** k * comb(p, k) * p ** (q - k) for k in range(min(p, q) + 1))


def find_factor(poly: Polynomial) -> Polynomial | None:
    """Smallest-code monic divisor of degree 1 .. deg // 2, or None."""
    deg = poly.degree
    if poly.is_zero() or deg < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    p = poly.p
    for d in range(1, deg // 2 + 1):
        for code in range(p**d, 2 * p**d):
            g = decode(code, p)
            if (poly % g).is_zero():
                return g
    return None


def is_irreducible_trial(poly: Polynomial) -> bool:
    return find_factor(poly) is None


def trial_survivors(p: int, q: int) -> np.ndarray:
    """Codes of all monic degree-q polynomials that no trial divisor divides.

    Same test as is_irreducible_trial, run as batched long division over
    every candidate at once.
    """
    check_field(p, q)
    base = p**q
    rest = np.arange(base, dtype=np.int64)
    rows = np.empty((base, q + 1), dtype=np.int64)
    for k in range(q):
        rest, rows[:, k] = np.divmod(rest, p)
    rows[:, q] = 1
    alive = np.ones(base, dtype=bool)
    for d in range(1, q // 2 + 1):
        for code in range(p**d, 2 * p**d):
            g = np.array(decode(code, p).coeffs, dtype=np.int64)
            live = np.flatnonzero(alive)
            if live.size == 0:
                break
            rem = rows[live].copy()
            # g is monic, so each step subtracts (leading coeff) * g shifted.
            for k in range(q, d - 1, -1):
                lead = rem[:, k].copy()
                rem[:, k - d : k + 1] -= lead[:, None] * g[None, :]
                rem[:, k - d : k + 1] %= p
            divides = ~rem[:, :d].any(axis=1)
            alive[live[divides]] = False
    return np.flatnonzero(alive).astype(np.uint64) + np.uint64(base)


@dataclass
class VerificationResult:
    p: int
    q: int
    expected_count: int
    sieve_count: int
    mismatch_codes: list = field(default_factory=list)
    exhaustive: bool = False
    published_count: int | None = None
    notes: list = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.expected_count == self.sieve_count and not self.mismatch_codes

    def to_dict(self) -> dict:
        d = asdict(self)
        d["success"] = self.success
        return d


def verify(p: int, q: int, sieve_codes, exhaustive_bound: int = DEFAULT_EXHAUSTIVE_BOUND) -> VerificationResult:
    """Check sieve output against the Moebius count and, for small fields, trial division."""
    codes = np.asarray(sieve_codes, dtype=np.uint64)
    result = VerificationResult(
        p=p,
        q=q,
        expected_count=count_monic_irreducible(p, q),
        sieve_count=int(codes.size),
    )
    if p**q <= exhaustive_bound:
        truth = trial_survivors(p, q)
        result.exhaustive = True
        result.mismatch_codes = np.setxor1d(codes, truth).astype(np.uint64).tolist()

    published = PUBLISHED_COUNTS.get((p, q))
    if published is not None:
        result.published_count = published
        if published != result.expected_count:
            msg = (
                f"published count {published} differs from the exact count "
                f"{result.expected_count}"
            )
            if published == count_root_free(p, q):
                msg += f"; {published} is the number of root-free monic polynomials of degree {q}"
            result.notes.append(msg)
    return result
