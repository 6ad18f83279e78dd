"""Product sieve for monic irreducible polynomials of degree q over GF(p).

Every reducible monic polynomial of degree q is a product f * g of monic
polynomials with deg f = d1, deg g = d2, d1 + d2 = q and d1 <= q // 2.  For
each such degree split we multiply every monic f by every monic g, reduce the
product coefficients mod p, and set the bit at the product's code.  Codes
whose bit stays clear are the irreducibles.

Marking is vectorized: factor polynomials are held as coefficient matrices
and the convolution is evaluated for a whole tile of (f, g) pairs at once.
Tiles are independent and only ever set bits, so they can run on parallel
workers without coordination.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .poly import ConfigurationError, check_field

__all__ = [
    "DegreeSplit",
    "MarkTable",
    "SieveReport",
    "SieveResult",
    "enumerate_blocks",
    "format_codes",
    "irreducible_codes",
    "mark_reducibles",
    "monic_coefficients",
    "nonmonic_expand",
    "run_sieve",
    "write_codes",
]

# Upper bound on (f, g) pairs evaluated per tile.
TILE_PAIRS = 1 << 20


class DegreeSplit(NamedTuple):
    d1: int
    d2: int


def _check_sieve_field(p: int, q: int) -> None:
    check_field(p, q)
    if q < 2:
        raise ConfigurationError(f"the sieve needs q >= 2, got q={q}")


def enumerate_blocks(p: int, q: int) -> list[DegreeSplit]:
    """Degree splits (d1, q - d1) for d1 = 1 .. q // 2, ascending."""
    _check_sieve_field(p, q)
    return [DegreeSplit(d, q - d) for d in range(1, q // 2 + 1)]


def monic_coefficients(p: int, d: int) -> np.ndarray:
    """Coefficient rows of all monic degree-d polynomials, in code order.

    Row r holds the low-first coefficients of the polynomial with code
    p**d + r; the last column is the leading 1.
    """
    n = p**d
    out = np.empty((n, d + 1), dtype=np.int64)
    rest = np.arange(n, dtype=np.int64)
    for k in range(d):
        rest, out[:, k] = np.divmod(rest, p)
    out[:, d] = 1
    return out


@dataclass(eq=False)
class MarkTable:
    """One bit per monic degree-q polynomial; bit i covers code p**q + i.

    Bits are packed little-endian within each byte.  A set bit means a
    factorization was found.
    """

    p: int
    q: int
    bits: np.ndarray

    @classmethod
    def from_mask(cls, p: int, q: int, mask: np.ndarray) -> MarkTable:
        return cls(p, q, np.packbits(mask, bitorder="little"))

    @property
    def base(self) -> int:
        return self.p**self.q

    @property
    def size(self) -> int:
        return self.p**self.q

    def mask(self) -> np.ndarray:
        return np.unpackbits(self.bits, count=self.size, bitorder="little").astype(bool)

    def is_marked(self, code: int) -> bool:
        i = code - self.base
        if not 0 <= i < self.size:
            raise ValueError(f"code {code} is not monic of degree {self.q} over GF({self.p})")
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    def marked_count(self) -> int:
        return int(np.count_nonzero(self.mask()))

    def __eq__(self, other):
        if not isinstance(other, MarkTable):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and np.array_equal(self.bits, other.bits)


def _mark_tile(mask, a, b, p, q, d1, d2, powers):
    m, n = len(a), len(b)
    idx = np.zeros((m, n), dtype=np.int64)
    acc = np.empty((m, n), dtype=np.int64)
    tmp = np.empty((m, n), dtype=np.int64)
    # Coefficient q of the product is always 1 and lands outside the index.
    for k in range(q):
        acc.fill(0)
        for i in range(max(0, k - d2), min(d1, k) + 1):
            np.multiply(a[:, i, None], b[None, :, k - i], out=tmp)
            acc += tmp
        acc %= p
        acc *= powers[k]
        idx += acc
    mask[idx.ravel()] = True
    return m * n


def _tiles(n1: int, n2: int):
    cols = min(n2, TILE_PAIRS)
    rows = max(1, TILE_PAIRS // cols)
    for r in range(0, n1, rows):
        for c in range(0, n2, cols):
            yield slice(r, min(r + rows, n1)), slice(c, min(c + cols, n2))


def default_workers() -> int:
    return os.cpu_count() or 1


def mark_reducibles(
    p: int,
    q: int,
    splits: Sequence[DegreeSplit] | None = None,
    workers: int | None = 1,
    stats: dict | None = None,
) -> MarkTable:
    """Mark the code of every product of monic factors for each degree split.

    ``splits`` defaults to the full block list; passing a subset runs a
    partial sieve (useful for ablation).  ``stats``, if given, receives the
    number of products evaluated per split.
    """
    blocks = enumerate_blocks(p, q)
    if splits is not None:
        splits = [DegreeSplit(*s) for s in splits]
        for s in splits:
            if s not in blocks:
                raise ConfigurationError(f"{tuple(s)} is not a degree split of q={q}")
        blocks = splits
    mask = np.zeros(p**q, dtype=bool)
    powers = [p**k for k in range(q)]
    workers = workers or default_workers()

    jobs = []
    for s in blocks:
        a = monic_coefficients(p, s.d1)
        b = a if s.d2 == s.d1 else monic_coefficients(p, s.d2)
        for rs, cs in _tiles(len(a), len(b)):
            jobs.append((s, a[rs], b[cs]))

    def run(job):
        s, a, b = job
        return s, _mark_tile(mask, a, b, p, q, s.d1, s.d2, powers)

    if workers == 1:
        done = map(run, jobs)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            done = list(pool.map(run, jobs))
    counts = dict.fromkeys(blocks, 0)
    for s, n in done:
        counts[s] += n
    if stats is not None:
        stats.update(counts)
    return MarkTable.from_mask(p, q, mask)


def irreducible_codes(table: MarkTable) -> np.ndarray:
    """Codes whose bit is clear, ascending, as a uint64 array."""
    clear = np.flatnonzero(~table.mask()).astype(np.uint64)
    return clear + np.uint64(table.base)


def nonmonic_expand(monic_codes, p: int, q: int | None = None) -> np.ndarray:
    """All alpha-multiples (alpha = 2 .. p-1) of the given monic codes, sorted."""
    codes = np.asarray(monic_codes, dtype=np.uint64)
    if codes.size == 0 or p == 2:
        if codes.size and q is not None:
            _check_monic(codes, p, q)
        return np.empty(0, dtype=np.uint64)
    if q is None:
        q = _degree_of(int(codes.min()), p)
    _check_monic(codes, p, q)
    digits = np.empty((codes.size, q), dtype=np.int64)
    rest = codes - np.uint64(p**q)
    for k in range(q):
        rest, d = np.divmod(rest, np.uint64(p))
        digits[:, k] = d.astype(np.int64)
    powers = np.array([p**k for k in range(q)], dtype=np.uint64)
    out = []
    for alpha in range(2, p):
        low = ((digits * alpha) % p).astype(np.uint64) @ powers
        out.append(low + np.uint64(alpha * p**q))
    return np.sort(np.concatenate(out))


def _degree_of(code: int, p: int) -> int:
    d = 0
    while code >= p:
        code //= p
        d += 1
    return d


def _check_monic(codes: np.ndarray, p: int, q: int) -> None:
    lo, hi = p**q, 2 * p**q
    bad = codes[(codes < np.uint64(lo)) | (codes >= np.uint64(hi))]
    if bad.size:
        raise ValueError(f"code {int(bad[0])} is not monic of degree {q} over GF({p})")


@dataclass
class SieveReport:
    p: int
    q: int
    blocks: list = field(default_factory=list)
    monic_irreducible: int = 0
    reducible: int = 0
    nonmonic_irreducible: int = 0
    total_irreducible: int = 0
    duration_ms: float = 0.0
    verification: dict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["verification"] is None:
            del d["verification"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@dataclass
class SieveResult:
    report: SieveReport
    table: MarkTable
    codes: np.ndarray
    nonmonic: np.ndarray | None = None

    def all_codes(self) -> np.ndarray:
        if self.nonmonic is None:
            return self.codes
        # Monic codes all sit below 2 p^q, every alpha-multiple at or above it.
        return np.concatenate([self.codes, self.nonmonic])


def format_codes(codes: Iterable[int], columns: int | None = None, sep: str = " ") -> str:
    """One code per line, or ``columns`` codes per row joined by ``sep``."""
    words = [str(c) for c in (codes.tolist() if isinstance(codes, np.ndarray) else codes)]
    if not words:
        return ""
    if not columns or columns == 1:
        return "\n".join(words) + "\n"
    rows = (sep.join(words[i : i + columns]) for i in range(0, len(words), columns))
    return "\n".join(rows) + "\n"


def write_codes(path_or_file, codes, columns: int | None = None, sep: str = " ") -> None:
    text = format_codes(codes, columns, sep)
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
        return
    with open(path_or_file, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run_sieve(
    p: int,
    q: int,
    include_nonmonic: bool = False,
    workers: int | None = 1,
    out=None,
    columns: int | None = None,
    splits: Sequence[DegreeSplit] | None = None,
) -> SieveResult:
    """Full pipeline: blocks, marking, survivors, optional alpha expansion.

    If ``out`` is a path or writable file the resulting code list is written
    there.
    """
    t0 = time.perf_counter()
    stats: dict = {}
    table = mark_reducibles(p, q, splits=splits, workers=workers, stats=stats)
    codes = irreducible_codes(table)
    nonmonic = nonmonic_expand(codes, p, q) if include_nonmonic else None
    duration = (time.perf_counter() - t0) * 1000.0

    monic = int(codes.size)
    report = SieveReport(
        p=p,
        q=q,
        blocks=[{"d1": s.d1, "d2": s.d2, "products": n} for s, n in stats.items()],
        monic_irreducible=monic,
        reducible=p**q - monic,
        nonmonic_irreducible=(p - 2) * monic,
        total_irreducible=(p - 1) * monic,
        duration_ms=round(duration, 3),
    )
    result = SieveResult(report, table, codes, nonmonic)
    if out is not None:
        write_codes(out, result.all_codes(), columns)
    return result
