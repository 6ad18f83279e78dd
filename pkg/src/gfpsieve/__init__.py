"""Irreducible polynomials over GF(p^q) by a product sieve on base-p codes."""

from .poly import (
    CodeOverflowError,
    ConfigurationError,
    ModulusMismatchError,
    Polynomial,
    PrimeModulus,
    check_field,
    decode,
    encode,
    poly_divmod,
    poly_mul,
    scalar_mul,
)
from .sieve import (
    DegreeSplit,
    MarkTable,
    SieveReport,
    enumerate_blocks,
    irreducible_codes,
    mark_reducibles,
    nonmonic_expand,
    run_sieve,
)
from .oracle import (
    VerificationResult,
    count_monic_irreducible,
    is_irreducible_trial,
    moebius,
    verify,
)
from .inverse import ReducibleModulusError, SBoxTable, build_sbox, poly_inverse

__version__ = "0.1.0"
