"""p-adic valuations of factorials and binomials, carries, and the binomial
divisibility

    2**(k-1) * C(2n, n)  divides  C((2**k-1)n, n) * C(2(2**k-1)n, (2**k-1)n) / ((2**k-2)n + 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from digitbounds.conjecture import ConjectureInstance, Part, VerificationRecord, verify_part_II
from digitbounds.digits import digit_sum


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class PrimeBase:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __index__(self) -> int:
        return self.p


PrimeLike = Union[int, PrimeBase]


def _prime(p: PrimeLike) -> int:
    return p.p if isinstance(p, PrimeBase) else PrimeBase(p).p


def binomial(a: int, b: int) -> int:
    """Exact C(a, b); zero when b > a."""
    if a < 0 or b < 0:
        raise ValueError(f"binomial needs nonnegative arguments, got ({a}, {b})")
    if b > a:
        return 0
    b = min(b, a - b)
    acc = 1
    for i in range(1, b + 1):
        # acc * (a-b+i) / i == C(a-b+i, i), always integral
        acc = acc * (a - b + i) // i
    return acc


def legendre_valuation(n: int, p: PrimeLike) -> int:
    """v_p(n!) = sum of floor(n / p**i)."""
    p = _prime(p)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    v, q = 0, n
    while q:
        q //= p
        v += q
    assert v * (p - 1) == n - digit_sum(n, p)
    return v


def kummer_carries(a: int, b: int, p: PrimeLike) -> int:
    """Number of carries when adding ``a`` and ``b`` in base p."""
    p = _prime(p)
    if a < 0 or b < 0:
        raise ValueError(f"arguments must be nonnegative, got ({a}, {b})")
    x, y = a, b
    carry = carries = 0
    while x or y or carry:
        x, dx = divmod(x, p)
        y, dy = divmod(y, p)
        carry = (dx + dy + carry) >= p
        carries += carry
    assert carries == legendre_valuation(a + b, p) - legendre_valuation(a, p) - legendre_valuation(b, p)
    return carries


def p_adic_valuation(x: int, p: PrimeLike) -> int:
    p = _prime(p)
    if x == 0:
        raise ValueError("v_p(0) is infinite")
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class DivisibilityInstance:
    n: int
    k: int
    product: int  # C((2^k-1)n, n) * C(2(2^k-1)n, (2^k-1)n)
    prefactor: int  # (2^k-2)n + 1
    divisor: int
    numerator: Optional[int]
    quotient: Optional[int]

    @property
    def prefactor_exact(self) -> bool:
        return self.numerator is not None

    @property
    def divides(self) -> bool:
        return self.quotient is not None

    @property
    def holds(self) -> bool:
        return self.prefactor_exact and self.divides


def sun_divisibility_check(n: int, k: int) -> DivisibilityInstance:
    """Compute both sides exactly.  A failed exactness test leaves the
    corresponding field as ``None`` rather than raising."""
    if n < 1 or k < 1:
        raise ValueError(f"n and k must be positive: n={n}, k={k}")
    r = (2**k - 1) * n
    product = binomial(r, n) * binomial(2 * r, r)
    prefactor = (2**k - 2) * n + 1
    divisor = 2 ** (k - 1) * binomial(2 * n, n)
    numerator = quotient = None
    num, rem = divmod(product, prefactor)
    if rem == 0:
        numerator = num
        q, rem = divmod(num, divisor)
        if rem == 0:
            quotient = q
    return DivisibilityInstance(n, k, product, prefactor, divisor, numerator, quotient)


def digit_sum_lower_bound_check(n: int, p: PrimeLike, k: int) -> VerificationRecord:
    """Digit sum of ``(p**k - 1) * n`` in base p is at least ``k * (p - 1)``."""
    return verify_part_II(ConjectureInstance(n, _prime(p), k, Part.II))
