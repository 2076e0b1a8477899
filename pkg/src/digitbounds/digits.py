"""Base-m expansions and the digit statistics built on them.

Digits are big-endian throughout: ``expand(13, 3).digits == (1, 1, 1)`` and
index 0 holds the coefficient of the highest power.  Zero expands to ``(0,)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union


@dataclass(frozen=True)
class Radix:
    m: int

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int):
            raise TypeError(f"radix must be an int, got {self.m!r}")
        if self.m < 2:
            raise ValueError(f"radix must be >= 2, got {self.m}")

    def __index__(self) -> int:
        return self.m

    def __int__(self) -> int:
        return self.m


BaseLike = Union[int, Radix]


def as_base(base: BaseLike) -> int:
    """Validate ``base`` and return it as a plain int."""
    return Radix(base).m if not isinstance(base, Radix) else base.m


def _check_nonneg(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an int, got {n!r}")
    if n < 0:
        raise ValueError(f"expected a nonnegative integer, got {n}")


@dataclass(frozen=True)
class DigitVector:
    digits: tuple[int, ...]
    base: int

    def __post_init__(self):
        m = as_base(self.base)
        object.__setattr__(self, "base", m)
        object.__setattr__(self, "digits", tuple(self.digits))
        if not self.digits:
            raise ValueError("a digit vector needs at least one digit")
        for d in self.digits:
            if not 0 <= d < m:
                raise ValueError(f"digit {d} out of range for base {m}")
        if len(self.digits) > 1 and self.digits[0] == 0:
            raise ValueError("leading zero digit")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


def expand(n: int, base: BaseLike) -> DigitVector:
    m = as_base(base)
    _check_nonneg(n)
    if n == 0:
        return DigitVector((0,), m)
    out = []
    while n:
        n, r = divmod(n, m)
        out.append(r)
    out.reverse()
    return DigitVector(tuple(out), m)


def horner(digits: Sequence[int], base: int) -> int:
    """Evaluate big-endian ``digits`` in ``base`` without range checks."""
    acc = 0
    for d in digits:
        acc = acc * base + d
    return acc


def value(dv: DigitVector) -> int:
    # DigitVector construction already rejected out-of-range digits
    return horner(dv.digits, dv.base)


def digit_sum(n: int, base: BaseLike) -> int:
    m = as_base(base)
    _check_nonneg(n)
    s = 0
    while n:
        n, r = divmod(n, m)
        s += r
    return s


def nonzero_count(n: int, base: BaseLike) -> int:
    m = as_base(base)
    _check_nonneg(n)
    c = 0
    while n:
        n, r = divmod(n, m)
        c += r != 0
    return c


def repunit(base: BaseLike, k: int) -> int:
    """``(m**k - 1) // (m - 1)``, i.e. k ones in base m."""
    m = as_base(base)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    q, r = divmod(m**k - 1, m - 1)
    assert r == 0
    return q
