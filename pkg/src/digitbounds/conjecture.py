"""Digit-count and digit-sum lower bounds for multiples of ``m**k - 1``.

Part I: ``n * (m**k - 1) / (m - 1)`` has at least ``k`` nonzero base-m digits.
Part II: ``n * (m**k - 1)`` has base-m digit sum at least ``k * (m - 1)``.

Both follow from descent bounds on residue tuples.  Part I goes through
:func:`fold_digits`, which sums the digits of a multiple of the repunit by
exponent class mod k; the resulting tuple lies in S for the repunit modulus
because ``m**k == 1`` modulo it.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from digitbounds.descent import NotInS, ModulusContext, in_S
from digitbounds.digits import DigitVector, as_base, digit_sum, nonzero_count, repunit

DEFAULT_CAP = 10**7


class Part(str, enum.Enum):
    I = "I"
    II = "II"


@dataclass(frozen=True)
class ConjectureInstance:
    n: int
    m: int
    k: int
    part: Part

    def __post_init__(self):
        object.__setattr__(self, "m", as_base(self.m))
        object.__setattr__(self, "part", Part(self.part))
        if self.n < 1 or self.k < 1:
            raise ValueError(f"n and k must be positive: n={self.n}, k={self.k}")

    @property
    def params(self) -> dict:
        return {"m": self.m, "k": self.k, "n": self.n}


@dataclass(frozen=True)
class VerificationRecord:
    instance: ConjectureInstance
    multiple: int
    observed: int
    required: int

    @property
    def holds(self) -> bool:
        return self.observed >= self.required

    @property
    def slack(self) -> int:
        return self.observed - self.required

    def to_dict(self) -> dict:
        return {
            "params": self.instance.params,
            "observed": self.observed,
            "required": self.required,
            "holds": self.holds,
        }


def fold_digits(dv: DigitVector, k: int) -> tuple[int, ...]:
    """Sum the digits of ``dv`` by weight exponent mod k.

    The digit with weight ``m**e`` lands in ``a_j`` with ``j = k - (e mod k)``,
    so the tuple's weighted sum ``sum(a_j * m**(k-j))`` is congruent to the
    value of ``dv`` modulo ``m**k - 1``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not any(dv.digits):
        raise ValueError("cannot fold zero: the folded tuple would be all zero")
    out = [0] * k
    h = len(dv.digits)
    for i, b in enumerate(dv.digits):
        e = h - 1 - i
        out[k - 1 - e % k] += b
    return tuple(out)


def _check_ctx(t: Sequence[int], ctx: ModulusContext, d: int, what: str) -> tuple[int, ...]:
    if ctx.d != d:
        raise ValueError(f"{what} needs d={d} for m={ctx.m}, k={ctx.k}; got d={ctx.d}")
    t = tuple(t)
    if not in_S(t, ctx):
        raise NotInS(f"{t} is not in S for {ctx}")
    return t


def corollary1_check(t: Sequence[int], ctx: ModulusContext) -> tuple[int, bool]:
    """``sum(ceil(a_j / m)) >= k`` for a tuple in S modulo the repunit."""
    t = _check_ctx(t, ctx, repunit(ctx.m, ctx.k), "corollary 1")
    value = sum(-(-a // ctx.m) for a in t)
    return value, value >= ctx.k


def corollary2_check(t: Sequence[int], ctx: ModulusContext) -> tuple[int, bool]:
    """``sum(floor(a_j / (m-1))) >= k`` for a tuple in S modulo ``m**k - 1``."""
    t = _check_ctx(t, ctx, ctx.m**ctx.k - 1, "corollary 2")
    value = sum(a // (ctx.m - 1) for a in t)
    return value, value >= ctx.k


def verify_part_I(inst: ConjectureInstance, required_offset: int = 0) -> VerificationRecord:
    # required_offset exists only so tests can force a failing record
    if inst.part is not Part.I:
        raise ValueError(f"expected a part I instance, got part {inst.part.value}")
    multiple = inst.n * repunit(inst.m, inst.k)
    return VerificationRecord(inst, multiple, nonzero_count(multiple, inst.m),
                              inst.k + required_offset)


def verify_part_II(inst: ConjectureInstance, required_offset: int = 0) -> VerificationRecord:
    if inst.part is not Part.II:
        raise ValueError(f"expected a part II instance, got part {inst.part.value}")
    multiple = inst.n * (inst.m**inst.k - 1)
    return VerificationRecord(inst, multiple, digit_sum(multiple, inst.m),
                              inst.k * (inst.m - 1) + required_offset)


def verify(inst: ConjectureInstance, required_offset: int = 0) -> VerificationRecord:
    fn = verify_part_I if inst.part is Part.I else verify_part_II
    return fn(inst, required_offset)


@dataclass
class SweepSummary:
    total: int = 0
    failures: int = 0
    min_slack: Optional[int] = None
    max_slack: Optional[int] = None
    equality_count: int = 0
    failure_witnesses: list = field(default_factory=list)
    equality_examples: list = field(default_factory=list)

    def add(self, rec: VerificationRecord, keep: int = 5) -> None:
        self.total += 1
        s = rec.slack
        self.min_slack = s if self.min_slack is None else min(self.min_slack, s)
        self.max_slack = s if self.max_slack is None else max(self.max_slack, s)
        if not rec.holds:
            self.failures += 1
            self.failure_witnesses.append(rec.instance.params)
        elif s == 0:
            self.equality_count += 1
            if len(self.equality_examples) < keep:
                self.equality_examples.append(rec.instance.params)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "failures": self.failures,
            "min_slack": self.min_slack,
            "max_slack": self.max_slack,
            "equality_count": self.equality_count,
            "equality_examples": self.equality_examples,
            "failure_witnesses": self.failure_witnesses,
        }


def summarize(records: Iterable[VerificationRecord]) -> SweepSummary:
    summary = SweepSummary()
    for r in records:
        summary.add(r)
    return summary


def _inclusive(r: Sequence[int], name: str, minimum: int) -> tuple[int, int]:
    lo, hi = r
    if lo > hi:
        raise ValueError(f"empty {name} range {lo}:{hi}")
    if lo < minimum:
        raise ValueError(f"{name} range starts below {minimum}: {lo}:{hi}")
    return lo, hi


def _run_chunk(args) -> list[VerificationRecord]:
    part, m, k, n_lo, n_hi, offset = args
    return [verify(ConjectureInstance(n, m, k, part), offset) for n in range(n_lo, n_hi + 1)]


def sweep(
    part: Part,
    m_range: Sequence[int],
    k_range: Sequence[int],
    n_range: Sequence[int],
    workers: int = 1,
    cap: int = DEFAULT_CAP,
    required_offset: int = 0,
) -> tuple[list[VerificationRecord], SweepSummary]:
    """Verify every ``(m, k, n)`` in the inclusive ranges; records come back sorted by (m, k, n)."""
    part = Part(part)
    m_lo, m_hi = _inclusive(m_range, "m", 2)
    k_lo, k_hi = _inclusive(k_range, "k", 1)
    n_lo, n_hi = _inclusive(n_range, "n", 1)
    count = (m_hi - m_lo + 1) * (k_hi - k_lo + 1) * (n_hi - n_lo + 1)
    if count > cap:
        raise ValueError(f"sweep of {count} instances exceeds the cap of {cap}")
    chunks = [
        (part, m, k, n_lo, n_hi, required_offset)
        for m, k in itertools.product(range(m_lo, m_hi + 1), range(k_lo, k_hi + 1))
    ]
    if workers <= 1:
        parts = map(_run_chunk, chunks)
        records = [r for chunk in parts for r in chunk]
    else:
        # map() yields in submission order, so the result is independent of scheduling
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
    return records, summarize(records)
