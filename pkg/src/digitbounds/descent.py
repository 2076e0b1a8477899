"""Descent on residue tuples.

A residue tuple ``(a_1, ..., a_k)`` of nonnegative integers, not all zero, is
*in S* for a context ``(m, k, d)`` when ``sum(a_j * m**(k-j)) % d == 0`` with
``d | m**k - 1``.  S is closed under cyclic rotation, and splitting the first
entry as ``a_1 = m*q + b`` while adding ``q`` to the last entry stays in S
because ``m**k == 1 (mod d)``.  Repeating rotate-then-split drives every entry
below ``m`` while the coordinate sum sigma drops by ``(m-1)*q`` per split, so
for any tau obeying the carry inequality

    tau(m*q + b, x_2, ..., x_k) >= tau(b, x_2, ..., x_k + q)

the minimum of tau over S is reached on a tuple of base-m digits, i.e. on the
padded expansion of some multiple ``t*d`` with ``1 <= t <= (m**k-1)/d``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from digitbounds.digits import as_base, horner

Tuple = tuple[int, ...]

DEFAULT_SEARCH_CAP = 10**7


class NotInS(ValueError):
    """A tuple was required to lie in S for the given context but does not."""


class SearchTooLarge(ValueError):
    pass


class ContractNotVerified(RuntimeError):
    """A custom tau was used for a lower-bound claim before its contract was checked."""


@dataclass(frozen=True)
class ModulusContext:
    m: int
    k: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "m", as_base(self.m))
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.d < 1 or (self.m**self.k - 1) % self.d:
            raise ValueError(f"d={self.d} does not divide {self.m}^{self.k} - 1")

    @property
    def top(self) -> int:
        """``m**k - 1``, the largest value of a k-digit tuple."""
        return self.m**self.k - 1

    @property
    def t_max(self) -> int:
        return self.top // self.d

    @classmethod
    def repunit(cls, m: int, k: int) -> "ModulusContext":
        return cls(m, k, (m**k - 1) // (m - 1))

    @classmethod
    def full(cls, m: int, k: int) -> "ModulusContext":
        return cls(m, k, m**k - 1)


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def contexts(m: int, k: int) -> list[ModulusContext]:
    """Every context for ``(m, k)``, one per divisor of ``m**k - 1``."""
    return [ModulusContext(m, k, d) for d in divisors(m**k - 1)]


# -- tau functionals ---------------------------------------------------------

CEIL = "CeilDivM"
FLOOR = "FloorDivMminus1"
CUSTOM = "Custom"


@dataclass(eq=False)
class TauFunctional:
    """A symmetric nonnegative functional on k-tuples, parameterised by the base.

    ``fn(xs, m)`` receives the tuple and the radix.  ``certified`` collects the
    ``(m, k)`` pairs at which :func:`check_tau_contract` passed for this object.
    """

    kind: str
    fn: Callable[[Sequence[int], int], int]
    name: str = ""
    certified: set = field(default_factory=set, repr=False)

    def __call__(self, xs: Sequence[int], m: int) -> int:
        return self.fn(xs, m)

    @classmethod
    def custom(cls, fn: Callable[[Sequence[int], int], int], name: str = "custom"):
        return cls(CUSTOM, fn, name)

    @property
    def builtin(self) -> bool:
        return self.kind in (CEIL, FLOOR)


def _ceil_div_m(xs: Sequence[int], m: int) -> int:
    return sum(-(-x // m) for x in xs)


def _floor_div_m_minus_1(xs: Sequence[int], m: int) -> int:
    return sum(x // (m - 1) for x in xs)


CEIL_DIV_M = TauFunctional(CEIL, _ceil_div_m, "ceil")
FLOOR_DIV_M_MINUS_1 = TauFunctional(FLOOR, _floor_div_m_minus_1, "floor")

BUILTIN_TAUS = {"ceil": CEIL_DIV_M, "floor": FLOOR_DIV_M_MINUS_1}


# -- tuple operations --------------------------------------------------------


def _as_tuple(t: Sequence[int], ctx: ModulusContext) -> Tuple:
    t = tuple(t)
    if len(t) != ctx.k:
        raise ValueError(f"tuple has length {len(t)}, context expects k={ctx.k}")
    if any(a < 0 for a in t):
        raise ValueError(f"tuple entries must be nonnegative: {t}")
    return t


def weighted_sum(t: Sequence[int], ctx: ModulusContext) -> int:
    return horner(_as_tuple(t, ctx), ctx.m)


def in_S(t: Sequence[int], ctx: ModulusContext) -> bool:
    t = _as_tuple(t, ctx)
    return any(t) and horner(t, ctx.m) % ctx.d == 0


def rotate(t: Sequence[int], count: int = 1) -> Tuple:
    """Cyclic left shift: ``(a_1, ..., a_k) -> (a_2, ..., a_k, a_1)``."""
    t = tuple(t)
    if not t:
        return t
    c = count % len(t)
    return t[c:] + t[:c]


@dataclass(frozen=True)
class Step:
    kind: str  # "rotation" or "reduction"
    after: Tuple
    sigma: int
    tau: Optional[int] = None
    count: int = 0
    q: int = 0
    b: int = 0

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "after": list(self.after), "sigma": self.sigma, "tau": self.tau}
        if self.kind == "rotation":
            out["count"] = self.count
        else:
            out["q"], out["b"] = self.q, self.b
        return out


@dataclass
class DescentTrace:
    initial: Tuple
    final: Tuple
    initial_sigma: int
    initial_tau: Optional[int]
    steps: list[Step] = field(default_factory=list)

    @property
    def reductions(self) -> list[Step]:
        return [s for s in self.steps if s.kind == "reduction"]

    @property
    def rotations(self) -> list[Step]:
        return [s for s in self.steps if s.kind == "rotation"]

    @property
    def final_tau(self) -> Optional[int]:
        return self.steps[-1].tau if self.steps else self.initial_tau

    def to_dict(self) -> dict:
        return {
            "initial": list(self.initial),
            "final": list(self.final),
            "initial_sigma": self.initial_sigma,
            "initial_tau": self.initial_tau,
            "steps": [s.to_dict() for s in self.steps],
        }


def _split(t: Tuple, m: int) -> tuple[Tuple, int, int]:
    q, b = divmod(t[0], m)
    if len(t) == 1:
        # first and last coordinate coincide
        return (b + q,), q, b
    return (b,) + t[1:-1] + (t[-1] + q,), q, b


def reduce_step(t: Sequence[int], ctx: ModulusContext) -> tuple[Tuple, Step]:
    """Split ``a_1 = m*q + b`` and return ``(b, a_2, ..., a_k + q)`` with its step record."""
    t = _as_tuple(t, ctx)
    if not in_S(t, ctx):
        raise NotInS(f"{t} is not in S for {ctx}")
    if t[0] < ctx.m:
        raise ValueError(f"first entry {t[0]} is below the base {ctx.m}; nothing to reduce")
    new, q, b = _split(t, ctx.m)
    return new, Step("reduction", new, sum(new), q=q, b=b)


def normalize(
    t: Sequence[int], ctx: ModulusContext, tau: Optional[TauFunctional] = None
) -> tuple[Tuple, DescentTrace]:
    """Rotate a leftmost maximal entry to the front and split it until all entries are < m.

    Only rotations are used for repositioning, since S is not closed under
    arbitrary permutations.  tau, when given, is evaluated after every step.
    """
    t = _as_tuple(t, ctx)
    if not in_S(t, ctx):
        raise NotInS(f"{t} is not in S for {ctx}")
    m = ctx.m
    ev = (lambda x: tau(x, m)) if tau is not None else (lambda x: None)
    trace = DescentTrace(t, t, sum(t), ev(t))
    cur = t
    while True:
        top = max(cur)
        if top < m:
            break
        idx = cur.index(top)
        if idx:
            cur = rotate(cur, idx)
            trace.steps.append(Step("rotation", cur, sum(cur), ev(cur), count=idx))
        cur, q, b = _split(cur, m)
        trace.steps.append(Step("reduction", cur, sum(cur), ev(cur), q=q, b=b))
    trace.final = cur
    return cur, trace


def padded_digits(h: int, ctx: ModulusContext) -> Tuple:
    if not 0 <= h < ctx.m**ctx.k:
        raise ValueError(f"h={h} outside [0, {ctx.m}^{ctx.k})")
    out = []
    for _ in range(ctx.k):
        h, r = divmod(h, ctx.m)
        out.append(r)
    return tuple(reversed(out))


def tau_circ(tau: TauFunctional, h: int, ctx: ModulusContext) -> int:
    """tau on the zero-padded length-k base-m digits of ``h``."""
    return tau(padded_digits(h, ctx), ctx.m)


def theorem1_bound(tau: TauFunctional, ctx: ModulusContext) -> int:
    return min(tau_circ(tau, t * ctx.d, ctx) for t in range(1, ctx.t_max + 1))


def min_tau_over_S(
    tau: TauFunctional, ctx: ModulusContext, entry_bound: int, cap: int = DEFAULT_SEARCH_CAP
) -> int:
    """Brute-force minimum of tau over tuples in S with every entry <= entry_bound."""
    if entry_bound < ctx.m - 1:
        raise ValueError(f"entry_bound must be >= m-1={ctx.m - 1}, got {entry_bound}")
    size = (entry_bound + 1) ** ctx.k
    if size > cap:
        raise SearchTooLarge(f"{size} tuples exceeds the cap of {cap}")
    m, d = ctx.m, ctx.d
    best = None
    for t in itertools.product(range(entry_bound + 1), repeat=ctx.k):
        if not any(t):
            continue
        # independent of horner(): explicit powers
        if sum(a * m ** (ctx.k - 1 - i) for i, a in enumerate(t)) % d:
            continue
        v = tau(t, m)
        if best is None or v < best:
            best = v
    return best


class _Bad(Exception):
    pass


@dataclass(frozen=True)
class ContractCheck:
    holds: bool
    counterexample: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.holds


def check_tau_contract(
    tau: TauFunctional,
    ctx: ModulusContext,
    sample_bound: int,
    symmetry_cap: int = 200_000,
    seed: int = 0,
) -> ContractCheck:
    """Exhaustively test the carry inequality and sampled permutation symmetry.

    The carry inequality is checked for every ``q`` in ``[1, sample_bound]``,
    ``b`` in ``[0, m)`` and every other coordinate in ``[0, sample_bound]``.
    Symmetry is checked against a transposition and a rotation, which generate
    all permutations, on the grid ``[0, sample_bound]**k`` (or a seeded sample
    of it when the grid is larger than ``symmetry_cap``).
    """
    m, k, B = ctx.m, ctx.k, sample_bound

    def ev(xs):
        v = tau(xs, m)
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise _Bad({"reason": "value", "args": list(xs), "value": v})
        return v

    try:
        for q in range(1, B + 1):
            for b in range(m):
                if k == 1:
                    lhs, rhs = ev((m * q + b,)), ev((b + q,))
                    if lhs < rhs:
                        return ContractCheck(False, {"reason": "carry", "q": q, "b": b,
                                                     "lhs_args": [m * q + b], "rhs_args": [b + q],
                                                     "lhs": lhs, "rhs": rhs})
                    continue
                for rest in itertools.product(range(B + 1), repeat=k - 1):
                    left = (m * q + b,) + rest
                    right = (b,) + rest[:-1] + (rest[-1] + q,)
                    lhs, rhs = ev(left), ev(right)
                    if lhs < rhs:
                        return ContractCheck(False, {"reason": "carry", "q": q, "b": b,
                                                     "lhs_args": list(left), "rhs_args": list(right),
                                                     "lhs": lhs, "rhs": rhs})
        if k >= 2:
            size = (B + 1) ** k
            if size <= symmetry_cap:
                grid = itertools.product(range(B + 1), repeat=k)
            else:
                rng = random.Random(seed)
                grid = (tuple(rng.randint(0, B) for _ in range(k)) for _ in range(symmetry_cap))
            for xs in grid:
                v = ev(xs)
                for perm in ((xs[1], xs[0]) + xs[2:], rotate(xs)):
                    w = ev(perm)
                    if v != w:
                        return ContractCheck(False, {"reason": "symmetry", "args": list(xs),
                                                     "permuted": list(perm), "lhs": v, "rhs": w})
    except _Bad as e:
        return ContractCheck(False, e.args[0])

    tau.certified.add((m, k))
    return ContractCheck(True)


@dataclass(frozen=True)
class DescentCertificate:
    """Lower bound for tau at a tuple in S, with the reduced tuple the descent reached."""

    start: Tuple
    tau_value: int
    bound: int
    reduced: Tuple
    reduced_tau: int

    @property
    def holds(self) -> bool:
        return self.tau_value >= self.bound


def descent_certificate(t: Sequence[int], ctx: ModulusContext, tau: TauFunctional) -> DescentCertificate:
    """Claim ``tau(t) >= theorem1_bound(tau, ctx)``.

    Custom functionals are refused unless :func:`check_tau_contract` has
    already passed for them at this ``(m, k)``.
    """
    if not tau.builtin and (ctx.m, ctx.k) not in tau.certified:
        raise ContractNotVerified(
            f"tau {tau.name!r} has no passing contract check at m={ctx.m}, k={ctx.k}"
        )
    final, trace = normalize(t, ctx, tau)
    return DescentCertificate(trace.initial, trace.initial_tau, theorem1_bound(tau, ctx),
                              final, trace.final_tau)
