import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitbounds.conjecture import (
    ConjectureInstance,
    Part,
    corollary1_check,
    corollary2_check,
    fold_digits,
    sweep,
    verify_part_I,
    verify_part_II,
)
from digitbounds.descent import ModulusContext, NotInS, in_S, weighted_sum
from digitbounds.digits import DigitVector, expand, nonzero_count, repunit


def fold_oracle(n, m, k):
    """Fold from the least significant end: digit of m**e goes to class e mod k."""
    classes = [0] * k
    e = 0
    while n:
        n, r = divmod(n, m)
        classes[e % k] += r
        e += 1
    # a_j collects exponent class k - j
    return tuple(classes[(k - j) % k] for j in range(1, k + 1))


@pytest.mark.parametrize(
    "n, m, k, expected",
    [(35, 2, 3, (1, 1, 1)), (8, 3, 2, (2, 2)), (693, 10, 2, (9, 9))],
)
def test_fold_examples(n, m, k, expected):
    assert fold_digits(expand(n, m), k) == expected
    assert fold_oracle(n, m, k) == expected


def test_fold_rejects_zero():
    with pytest.raises(ValueError):
        fold_digits(DigitVector((0,), 5), 2)


@given(st.integers(1, 10**15), st.integers(2, 12), st.integers(1, 6))
def test_fold_matches_oracle_and_preserves_value_mod(n, m, k):
    t = fold_digits(expand(n, m), k)
    assert t == fold_oracle(n, m, k)
    ctx = ModulusContext.full(m, k)
    assert (weighted_sum(t, ctx) - n) % ctx.d == 0


def test_folding_congruence_exhaustive():
    for m in range(2, 7):
        for k in range(1, 5):
            r = repunit(m, k)
            ctx = ModulusContext.repunit(m, k)
            for n in range(1, 501):
                t = fold_digits(expand(n * r, m), k)
                assert weighted_sum(t, ctx) % r == 0
                assert in_S(t, ctx)


def _ceil(a, b):
    return -(-a // b)


def test_folding_bound_chain():
    for m in range(2, 7):
        for k in range(1, 5):
            r = repunit(m, k)
            ctx = ModulusContext.repunit(m, k)
            for n in range(1, 301):
                x = n * r
                dv = expand(x, m)
                t = fold_digits(dv, k)
                h = len(dv)
                per_class = [0] * k
                for i, b in enumerate(dv.digits):
                    if b:
                        per_class[k - 1 - (h - 1 - i) % k] += 1
                for a, c in zip(t, per_class):
                    assert _ceil(a, m - 1) <= c
                mid = sum(_ceil(a, m - 1) for a in t)
                low = sum(_ceil(a, m) for a in t)
                assert nonzero_count(x, m) >= mid >= low
                value, holds = corollary1_check(t, ctx)
                assert value == low and holds
                # part I is implied by the corollary on the folded tuple
                assert verify_part_I(ConjectureInstance(n, m, k, Part.I)).holds


@pytest.mark.parametrize(
    "t, m, k, expected",
    [((1, 1, 1), 2, 3, (3, True)), ((2, 2), 3, 2, (2, True))],
)
def test_corollary1_examples(t, m, k, expected):
    assert corollary1_check(t, ModulusContext.repunit(m, k)) == expected


@pytest.mark.parametrize(
    "t, m, k, expected",
    [((2, 2), 3, 2, (2, True)), ((5, 1), 3, 2, (2, True)), ((4, 4, 4), 5, 3, (3, True))],
)
def test_corollary2_examples(t, m, k, expected):
    assert corollary2_check(t, ModulusContext.full(m, k)) == expected


def test_corollary_errors():
    with pytest.raises(NotInS):
        corollary1_check((1, 0), ModulusContext.repunit(3, 2))
    with pytest.raises(ValueError):
        corollary1_check((2, 2), ModulusContext.full(3, 2))
    with pytest.raises(NotInS):
        corollary2_check((2, 1), ModulusContext.full(3, 2))


@pytest.mark.parametrize("m, k", [(m, k) for m in range(2, 5) for k in range(1, 4)])
def test_corollaries_no_small_counterexample(m, k):
    rep, full = ModulusContext.repunit(m, k), ModulusContext.full(m, k)
    for t in itertools.product(range(2 * m + 1), repeat=k):
        if in_S(t, rep):
            assert corollary1_check(t, rep)[1]
        if in_S(t, full):
            assert corollary2_check(t, full)[1]


@pytest.mark.parametrize(
    "n, m, k, observed",
    [(5, 2, 3, 3), (1, 10, 4, 4), (1, 2, 1, 1)],
)
def test_verify_part_I_examples(n, m, k, observed):
    rec = verify_part_I(ConjectureInstance(n, m, k, Part.I))
    assert rec.observed == observed and rec.required == k and rec.holds


@pytest.mark.parametrize(
    "n, m, k, observed, required",
    [(7, 10, 2, 18, 18), (1, 2, 5, 5, 5), (1, 3, 4, 8, 8), (1, 7, 3, 18, 18)],
)
def test_verify_part_II_examples(n, m, k, observed, required):
    rec = verify_part_II(ConjectureInstance(n, m, k, Part.II))
    assert (rec.observed, rec.required, rec.holds) == (observed, required, True)
    assert rec.slack == 0


def test_verify_wrong_part():
    with pytest.raises(ValueError):
        verify_part_I(ConjectureInstance(1, 2, 1, Part.II))
    with pytest.raises(ValueError):
        ConjectureInstance(0, 2, 1, Part.I)


def test_record_holds_tracks_values():
    rec = verify_part_II(ConjectureInstance(7, 10, 2, Part.II), required_offset=1)
    assert rec.required == 19 and not rec.holds


def test_sweep_part_I_small():
    records, summary = sweep(Part.I, (2, 4), (1, 3), (1, 100))
    assert len(records) == 900 == summary.total
    assert summary.failures == 0
    keys = [(r.instance.m, r.instance.k, r.instance.n) for r in records]
    assert keys == sorted(keys)


def test_sweep_part_II_trivial():
    records, summary = sweep(Part.II, (2, 2), (1, 1), (1, 10))
    assert len(records) == 10 and summary.failures == 0


def test_sweep_records_failures_as_witnesses():
    records, summary = sweep(Part.II, (10, 10), (2, 2), (1, 10), required_offset=1)
    assert summary.failures > 0
    assert {"m": 10, "k": 2, "n": 7} in summary.failure_witnesses


def test_sweep_guards():
    with pytest.raises(ValueError):
        sweep(Part.I, (1, 3), (1, 1), (1, 1))
    with pytest.raises(ValueError):
        sweep(Part.I, (2, 3), (2, 1), (1, 1))
    with pytest.raises(ValueError):
        sweep(Part.I, (2, 3), (1, 2), (1, 100), cap=10)


def test_sweep_parallel_matches_serial():
    a, sa = sweep(Part.II, (2, 5), (1, 3), (1, 50), workers=1)
    b, sb = sweep(Part.II, (2, 5), (1, 3), (1, 50), workers=3)
    assert a == b and sa == sb


@given(st.integers(1, 10**6), st.integers(2, 12), st.integers(1, 5))
def test_threshold_monotone_in_k(n, m, k):
    lo = verify_part_II(ConjectureInstance(n, m, k, Part.II))
    hi = verify_part_II(ConjectureInstance(n, m, k + 1, Part.II))
    assert hi.required >= lo.required
    assert lo.holds and hi.holds
