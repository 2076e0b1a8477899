"""Digit-sum lower bounds in base m, the tuple descent behind them, and
brute-force oracles that check both at desk scale."""

__version__ = "0.1.0"

from digitbounds.digits import (
    DigitVector,
    Radix,
    digit_sum,
    expand,
    nonzero_count,
    repunit,
    value,
)
from digitbounds.descent import (
    CEIL_DIV_M,
    FLOOR_DIV_M_MINUS_1,
    ContractCheck,
    DescentTrace,
    ModulusContext,
    TauFunctional,
    check_tau_contract,
    in_S,
    min_tau_over_S,
    normalize,
    reduce_step,
    rotate,
    tau_circ,
    theorem1_bound,
    weighted_sum,
)
from digitbounds.conjecture import (
    ConjectureInstance,
    Part,
    VerificationRecord,
    corollary1_check,
    corollary2_check,
    fold_digits,
    sweep,
    verify_part_I,
    verify_part_II,
)
from digitbounds.valuation import (
    DivisibilityInstance,
    PrimeBase,
    binomial,
    digit_sum_lower_bound_check,
    kummer_carries,
    legendre_valuation,
    sun_divisibility_check,
)
