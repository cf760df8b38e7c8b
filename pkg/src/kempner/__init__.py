"""Certified computation of digit-restricted harmonic (Kempner-like) sums.

The sums ``sum{1/n : statistic(n) = k}`` -- where the statistic is a
digit sum in some base or the number of occurrences of a binary word --
converge for every ``k`` and approach a closed-form limit as ``k`` grows:
``2 log 2`` for binary digit sums, ``2 log b / (b-1)`` in base ``b``, and
``2^len(w) log 2`` for block counts.  This package computes the sums with
certified interval enclosures, verifies the exact identities behind those
limits in rational arithmetic, and demonstrates the supporting machinery
(log-ratio expressions of words, convergence-transfer filters).

See ``README.md`` for usage, the ``demos/`` scripts for guided tours, and
``kempner.cli`` for the command-line interface.
"""

from .enclosure import Enclosure, decimal_digits, decimal_string, log2_enclosure, log_enclosure
from .exact import (
    ClassQuery,
    IdentityCheck,
    bounded_class_sum,
    class_partition_check,
    enumerate_class,
    harmonic,
    partial_sum_exact,
    split_identity_check,
    tail_bound_sum,
    tail_count_bound,
    vsum_identity_check,
    vsum_identity_sweep,
)
from .filters import (
    FilterDemo,
    Polynomial,
    RootAnalysis,
    filter_convergence_demo,
    filter_sequence,
    geometric_decay,
    max_root_modulus,
    reciprocal_decay,
    root_analysis,
    transfer_polynomial,
)
from .logratio import LogExpression, LogTerm, correction_term, log_expression, log_sum_over_class
from .series import (
    SeriesResult,
    accelerated_block_sum,
    convergence_table,
    direct_sum_base_b,
    limit_value,
    telescoped_sum_base2,
)
from .words import (
    BlockCount,
    DigitSum,
    Statistic,
    complement_digit,
    count_occurrences,
    digit_sum,
    is_suffix,
    parse_statistic,
    pattern_counter,
    render_statistic,
    statistic_value,
    word_value,
)

__version__ = "0.1.0"
