"""Exact verification workbench for contraction systems and sumset growth.

Everything is computed in exact rational arithmetic; comparisons against
irrational power expressions are certified by interval refinement with
directed rounding.  See the README for the module map and the CLI.
"""

from .bounds import (
    DpTable,
    bukh_reference_bound,
    chs_reference_bound,
    cmp_union_bound,
    dp_bound_violations,
    dp_nonmonotone_indices,
    dp_table,
    induction_inequality_1,
    induction_inequality_2,
    threshold_n,
)
from .cantor import (
    CantorPair,
    DigitBoxSet,
    TreeWord,
    branch_factor_check,
    build_cantor,
    build_counterexample_system,
    digit_box_set,
    plan_subpolynomial_example,
    scale_down,
    verify_bilipschitz,
    xor_automorphism,
)
from .intervals import Interval, SubcoverSplit, two_disjoint_subcovers
from .oracle import (
    AllowedRegion,
    OracleResult,
    SearchBudget,
    allowed_region,
    compare_to_theorem,
    feasible,
    min_union,
)
from .rationals import cmp_pow, format_rational, parse_rational, sign_of_power_sum
from .sets import RealSet, dilate, normalize, sum_of_dilates, sumset
from .systems import (
    AxiomReport,
    ContractionSystem,
    betweenness_violations,
    bijection_with_sumset,
    canonical_dilate_system,
    convexity_check,
    extreme_disjointness_check,
    image_union,
    random_valid_system,
    system_from_jsonable,
    system_to_jsonable,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
