"""Micro λ-calculus: distributive β-reduction, the inner spine strategy, and its projections."""

from .beta import (
    NormalizeOutcome,
    Status,
    Verdict,
    beta_convertible,
    beta_step,
    find_spine_step,
    full_development,
    normal_order_normalize,
    spine_redexes,
)
from .distributive import (
    STRATEGIES,
    Rule,
    RuleTag,
    Step,
    Trace,
    classify_redex,
    dist_step,
    inner_spine_redex,
    is_destructive,
    reduce,
)
from .harness import (
    CheckReport,
    GenConfig,
    check_dev_equals_xnf,
    check_normalization,
    check_projection,
    check_redex_coincidence,
    check_rule_soundness,
    gen_term,
    search_divergence_witness,
)
from .lambdax import (
    Sub,
    XRule,
    explicify,
    match_single_x_step,
    x_normalize,
    x_redexes,
    x_step,
)
from .syntax import ParseError, parse, parse_x, print_term
from .terms import (
    App,
    Arg,
    Body,
    BoundVar,
    Edge,
    FreeVar,
    Fun,
    Lam,
    alpha_eq,
    redex_positions,
    replace_at,
    substitute,
    subterm_at,
)
from .traces import TRACE_SCHEMA, replay, trace_to_json

__version__ = "0.1.0"
