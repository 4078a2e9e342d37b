"""Seeded term generation and executable checks of the calculus' metatheory.

Every check is a pure function of its arguments: the same config and case
count give a byte-identical report.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from ._deep import deep
from .beta import (
    DEFAULT_BETA_FUEL,
    NormalizeOutcome,
    NotARedex,
    Status,
    Verdict,
    beta_convertible,
    beta_step,
    find_spine_step,
    full_development,
    leftmost_outermost_step,
    normal_order_normalize,
)
from .distributive import (
    INNER_SPINE,
    LEFTMOST_OUTERMOST_DIST,
    NORMAL_ORDER_BETA,
    Rule,
    Trace,
    classify_redex,
    dist_step,
    inner_spine_redex,
    is_destructive,
    iter_steps,
    reduce,
)
from .lambdax import XFuelExhausted, explicify, match_single_x_step, sub_count, x_normalize
from .syntax import print_term
from .terms import App, BoundVar, Edge, FreeVar, Lam, Term, is_redex, iter_positions, redex_positions


@dataclass(frozen=True)
class GenConfig:
    max_size: int = 50
    seed: int = 0
    free_name_pool: tuple[str, ...] = ("a", "b", "c")
    closed_only: bool = False

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        if self.max_size < 2 and not self.has_free_pool:
            raise ValueError("a closed term needs at least 2 nodes")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def has_free_pool(self) -> bool:
        return bool(self.free_name_pool) and not self.closed_only


DEFAULT_CONFIG = GenConfig()

# weights for the node kind at a given size (variable only at size 1)
_W_LAM, _W_APP, _W_REDEX = 3, 4, 3


def _gen(rng: random.Random, n: int, depth: int, pool: tuple[str, ...]) -> Term:
    if n == 1:
        k = rng.randrange(depth + len(pool))
        return BoundVar(k) if k < depth else FreeVar(pool[k - depth])
    has_var = depth > 0 or bool(pool)
    least = 1 if has_var else 2  # smallest term possible at this depth
    kinds, weights = ["lam"], [_W_LAM]
    if n - 1 >= 2 * least:
        kinds.append("app")
        weights.append(_W_APP)
    if n - 1 >= 2 + least:
        kinds.append("redex")
        weights.append(_W_REDEX)
    kind = rng.choices(kinds, weights)[0]
    if kind == "lam":
        return Lam(_gen(rng, n - 1, depth + 1, pool))
    if kind == "app":
        k = rng.randint(least, n - 1 - least)
        return App(_gen(rng, k, depth, pool), _gen(rng, n - 1 - k, depth, pool))
    k = rng.randint(2, n - 1 - least)
    return App(Lam(_gen(rng, k - 1, depth + 1, pool)), _gen(rng, n - 1 - k, depth, pool))


def gen_term(config: GenConfig, index: int) -> Term:
    """The index-th term of the stream determined by config; size <= max_size."""
    rng = random.Random((config.seed << 64) | index)
    pool = tuple(config.free_name_pool) if config.has_free_pool else ()
    least = 1 if pool else 2
    n = rng.randint(least, config.max_size)
    return _gen(rng, n, 0, pool)


def gen_terms(config: GenConfig, n: int) -> Iterator[tuple[int, Term]]:
    for i in range(n):
        yield i, gen_term(config, i)


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    index: int
    term: str
    diagnostic: str


@dataclass
class CheckReport:
    name: str
    cases_run: int = 0
    passes: int = 0
    failures: list[Failure] = field(default_factory=list)
    branch_counts: dict[str, int] = field(default_factory=dict)
    stats: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.passes == self.cases_run

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cases_run": self.cases_run,
            "passes": self.passes,
            "failures": [
                {"index": f.index, "term": f.term, "diagnostic": f.diagnostic} for f in self.failures
            ],
            "branch_counts": dict(sorted(self.branch_counts.items())),
            "stats": dict(sorted(self.stats.items())),
        }

    def summary(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        branches = ", ".join(f"{k}={v}" for k, v in sorted(self.branch_counts.items()))
        return f"{verdict} {self.name}: {self.passes}/{self.cases_run} [{branches}]"


CaseResult = tuple[list[str], Optional[str]]  # (branch labels, diagnostic on failure)


def _run(name: str, cases: Iterable[tuple[int, Term]], check: Callable[[Term], CaseResult]) -> CheckReport:
    report = CheckReport(name)
    branches: Counter[str] = Counter()
    for index, term in cases:
        labels, problem = check(term)
        branches.update(labels)
        report.cases_run += 1
        if problem is None:
            report.passes += 1
        else:
            report.failures.append(Failure(index, print_term(term), problem))
    report.failures.sort(key=lambda f: f.index)
    report.branch_counts = dict(branches)
    return report


def _cases(config: GenConfig, n: int, terms: Optional[Iterable[Term]]) -> Iterable[tuple[int, Term]]:
    return enumerate(terms) if terms is not None else gen_terms(config, n)


def _fmt(path) -> str:
    return "[" + ", ".join(e.value for e in path) + "]"


# -- redex coincidence ------------------------------------------------------


def redex_coincidence_case(term: Term) -> CaseResult:
    beta = set(redex_positions(term))
    dist = set()
    rules = []
    for path, sub in iter_positions(term):
        try:
            rules.append("rule-" + classify_redex(sub).value)
        except NotARedex:
            continue
        dist.add(path)
    labels = rules or ["redex-free"]
    if beta != dist:
        extra = sorted(map(_fmt, beta ^ dist))
        return labels, f"β-redex and distributive-redex positions differ at {', '.join(extra)}"
    return labels, None


@deep
def check_redex_coincidence(
    config: GenConfig = DEFAULT_CONFIG, n: int = 10_000, terms: Optional[Iterable[Term]] = None
) -> CheckReport:
    return _run("redex-coincidence", _cases(config, n, terms), redex_coincidence_case)


# -- rule soundness ---------------------------------------------------------


def common_reduct_mismatch(term: Term, path) -> tuple[Rule, Optional[str]]:
    """Check the redex at path against the common reduct of its distributive rule."""
    path = tuple(path)
    reduct, rule = dist_step(term, path)
    contracted = beta_step(term, path)
    if rule in (Rule.I, Rule.C):
        joined = reduct
    elif rule is Rule.L:
        joined = beta_step(reduct, path + (Edge.BODY,))
    else:
        joined = beta_step(beta_step(reduct, path + (Edge.FUN,)), path + (Edge.ARG,))
    if joined != contracted:
        return rule, (
            f"rule {rule.value} at {_fmt(path)}: β-contractum {print_term(contracted)} "
            f"but distributive side joins at {print_term(joined)}"
        )
    return rule, None


def rule_soundness_case(term: Term, spot_fuel: int = 200) -> CaseResult:
    labels = []
    positions = redex_positions(term)
    for path in positions:
        rule, problem = common_reduct_mismatch(term, path)
        labels.append("rule-" + rule.value)
        if problem:
            return labels, problem
    if not positions:
        return ["redex-free"], None
    # one convertibility spot check per term, on its outermost redex
    verdict = beta_convertible(term, dist_step(term, positions[0])[0], spot_fuel)
    labels.append("convertible-" + verdict.value)
    if verdict is Verdict.NO:
        return labels, f"step at {_fmt(positions[0])}: sides have different normal forms"
    return labels, None


@deep
def check_rule_soundness(
    config: GenConfig = DEFAULT_CONFIG,
    n: int = 10_000,
    terms: Optional[Iterable[Term]] = None,
    spot_fuel: int = 200,
) -> CheckReport:
    report = _run("rule-soundness", _cases(config, n, terms), lambda t: rule_soundness_case(t, spot_fuel))
    report.stats["spot_fuel"] = spot_fuel
    return report


# -- projection -------------------------------------------------------------


def projection_case(m: Term) -> CaseResult:
    """Take the inner spine step M -> N and check how it projects under development and explicification."""
    path = inner_spine_redex(m)
    if path is None:
        return ["no-spine-redex"], "term has no spine redex"
    n, rule = dist_step(m, path)
    labels = ["rule-" + rule.value]
    if is_destructive(m, path):
        return labels, f"inner spine step at {_fmt(path)} is destructive"
    md, nd = full_development(m), full_development(n)
    spine = find_spine_step(md, nd)
    single_x = match_single_x_step(explicify(m), explicify(n)) if md == nd else None
    if spine is not None and single_x is not None:
        return labels + ["both"], None
    if spine is not None:
        return labels + ["spine-beta"], None
    if single_x is not None:
        return labels + ["x-step"], None
    if md == nd:
        mx, nx = x_normalize(explicify(m)), x_normalize(explicify(n))
        return labels + ["x-multi-step"], (
            f"rule {rule.value} at {_fmt(path)}: developments coincide ({print_term(md)}) "
            f"but no single x-step links the explicifications (x-normal forms agree: {mx[0] == nx[0]})"
        )
    return labels + ["unmatched"], (
        f"rule {rule.value} at {_fmt(path)}: {print_term(md)} does not reach "
        f"{print_term(nd)} by one spine β-step"
    )


def inner_spine_cases(
    config: GenConfig, n: int, steps_per_term: int = 4
) -> Iterator[tuple[int, Term]]:
    """n terms from which an inner spine step is taken, walking each generated term's trace."""
    produced, index = 0, 0
    while produced < n:
        term = gen_term(config, index)
        for _ in range(steps_per_term):
            path = inner_spine_redex(term)
            if path is None or produced >= n:
                break
            yield index, term
            produced += 1
            term = dist_step(term, path)[0]
        index += 1


@deep
def check_projection(
    config: GenConfig = DEFAULT_CONFIG,
    n: int = 10_000,
    terms: Optional[Iterable[Term]] = None,
    steps_per_term: int = 4,
) -> CheckReport:
    cases = enumerate(terms) if terms is not None else inner_spine_cases(config, n, steps_per_term)
    report = _run("projection", cases, projection_case)
    report.stats["steps_per_term"] = steps_per_term
    return report


# -- normalization ----------------------------------------------------------


# Some closed terms grow exponentially under normal order long before the
# step fuel runs out; such samples are treated like fuel exhaustion.
ORACLE_SIZE_BUDGET = 1_000_000


def _bounded_normal_order(term: Term, fuel: int, size_budget: int) -> Optional[NormalizeOutcome]:
    """normal_order_normalize, or None once an intermediate term exceeds size_budget nodes."""
    steps = 0
    while True:
        found = leftmost_outermost_step(term)
        if found is None:
            return NormalizeOutcome(Status.NORMAL_FORM, term, steps)
        if steps >= fuel:
            return NormalizeOutcome(Status.FUEL_EXHAUSTED, term, steps)
        term = found[1]
        steps += 1
        if term.size > size_budget:
            return None


@deep
def check_normalization(
    config: GenConfig = DEFAULT_CONFIG,
    n: int = 1_000,
    beta_fuel: int = DEFAULT_BETA_FUEL,
    dist_fuel: Optional[int] = None,
    terms: Optional[Iterable[Term]] = None,
    size_budget: int = ORACLE_SIZE_BUDGET,
) -> CheckReport:
    """Inner spine reaches the normal-order normal form of every normalizing sample.

    Samples whose normal-order run exceeds beta_fuel steps, or grows past
    size_budget nodes on the way, are skipped, not failed.
    """
    if dist_fuel is None:
        dist_fuel = 20 * beta_fuel
    report = CheckReport("normalization")
    skipped = oversized = destructive = max_steps = total_steps = 0
    for index, term in _cases(config, n, terms):
        oracle = _bounded_normal_order(term, beta_fuel, size_budget)
        if oracle is None:
            oversized += 1
            continue
        if oracle.status is not Status.NORMAL_FORM:
            skipped += 1
            continue
        trace = reduce(term, INNER_SPINE, dist_fuel)
        report.cases_run += 1
        destructive += trace.destructive_steps
        max_steps = max(max_steps, len(trace.steps))
        total_steps += len(trace.steps)
        if trace.status is not Status.NORMAL_FORM:
            problem = f"inner-spine exhausted {dist_fuel} steps; normal order needed {oracle.steps_used}"
        elif trace.final != oracle.result:
            problem = f"inner-spine normal form {print_term(trace.final)} != {print_term(oracle.result)}"
        elif trace.destructive_steps:
            problem = f"{trace.destructive_steps} destructive inner-spine steps"
        else:
            report.passes += 1
            continue
        report.failures.append(Failure(index, print_term(term), problem))
    report.branch_counts = {"qualifying": report.cases_run, "skipped": skipped, "oversized": oversized}
    report.stats.update(
        beta_fuel=beta_fuel,
        size_budget=size_budget,
        dist_fuel=dist_fuel,
        destructive_steps=destructive,
        max_inner_spine_steps=max_steps,
        total_inner_spine_steps=total_steps,
    )
    return report


# -- development vs. x-normal form ------------------------------------------


def dev_equals_xnf_case(term: Term) -> tuple[CaseResult, int]:
    explicit = explicify(term)
    redexes = len(redex_positions(term))
    if sub_count(explicit) != redexes:
        return (["bad-explicify"], f"{sub_count(explicit)} closures for {redexes} redexes"), 0
    try:
        xnf, steps = x_normalize(explicit)
    except XFuelExhausted as exc:
        return (["x-fuel-exhausted"], str(exc)), 0
    dev = full_development(term)
    if xnf != dev:
        return (["mismatch"], f"x-normal form {print_term(xnf)} != development {print_term(dev)}"), steps
    return (["redex-free" if not redexes else "with-redexes"], None), steps


@deep
def check_dev_equals_xnf(
    config: GenConfig = DEFAULT_CONFIG, n: int = 10_000, terms: Optional[Iterable[Term]] = None
) -> CheckReport:
    x_steps = []

    def case(term: Term) -> CaseResult:
        result, steps = dev_equals_xnf_case(term)
        x_steps.append(steps)
        return result

    report = _run("dev-equals-xnf", _cases(config, n, terms), case)
    report.stats.update(max_x_steps=max(x_steps, default=0), total_x_steps=sum(x_steps))
    return report


# -- divergence witness -----------------------------------------------------


def enumerate_terms(size: int, depth: int = 0, pool: tuple[str, ...] = ()) -> Iterator[Term]:
    """Every term with exactly ``size`` nodes over ``depth`` binders in scope."""
    if size == 1:
        for k in range(depth):
            yield BoundVar(k)
        for name in pool:
            yield FreeVar(name)
        return
    for body in enumerate_terms(size - 1, depth + 1, pool):
        yield Lam(body)
    for k in range(1, size - 1):
        for fun in enumerate_terms(k, depth, pool):
            for arg in enumerate_terms(size - 1 - k, depth, pool):
                yield App(fun, arg)


def has_destructive_shape(term: Term) -> bool:
    return any(is_redex(t) and is_redex(t.fun.body) for _, t in iter_positions(term))


def dag_size(term: Term) -> int:
    """Distinct nodes in the shared representation of term."""
    seen: set[int] = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if id(t) in seen:
            continue
        seen.add(id(t))
        if isinstance(t, App):
            stack += [t.fun, t.arg]
        elif isinstance(t, Lam):
            stack.append(t.body)
    return len(seen)


class Inconclusive(Exception):
    """A run outgrew the node budget before its outcome was known."""


def bounded_reduce(term: Term, strategy: str, fuel: int, node_budget: int) -> Trace:
    """Like reduce(), but gives up (raises Inconclusive) once the shared
    representation exceeds node_budget distinct nodes."""
    trace = Trace(term, strategy)
    for step in iter_steps(term, strategy):
        if len(trace.steps) >= fuel:
            return trace
        trace.steps.append(step)
        if step.result.size > node_budget and dag_size(step.result) > node_budget:
            raise Inconclusive(strategy)
    trace.status = Status.NORMAL_FORM
    return trace


@dataclass
class WitnessSearch:
    witness: Optional[tuple[Term, Trace, Trace]]
    candidates: int
    normalizing: int
    inconclusive: list[Term]
    exhausted_budget: bool
    seconds: float

    def to_dict(self) -> dict:
        out: dict = {
            "found": self.witness is not None,
            "candidates": self.candidates,
            "normalizing": self.normalizing,
            "inconclusive": [print_term(t) for t in self.inconclusive],
            "time_budget_exhausted": self.exhausted_budget,
        }
        if self.witness is not None:
            term, naive, inner = self.witness
            out["witness"] = print_term(term)
            out[LEFTMOST_OUTERMOST_DIST] = {"status": naive.status.value, "steps": len(naive.steps)}
            out[INNER_SPINE] = {
                "status": inner.status.value,
                "steps": len(inner.steps),
                "rules": inner.rules(),
                "result": print_term(inner.final),
            }
        return out


@deep
def search_divergence_witness_report(
    max_size: int,
    fuel: int,
    pool: tuple[str, ...] = (),
    time_budget: Optional[float] = None,
    node_budget: int = 200_000,
) -> WitnessSearch:
    """Smallest-first search for a normalizing term on which leftmost-outermost
    distribution runs out of fuel while inner-spine normalizes.

    Within each size, terms containing a destructive redex shape are tried first.
    Runs whose shared representation outgrows node_budget cannot be decided here
    and are reported as inconclusive.
    """
    start = time.monotonic()
    candidates = normalizing = 0
    inconclusive: list[Term] = []

    def result(witness, out_of_time=False) -> WitnessSearch:
        return WitnessSearch(witness, candidates, normalizing, inconclusive, out_of_time, time.monotonic() - start)

    for size in range(1, max_size + 1):
        for wanted in (True, False):
            for term in enumerate_terms(size, 0, pool):
                if term.normal or has_destructive_shape(term) is not wanted:
                    continue
                if time_budget is not None and time.monotonic() - start > time_budget:
                    return result(None, out_of_time=True)
                candidates += 1
                try:
                    oracle = bounded_reduce(term, NORMAL_ORDER_BETA, fuel, node_budget)
                    if oracle.status is not Status.NORMAL_FORM:
                        continue
                    normalizing += 1
                    naive = bounded_reduce(term, LEFTMOST_OUTERMOST_DIST, fuel, node_budget)
                    if naive.status is not Status.FUEL_EXHAUSTED:
                        continue
                    inner = bounded_reduce(term, INNER_SPINE, fuel, node_budget)
                except Inconclusive:
                    inconclusive.append(term)
                    continue
                if inner.status is Status.NORMAL_FORM:
                    return result((term, naive, inner))
    return result(None)


def search_divergence_witness(
    max_size: int, fuel: int, pool: tuple[str, ...] = (), time_budget: Optional[float] = None
) -> Optional[tuple[Term, Trace, Trace]]:
    """Returns (term, leftmost-outermost-dist trace, inner-spine trace) or None."""
    return search_divergence_witness_report(max_size, fuel, pool, time_budget).witness


CHECKS = {
    "redex-coincidence": check_redex_coincidence,
    "rule-soundness": check_rule_soundness,
    "projection": check_projection,
    "normalization": check_normalization,
    "dev-equals-xnf": check_dev_equals_xnf,
}
