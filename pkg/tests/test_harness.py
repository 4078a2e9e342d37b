import json

import pytest

from microlambda.beta import Status, full_development
from microlambda.distributive import INNER_SPINE, LEFTMOST_OUTERMOST_DIST, dist_step, inner_spine_redex, reduce
from microlambda.harness import (
    CHECKS,
    GenConfig,
    check_dev_equals_xnf,
    check_normalization,
    check_projection,
    check_redex_coincidence,
    check_rule_soundness,
    enumerate_terms,
    gen_term,
    has_destructive_shape,
    projection_case,
    rule_soundness_case,
    search_divergence_witness,
    search_divergence_witness_report,
)
from microlambda.syntax import parse
from microlambda.terms import BoundVar, FreeVar, Lam, is_well_formed, redex_positions


# -- generation -------------------------------------------------------------


def test_smallest_closed_term():
    config = GenConfig(max_size=2, closed_only=True)
    assert {gen_term(config, i) for i in range(20)} == {Lam(BoundVar(0))}


def test_single_free_variable():
    assert gen_term(GenConfig(max_size=1, free_name_pool=("a",)), 0) == FreeVar("a")


def test_generation_is_deterministic():
    config = GenConfig(seed=12345)
    assert [gen_term(config, i) for i in range(50)] == [gen_term(config, i) for i in range(50)]
    assert gen_term(config, 3) != gen_term(GenConfig(seed=12346), 3) or gen_term(config, 4) != gen_term(
        GenConfig(seed=12346), 4
    )


@pytest.mark.parametrize("config", [GenConfig(), GenConfig(max_size=12, closed_only=True), GenConfig(seed=2**64 - 1)])
def test_generated_terms_respect_config(config):
    for i in range(500):
        t = gen_term(config, i)
        assert 1 <= t.size <= config.max_size
        assert is_well_formed(t)
        if config.closed_only:
            assert not any(isinstance(s, FreeVar) for s in _nodes(t))


def _nodes(t):
    stack = [t]
    while stack:
        t = stack.pop()
        yield t
        stack.extend(getattr(t, f) for f in getattr(t, "_fields", ()) if f in ("fun", "arg", "body"))


def test_enough_redexes():
    sized = [t for t in (gen_term(GenConfig(), i) for i in range(2000)) if t.size >= 5]
    with_redex = sum(bool(redex_positions(t)) for t in sized)
    assert with_redex >= 0.3 * len(sized)


@pytest.mark.parametrize("kwargs", [dict(max_size=0), dict(seed=-1), dict(seed=2**64), dict(max_size=1, closed_only=True)])
def test_invalid_configs(kwargs):
    with pytest.raises(ValueError):
        GenConfig(**kwargs)


# -- individual checks -------------------------------------------------------


def test_redex_coincidence_examples():
    for text in [r"(\x.x) a", r"\x.x"]:
        report = check_redex_coincidence(n=1, terms=[parse(text)])
        assert (report.cases_run, report.passes) == (1, 1)


@pytest.mark.parametrize(
    "text, rule", [(r"(\x.x) a", "rule-i"), (r"(\x.\y.x y) a", "rule-l"), (r"(\x.x x) a", "rule-a"), (r"(\x.b) a", "rule-c")]
)
def test_rule_soundness_cases(text, rule):
    labels, problem = rule_soundness_case(parse(text))
    assert problem is None
    assert rule in labels


def test_projection_through_a_spine_step():
    m = parse(r"((\x.\y.y x) q) r")
    n = dist_step(m, inner_spine_redex(m))[0]
    assert full_development(m) == parse(r"(\y. y q) r")
    assert full_development(n) == parse("r q")
    labels, problem = projection_case(m)
    assert problem is None and "spine-beta" in labels


def test_projection_through_an_x_step():
    labels, problem = projection_case(parse(r"(\x.\y.x) a"))
    assert problem is None and "x-step" in labels and "rule-l" in labels


def test_projection_of_omega(omega):
    # omega develops to itself and also β-steps to itself at the root
    labels, problem = projection_case(omega)
    assert problem is None and "both" in labels and "rule-a" in labels


def test_projection_when_developments_coincide_without_a_single_x_step(omega):
    # both developments are omega; a spine β-step links them, no single x-step does
    m = parse(r"((\z.z) (\x.x x)) (\x.x x)")
    labels, problem = projection_case(m)
    n = dist_step(m, inner_spine_redex(m))[0]
    assert full_development(m) == full_development(n) == omega
    assert problem is None
    assert "spine-beta" in labels


def test_projection_needs_a_spine_redex():
    labels, problem = projection_case(parse("a b"))
    assert problem is not None


def test_normalization_examples():
    report = check_normalization(n=2, terms=[parse(r"(\x.\y.x) a b"), parse(r"(\x.x) z")])
    assert report.ok and report.cases_run == 2


def test_normalization_skips_divergent_samples(omega):
    report = check_normalization(n=1, terms=[omega])
    assert report.cases_run == 0 and report.branch_counts["skipped"] == 1


def test_dev_equals_xnf_examples():
    report = check_dev_equals_xnf(n=2, terms=[parse("x y"), parse(r"(\x.x)((\y.y) z)")])
    assert report.ok and report.branch_counts == {"redex-free": 1, "with-redexes": 1}


def test_reports_are_deterministic():
    config = GenConfig(seed=99, max_size=30)
    for check in CHECKS.values():
        first = json.dumps(check(config, 150).to_dict(), sort_keys=True)
        second = json.dumps(check(config, 150).to_dict(), sort_keys=True)
        assert first == second


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_suites_pass_on_closed_terms(name):
    report = CHECKS[name](GenConfig(closed_only=True, max_size=30, seed=5), 300)
    assert report.ok, report.failures[:3]
    assert report.passes + len(report.failures) == report.cases_run


def test_projection_exercises_both_branches():
    report = check_projection(GenConfig(), 2000)
    assert report.ok
    assert report.branch_counts.get("spine-beta", 0) + report.branch_counts.get("both", 0) >= 1
    assert report.branch_counts.get("x-step", 0) + report.branch_counts.get("both", 0) >= 1


def test_failure_diagnostics_are_replayable():
    # an artificial failure: feed a term without a spine redex to the projection check
    report = check_projection(n=1, terms=[parse(r"a ((\x.x) b)")])
    assert not report.ok
    assert parse(report.failures[0].term) == parse(r"a ((\x.x) b)")


# -- witness search ------------------------------------------------------------


def test_enumeration_counts_closed_terms():
    # none of 1 node; then \0 | \\0, \\1 | \\\0, \\\1, \\\2, \(0 0)
    assert [sum(1 for _ in enumerate_terms(n)) for n in range(1, 5)] == [0, 1, 2, 4]


def test_destructive_shape():
    assert has_destructive_shape(parse(r"a ((\x. (\y. y) x) b)"))
    assert not has_destructive_shape(parse(r"(\x. x x) b"))


def test_no_witness_among_tiny_terms():
    assert search_divergence_witness(3, 200) is None


def test_witness_contract():
    found = search_divergence_witness(9, 500)
    assert found is not None
    term, naive, inner = found
    assert naive.strategy == LEFTMOST_OUTERMOST_DIST and naive.status is Status.FUEL_EXHAUSTED
    assert inner.strategy == INNER_SPINE and inner.status is Status.NORMAL_FORM
    assert reduce(term, INNER_SPINE, 500).final == inner.final
    assert has_destructive_shape(term)


def test_witness_search_respects_time_budget():
    report = search_divergence_witness_report(14, 2000, time_budget=0.0)
    assert report.witness is None and report.exhausted_budget
