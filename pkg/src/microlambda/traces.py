"""JSON form of reduction traces, and replaying them."""

from __future__ import annotations

from typing import Iterable, Optional

from .beta import beta_step, full_development
from .distributive import Rule, Trace, dist_step
from .lambdax import XRule, XTerm, x_step_tagged
from .syntax import parse, parse_x, print_term
from .terms import Edge, Term

DIST_RULES = {r.value for r in (Rule.I, Rule.C, Rule.L, Rule.A)}
X_RULES = {r.value for r in XRule}

TRACE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["input", "strategy", "status", "steps", "result"],
    "properties": {
        "input": {"type": "string"},
        "strategy": {"type": "string"},
        "status": {"enum": ["normal-form", "fuel-exhausted"]},
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "path", "rule"],
                "properties": {
                    "index": {"type": "integer", "minimum": 0},
                    "path": {
                        "type": "array",
                        "items": {"enum": ["Fun", "Arg", "Body", "SubBody", "SubArg"]},
                    },
                    "rule": {"enum": sorted(DIST_RULES | X_RULES | {"beta", "dev"})},
                    "term": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "result": {"type": "string"},
    },
    "additionalProperties": False,
}


def trace_to_json(trace: Trace, with_terms: bool = True) -> dict:
    steps = []
    for i, step in enumerate(trace.steps):
        entry = {"index": i, "path": [e.value for e in step.path], "rule": step.rule.value}
        if with_terms:
            entry["term"] = print_term(step.result)
        steps.append(entry)
    return {
        "input": print_term(trace.initial),
        "strategy": trace.strategy,
        "status": trace.status.value,
        "steps": steps,
        "result": print_term(trace.final),
    }


def x_trace_to_json(
    initial: XTerm, steps: Iterable[tuple[tuple[Edge, ...], XRule, XTerm]], with_terms: bool = True
) -> dict:
    out = []
    result = initial
    for i, (path, rule, result) in enumerate(steps):
        entry = {"index": i, "path": [e.value for e in path], "rule": rule.value}
        if with_terms:
            entry["term"] = print_term(result)
        out.append(entry)
    return {
        "input": print_term(initial),
        "strategy": "x-leftmost-innermost",
        "status": "normal-form",
        "steps": out,
        "result": print_term(result),
    }


class ReplayError(ValueError):
    pass


def replay(doc: dict) -> Optional[Term]:
    """Re-apply every recorded step and compare with the recorded terms.

    Returns the final term; raises ReplayError on the first disagreement.
    """
    x_mode = any(s["rule"] in X_RULES for s in doc["steps"])
    term = parse_x(doc["input"]) if x_mode else parse(doc["input"])
    for step in doc["steps"]:
        path = tuple(Edge(e) for e in step["path"])
        rule = step["rule"]
        if rule in DIST_RULES:
            term, applied = dist_step(term, path)
            applied = applied.value
        elif rule in X_RULES:
            term, applied = x_step_tagged(term, path)
            applied = applied.value
        elif rule == "beta":
            term, applied = beta_step(term, path), "beta"
        elif rule == "dev":
            term, applied = full_development(term), "dev"
        else:
            raise ReplayError(f"step {step['index']}: unknown rule {rule!r}")
        if applied != rule:
            raise ReplayError(f"step {step['index']}: recorded rule {rule}, replay applied {applied}")
        if "term" in step:
            recorded = parse_x(step["term"]) if x_mode else parse(step["term"])
            if recorded != term:
                raise ReplayError(f"step {step['index']}: recorded {step['term']}, replay gives {print_term(term)}")
    recorded = parse_x(doc["result"]) if x_mode else parse(doc["result"])
    if recorded != term:
        raise ReplayError(f"final term differs: recorded {doc['result']}, replay gives {print_term(term)}")
    return term
