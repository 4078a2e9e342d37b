import pytest
from hypothesis import given

from conftest import terms
from oracles import naive_redex_paths
from microlambda.syntax import ParseError, parse, print_term
from microlambda.terms import (
    App,
    Arg,
    Body,
    BoundVar,
    FreeVar,
    Fun,
    IndexDisciplineError,
    Lam,
    PathError,
    alpha_eq,
    is_well_formed,
    iter_positions,
    redex_positions,
    replace_at,
    shift,
    substitute,
    subterm_at,
    swap_top2,
)

a, b, c = FreeVar("a"), FreeVar("b"), FreeVar("c")


# -- parsing ----------------------------------------------------------------


def test_parse_identity():
    assert parse(r"\x. x") == Lam(BoundVar(0))


def test_application_is_left_associative():
    assert parse(r"(\x. \y. x) a b") == App(App(Lam(Lam(BoundVar(1))), a), b)


def test_parse_repeated_bound_variable():
    assert parse(r"\x. x y x") == Lam(App(App(BoundVar(0), FreeVar("y")), BoundVar(0)))


def test_parse_accepts_unicode_lambda_and_binder_lists():
    assert parse("λx y. x") == parse(r"\x. \y. x")


def test_shadowing_picks_the_innermost_binder():
    assert parse(r"\x. \x. x") == Lam(Lam(BoundVar(0)))


def test_lambda_extends_to_the_right():
    assert parse(r"f \x. x y") == App(FreeVar("f"), Lam(App(BoundVar(0), FreeVar("y"))))


def test_identifier_characters():
    assert parse("x1_'") == FreeVar("x1_'")


@pytest.mark.parametrize("text", ["", "   ", r"\x.", "(a", "a)", r"\. a", "1a", "a b ]"])
def test_rejects_malformed_input(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse("a\n  (b")
    assert (info.value.line, info.value.column) == (2, 5)


def test_closures_only_in_lambda_x_syntax():
    with pytest.raises(ParseError):
        parse("x[x := a]")


# -- printing ---------------------------------------------------------------


def test_print_examples():
    assert print_term(Lam(BoundVar(0))) == r"\x. x"
    assert print_term(App(a, b)) == "a b"
    assert print_term(Lam(Lam(BoundVar(1)))) == r"\x. \y. x"


def test_printer_avoids_free_names():
    assert print_term(parse(r"\q. q x")) == r"\y. y x"


def test_print_parenthesizes_arguments():
    assert print_term(parse("a (b c)")) == "a (b c)"
    assert print_term(parse(r"(\x. x) (\y. y)")) == r"(\x. x) (\x. x)"


@given(terms())
def test_print_parse_round_trip(t):
    assert alpha_eq(parse(print_term(t)), t)


# -- α-equivalence ------------------------------------------------------------


def test_alpha_eq_examples():
    assert alpha_eq(parse(r"\x.x"), parse(r"\y.y"))
    assert not alpha_eq(parse(r"\x.\y.x"), parse(r"\x.\y.y"))
    assert alpha_eq(parse(r"(\x.x) z"), parse(r"(\w.w) z"))


def test_alpha_eq_distinguishes_free_names():
    assert not alpha_eq(parse(r"\x. a"), parse(r"\x. b"))


# -- index arithmetic ---------------------------------------------------------


def test_shift_respects_cutoff():
    t = Lam(App(BoundVar(0), BoundVar(1)))
    assert shift(t, 2) == Lam(App(BoundVar(0), BoundVar(3)))
    assert shift(BoundVar(0), 1, cutoff=1) == BoundVar(0)


def test_swap_top2():
    assert swap_top2(App(BoundVar(0), App(BoundVar(1), BoundVar(2)))) == App(
        BoundVar(1), App(BoundVar(0), BoundVar(2))
    )
    assert swap_top2(Lam(BoundVar(1))) == Lam(BoundVar(2))


def test_substitute_hits_index_zero():
    n = parse(r"\q. q q")
    assert substitute(BoundVar(0), n) == n


def test_substitute_never_captures():
    # body of \x. \y. x with y (free) plugged in for x
    body = parse(r"\x. \y. x").body
    out = substitute(body, FreeVar("y"))
    assert out == Lam(FreeVar("y"))
    assert alpha_eq(out, parse(r"\z. y"))
    assert print_term(out) == r"\x. y"


def test_substitute_duplicates_argument():
    out = substitute(App(BoundVar(0), BoundVar(0)), Lam(BoundVar(0)))
    assert out == App(Lam(BoundVar(0)), Lam(BoundVar(0)))


def test_substitute_lowers_outer_indices():
    # inside two binders: index 1 refers past the substituted one
    assert substitute(App(BoundVar(0), BoundVar(1)), a) == App(a, BoundVar(0))


def test_substitute_shifts_open_argument_under_binders():
    assert substitute(Lam(BoundVar(1)), BoundVar(0)) == Lam(BoundVar(1))


@given(terms(depth=1), terms())
def test_substitute_keeps_well_formed(body, arg):
    assert is_well_formed(substitute(Lam(body).body, arg))


# -- positions ----------------------------------------------------------------


def test_redex_positions_examples():
    assert redex_positions(parse(r"(\x.x) ((\y.y) z)")) == [(), (Arg,)]
    assert redex_positions(parse(r"\x.x")) == []
    assert redex_positions(parse(r"x ((\y.y) z)")) == [(Arg,)]


@given(terms())
def test_redex_positions_match_naive_walk(t):
    assert redex_positions(t) == naive_redex_paths(t)


def test_replace_at_examples():
    assert replace_at(App(a, b), (Arg,), c) == App(a, c)
    assert replace_at(App(a, b), (), c) == c
    assert replace_at(Lam(BoundVar(0)), (Body,), FreeVar("z")) == Lam(FreeVar("z"))


def test_replace_at_rejects_bad_paths():
    with pytest.raises(PathError):
        replace_at(App(a, b), (Body,), c)
    with pytest.raises(PathError):
        subterm_at(Lam(a), (Fun,))


def test_replace_at_checks_index_discipline():
    with pytest.raises(IndexDisciplineError):
        replace_at(App(a, b), (Arg,), BoundVar(0))
    assert replace_at(Lam(a), (Body,), BoundVar(0)) == Lam(BoundVar(0))


@given(terms())
def test_replace_with_own_subterm_is_identity(t):
    for path, sub in iter_positions(t):
        assert alpha_eq(replace_at(t, path, subterm_at(t, path)), t)


def test_nodes_are_immutable():
    t = Lam(BoundVar(0))
    with pytest.raises(AttributeError):
        t.body = a
