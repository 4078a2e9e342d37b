import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from microlambda.terms import App, BoundVar, FreeVar, Lam

settings.register_profile(
    "default", max_examples=200, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FREE_NAMES = ("a", "b", "c", "x", "y1")


@st.composite
def terms(draw, max_size=25, depth=0, closed=False):
    """Well-scoped terms of at most max_size nodes."""
    least = 2 if closed and depth == 0 else 1
    budget = draw(st.integers(least, max(least, max_size)))
    return draw(_sized(budget, depth, closed))


def _sized(n, depth, closed):
    pool = () if closed else FREE_NAMES
    variables = [BoundVar(i) for i in range(depth)] + [FreeVar(x) for x in pool]
    options = []
    if variables:
        options.append(st.sampled_from(variables))
    if n >= 2:
        options.append(st.deferred(lambda: _sized(n - 1, depth + 1, closed)).map(Lam))
    if n >= 3 and variables:
        options.append(
            st.integers(1, n - 2).flatmap(
                lambda k: st.tuples(_sized(k, depth, closed), _sized(n - 1 - k, depth, closed))
            ).map(lambda p: App(*p))
        )
    least = 1 if variables else 2
    if n >= 3 + least:
        # a redex, so reductions get exercised
        options.append(
            st.integers(2, n - 1 - least).flatmap(
                lambda k: st.tuples(_sized(k - 1, depth + 1, closed), _sized(n - 1 - k, depth, closed))
            ).map(lambda p: App(Lam(p[0]), p[1]))
        )
    return st.one_of(options)


@pytest.fixture
def omega():
    from microlambda import parse

    return parse(r"(\x. x x) (\x. x x)")
