from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orthokit.ring import Excision, Poly, Rationals, Zmod, ideal

settings.register_profile(
    "orthokit",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("orthokit")

Z9 = Zmod(9)
F3 = Zmod(3)
QQ = Rationals()
PX = Poly(F3)
EXC = Excision(Z9, ideal(Z9, [3]))

RINGS = {"zmod9": Z9, "Q": QQ, "poly": PX, "exc": EXC}


def elements(ctx):
    """Hypothesis strategy producing payloads of ``ctx``."""
    if isinstance(ctx, Zmod):
        return st.integers(0, ctx.n - 1)
    if isinstance(ctx, Rationals):
        return st.fractions(min_value=-50, max_value=50, max_denominator=12).map(Fraction)
    if isinstance(ctx, Poly):
        return st.lists(elements(ctx.base), max_size=4).map(ctx._trim)
    if isinstance(ctx, Excision):
        ideal_elems = sorted(ctx.ideal.elements)
        return st.tuples(elements(ctx.base), st.sampled_from(ideal_elems))
    raise TypeError(ctx)


@pytest.fixture(params=sorted(RINGS))
def ring(request):
    return RINGS[request.param]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
