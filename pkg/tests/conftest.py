import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from persist.polycore import Polynomial

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

coeffs = st.integers(-6, 6) | st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def polynomials(draw, nvars=3, max_degree=3, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_degree)) for _ in range(nvars))
        if sum(e) <= max_degree:
            terms[e] = draw(coeffs)
    return Polynomial(nvars, terms)


@st.composite
def forms(draw, nvars=3, degree=3, max_terms=5):
    """Nonzero homogeneous polynomials."""
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        parts = sorted(draw(st.integers(0, degree)) for _ in range(nvars - 1))
        bounds = [0] + parts + [degree]
        e = tuple(bounds[i + 1] - bounds[i] for i in range(nvars))
        terms[e] = draw(coeffs.filter(bool))
    p = Polynomial(nvars, terms)
    return p if p else Polynomial.var(nvars, 0) ** degree


def matrices(d, lo=-3, hi=3):
    return st.lists(st.lists(st.integers(lo, hi), min_size=d, max_size=d), min_size=d, max_size=d)


def frac(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.result_line(k))
