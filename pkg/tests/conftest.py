from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from doublelie.core_linear import Matrix

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_ints = st.integers(min_value=-3, max_value=3)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def matrices(draw, rows, cols=None, elements=small_ints):
    cols = rows if cols is None else cols
    return Matrix(rows, cols, [Fraction(x) for x in draw(st.lists(elements, min_size=rows * cols,
                                                                  max_size=rows * cols))])


# The Arthamonov table written out independently of the catalog: 0-based
# generators, values as {(i, k): c} for a_i (x) a_k.
ARTHAMONOV = {
    (0, 1): {(0, 1): -1},
    (1, 0): {(0, 1): 1},
    (1, 2): {(2, 1): 1},
    (2, 0): {(0, 2): 1, (2, 0): -1},
    (2, 1): {(2, 1): -1},
}


# CRITERION lines from the acceptance suite, repeated in the terminal summary
# so they show up without -s.
CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(f"CRITERION {k}: {CRITERIA[k]}")
