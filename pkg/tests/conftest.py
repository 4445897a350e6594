from hypothesis import settings, strategies as st

from lochodge.monomial import MonomialIdeal
from lochodge.report import corpus

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE_SEED = 2024
# n = 3 only has 7 distinct squarefree ideals built from 2-subsets
ACCEPTANCE_COUNTS = {3: 7, 4: 10, 5: 11, 6: 11, 7: 11}


def acceptance_corpus() -> list[MonomialIdeal]:
    return [I for n, c in ACCEPTANCE_COUNTS.items() for I in corpus(ACCEPTANCE_SEED, c, n)]


def ideal(*gens, reduced=False) -> MonomialIdeal:
    return MonomialIdeal.from_gens(gens, reduced=reduced)


NODE = ideal((1, 1))
SMOOTH2 = ideal((1, 0), (0, 1))
PLANES = ideal((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))
TRIANGLE = ideal((1, 1, 0), (1, 0, 1), (0, 1, 1))
FAT_POINT = ideal((2, 0), (0, 1))


@st.composite
def monomial_ideals(draw, n_max=4, gens_max=4, exp_max=3, squarefree=False):
    n = draw(st.integers(1, n_max))
    top = 1 if squarefree else exp_max
    mono = st.tuples(*[st.integers(0, top)] * n).map(lambda m: m if any(m) else (1,) + m[1:])
    gens = draw(st.lists(mono, min_size=1, max_size=gens_max))
    return MonomialIdeal.from_gens(gens, n=n)


@st.composite
def degrees(draw, n, lo=-3, hi=2):
    return tuple(draw(st.integers(lo, hi)) for _ in range(n))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
