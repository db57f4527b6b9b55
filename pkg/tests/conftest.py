import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from surfnorm.errors import Disconnected
from surfnorm.fileformat import corpus_names, load_corpus
from surfnorm.surface import SurfaceComplex

settings.register_profile("ci", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

CORPUS = corpus_names()


@pytest.fixture(scope="session")
def corpus():
    return {name: load_corpus(name) for name in CORPUS}


def build(*words, **weights):
    return SurfaceComplex.build(list(words), {k: Fraction(v) for k, v in weights.items()})


@st.composite
def surfaces(draw, max_labels=4, max_faces=3, orientable=None):
    """Random connected gluings of a few polygons (each label used twice)."""
    n = draw(st.integers(1, max_labels))
    toks = []
    for k in range(n):
        s1 = draw(st.sampled_from([1, -1]))
        s2 = draw(st.sampled_from([1, -1]))
        toks += [(f"e{k}", s1), (f"e{k}", s2)]
    toks = draw(st.permutations(toks))
    f = draw(st.integers(1, min(max_faces, len(toks))))
    cuts = sorted(draw(st.lists(st.integers(1, len(toks) - 1), min_size=f - 1, max_size=f - 1,
                                unique=True))) if f > 1 else []
    words, prev = [], 0
    for c in cuts + [len(toks)]:
        words.append(toks[prev:c])
        prev = c
    weights = {f"e{k}": draw(st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=6))
               for k in range(n)}
    try:
        S = SurfaceComplex.build(words, weights)
    except Disconnected:
        from hypothesis import assume
        assume(False)
    if orientable is not None:
        from hypothesis import assume
        assume(S.is_orientable == orientable)
    return S


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
