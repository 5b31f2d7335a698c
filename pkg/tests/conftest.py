import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from surgery_forms.matrix import RingMatrix
from surgery_forms.ring import LaurentPoly

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("default")


def polys(k: int, max_terms: int = 4, max_exp: int = 2, max_coeff: int = 3):
    exps = st.tuples(*[st.integers(-max_exp, max_exp)] * k)
    coeff = st.integers(-max_coeff, max_coeff)
    return st.dictionaries(exps, coeff, max_size=max_terms).map(lambda d: LaurentPoly(k, d))


def matrices(k: int, rows: int, cols: int, **kw):
    return st.lists(st.lists(polys(k, **kw), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(lambda r: RingMatrix(k, r))


def z(i: int, k: int, p: int = 1) -> LaurentPoly:
    return LaurentPoly.var(i, k, p)


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when != "call":
                continue
            lines += [v for k, v in getattr(rep, "user_properties", []) if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
