from fractions import Fraction

import numpy as np
import pytest

from superyang.grading import make_profile
from superyang.twisted import build_S
from superyang.yangian import defining_rep, eval_T, zero_rep

PROFILES = [(1, 2), (2, 2), (3, 2), (2, 4), (4, 2)]


def S_of(M, N, rep="defining"):
    p = make_profile(M, N)
    r = defining_rep(p) if rep == "defining" else zero_rep(p.K)
    return build_S(eval_T(r, p), p)


def to_numpy(L, u, v=0):
    """Evaluate a LeggedMatrix at rational u, v."""
    u, v = Fraction(u), Fraction(v)
    den = float(L.den(u, v))
    out = np.zeros((L.size, L.size))
    for i, j, p in L.num.items():
        out[i, j] = float(p(u, v)) / den
    return out


@pytest.fixture(params=PROFILES, ids=lambda mn: f"{mn[0]}|{mn[1]}")
def profile(request):
    return make_profile(*request.param)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
