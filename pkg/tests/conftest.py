import numpy as np
import pytest

from tdsolve.regimes import Params

# one representative system per closed-form row (TO labels), plus b = -a
SYSTEMS = {
    "case1_gt": Params(1.0, 0.5, 1.0, 1.0),
    "case1_lt": Params(1.0, -2.0, 1.0, 1.0),
    "sho": Params(1.0, -1.0, 1.0, 1.0),
    "bessel_gt": Params(0.5, 1.0, 1.0, 1.0),
    "bessel_gt_a_gt_1": Params(3.0, 2.0, 1.0, 4.0),
    "bessel_lt_a_gt_1": Params(3.0, -0.5, 1.0, 4.0),
    "bessel_lt": Params(0.5, -2.0, 1.0, 1.0),
    "bessel_neg_a": Params(-1.0, 0.5, 2.0, 1.0),
    "crit_lt": Params(0.5, -1.5, 1.0, 0.1),
    "crit_eq": Params(0.5, -1.5, 1.0, 0.25),
    "crit_gt": Params(0.5, -1.5, 1.0, 1.0),
    "crit_gt_minus": Params(3.0, 1.0, 1.0, 2.0),
    "crit_lt_minus": Params(2.0, 0.0, 0.2, 1.0),
    "crit_eq_minus": Params(3.0, 1.0, 1.0, 1.0),
    "special": Params(0.5, -0.5, 1.5, 1.0),
    "special_a_gt_1": Params(2.0, -2.0, 1.0, 3.0),
}


def to_window(p: Params, n: int = 40) -> np.ndarray:
    """Offsets well inside the TO domain."""
    span = 2.0 if p.a <= 1 else 0.7 * p.t_o / (p.a - 1.0)
    return np.linspace(0.0, span, n)


def tm_window(p: Params, n: int = 40) -> np.ndarray:
    return np.linspace(p.t_o, 3.0 * p.t_o, n)


@pytest.fixture(params=sorted(SYSTEMS), ids=sorted(SYSTEMS))
def system(request):
    return request.param, SYSTEMS[request.param]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
