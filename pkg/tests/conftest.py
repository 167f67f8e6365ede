import warnings

import numpy as np
import pytest
from hypothesis import settings

from cmc_forge.heart import TwizzlerSpec

settings.register_profile("default", max_examples=30, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _quiet_psi_warning():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="psi is not positive", category=RuntimeWarning)
        yield


def random_specs(n, seed, m_lo=-0.24, m_hi=5.0, w_lo=0.2, w_hi=5.0):
    rng = np.random.default_rng(seed)
    return [
        TwizzlerSpec.from_w(float(rng.uniform(m_lo, m_hi)), float(rng.uniform(w_lo, w_hi)))
        for _ in range(n)
    ]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k, (name, _) in enumerate(CRITERIA, 1):
        if name in RESULTS:
            ok, detail = RESULTS[name]
            terminalreporter.write_line(f"{k:2d}. {'PASS' if ok else 'FAIL'} {name}: {detail}")
