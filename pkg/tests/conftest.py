import importlib
import re

import numpy as np
import pytest

from helstrom_gpt._kernels import _pykernels

try:
    _compiled = importlib.import_module("helstrom_gpt._kernels._ckernels")
except ImportError:
    _compiled = None


class _Backend:
    """Adapter exposing one kernel implementation with the package's status codes."""

    OPTIMAL, UNBOUNDED, ITERATION_LIMIT = 0, 1, 2

    def __init__(self, name, module):
        self.name = name
        self.pivot = module.pivot
        self.simplex_iterate = module.simplex_iterate
        self.jacobi_eigh = module.jacobi_eigh

    def __repr__(self):
        return f"<kernels {self.name}>"


BACKENDS = [_Backend("python", _pykernels)]
if _compiled is not None:
    BACKENDS.append(_Backend("compiled", _compiled))


@pytest.fixture(params=BACKENDS, ids=lambda b: b.name)
def kernels(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    failed = report.failed
    if report.when == "call" or failed:
        prev = _ACCEPTANCE.get(key, (m.group(2), True))
        _ACCEPTANCE[key] = (m.group(2), prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        name, ok = _ACCEPTANCE[key]
        terminalreporter.write_line(
            f"criterion {key} [PRIMARY] {name.replace('_', ' ')}: {'PASS' if ok else 'FAIL'}")
