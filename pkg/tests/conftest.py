import importlib
from fractions import Fraction as F

import pytest

from invmilp.instance import InverseInstance, MilpInstance
from invmilp.rational import Norm


@pytest.fixture
def desk_forward():
    # integer box 0 <= x1 <= 3, 0 <= x2 <= 1
    return MilpInstance.create(2, lower=[0, 0], upper=[3, 1])


@pytest.fixture
def desk(desk_forward):
    return InverseInstance.create(desk_forward, (0, 3), (2, -1), Norm.LINF)


@pytest.fixture
def desk_l1(desk_forward):
    return InverseInstance.create(desk_forward, (0, 3), (2, -1), Norm.L1)


@pytest.fixture(params=["cython", "python"])
def backend(request, monkeypatch):
    """Run a test once per pivot-kernel backend."""
    from invmilp import kernels

    if request.param == "cython":
        try:
            mod = importlib.import_module("invmilp._pivot")
        except ImportError:
            pytest.skip("compiled kernel not built")
    else:
        mod = kernels.python_kernels
    monkeypatch.setattr(kernels, "pivot", mod.pivot)
    monkeypatch.setattr(kernels, "ratio_test", mod.ratio_test)
    return request.param


DESK_TEXT = """\
# integer box 0 <= x1 <= 3, 0 <= x2 <= 1
dim 2
ints 2
bound 1 0 3
bound 2 0 1
estimate 2 -1
target 0 3
norm linf
"""


@pytest.fixture
def desk_text():
    return DESK_TEXT


def frac_vec(*xs):
    return tuple(F(x) for x in xs)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
