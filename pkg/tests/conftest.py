import functools

import pytest

from omodular.enumerate import enum_jsls
from omodular.order import builtin, parse_structure

M4U_TEXT = """\
# M4 with a second common lower bound u of b and c
elements: v a c top b u
covers:
v < u
u < a
u < b
a < c
c < top
b < top
"""


@functools.lru_cache(maxsize=None)
def jsls_upto(n):
    return tuple(S for k in range(1, n + 1) for S in enum_jsls(k))


@pytest.fixture
def m2():
    return builtin("m2")


@pytest.fixture
def m4():
    return builtin("m4")


@pytest.fixture
def m4u():
    return parse_structure(M4U_TEXT)


def idx(S, *names):
    return [S.index(x) for x in names]


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
