import pytest

from descentsym.permcore import PermMultiset

# 15-box tableau from the promotion example, and its two printed images
P15 = ((1, 3, 6, 7), (2, 5, 9, 11), (4, 10, 13, 15), (8, 14), (12,))
P15_D3_12 = ((1, 4, 5, 6), (2, 8, 10, 12), (3, 9, 13, 15), (7, 14), (11,))
P15_DV = ((1, 4, 5, 6), (2, 8, 12, 14), (3, 10, 13, 15), (7, 11), (9,))

A_SET = ((1, 3, 2, 4), (4, 1, 3, 2))
B_SET = ((2, 1, 4, 3), (2, 3, 1, 4))

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def A():
    return PermMultiset(A_SET)


@pytest.fixture
def B():
    return PermMultiset(B_SET)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
