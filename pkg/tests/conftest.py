import pytest

from realfn import Mode, RationalMap
from realfn.numkernel import I


def poly(coeffs, mode=None):
    return RationalMap.polynomial(coeffs, mode)


@pytest.fixture(params=[Mode.EXACT, Mode.FLOAT], ids=["exact", "float"])
def mode(request):
    return request.param


def z3m3z(mode=Mode.EXACT):
    return poly([0, -3, 0, 1], mode)


def z3m3iz(mode=Mode.EXACT):
    c = -3 * I if mode is Mode.EXACT else -3j
    return poly([0, c, 0, 1], mode)


def affine_entries(D):
    """``(affine value or None, multiplicity)`` pairs of a divisor."""
    return [(None if p.is_infinity else p.affine(), k) for p, k in D]


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def report_criterion(number: int, passed: bool, detail: str) -> bool:
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    print(ACCEPTANCE_LINES[number])
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
