import math

import pytest

from fuchsian_codes.codebook import tabulated_code
from fuchsian_codes.fuchsian import catalog

SQRT3 = math.sqrt(3.0)

# Closed forms of the Gamma(6,1) codewords in the upper half-plane.
TABULATED_POINTS = {
    "Id": 0.5j,
    "g1^-1": complex(-5 / 7 * (-3 + 2 * SQRT3), -4 / 7 * (-2 + SQRT3)),
    "g2^-1": complex(5 / 7 * (-3 + 2 * SQRT3), -4 / 7 * (-2 + SQRT3)),
    "g3": 2j,
    "g1": complex((96 - 131 * SQRT3) / 193, 4 / 193 * (14 + SQRT3)),
    "g2": complex(-(96 - 131 * SQRT3) / 193, 4 / 193 * (14 + SQRT3)),
    "g1^-1 g3": complex(-5 / 13 * (-3 + 2 * SQRT3), -4 / 13 * (-2 + SQRT3)),
    "g2^-1 g3": complex(5 / 13 * (-3 + 2 * SQRT3), -4 / 13 * (-2 + SQRT3)),
}


@pytest.fixture(scope="session")
def g6():
    return catalog(6)


@pytest.fixture(scope="session")
def code6():
    return {q: tabulated_code(6, q) for q in (4, 8, 16)}


_ACCEPTANCE: dict[int, tuple[str, str]] = {}
_NOTES: dict[int, str] = {}


@pytest.fixture
def acceptance_note(request):
    """Attach a one-line measurement to the summary line of this criterion."""
    n = request.node.get_closest_marker("acceptance").args[0]

    def note(text: str) -> None:
        _NOTES[n] = text

    return note


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    marker = getattr(report, "_acceptance", None)
    if marker is None:
        return
    n, title = marker
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[n] = (title, "PASS" if report.outcome == "passed" else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep._acceptance = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, status = _ACCEPTANCE[n]
        line = f"criterion {n}: {status}  {title}"
        if n in _NOTES:
            line += f"  [{_NOTES[n]}]"
        terminalreporter.write_line(line)
