import pytest

from framegas.bundle import bundle_of
from framegas.generators import cross_polytope, cycle, path

_acceptance = {}


@pytest.fixture(scope="session")
def octahedron():
    return cross_polytope(2)


@pytest.fixture(scope="session")
def cross3():
    return cross_polytope(3)


@pytest.fixture(scope="session")
def corpus():
    """The complexes used by the randomized dynamics suites."""
    return {"path4": bundle_of(path(4)), "c5": bundle_of(cycle(5)),
            "octahedron": bundle_of(cross_polytope(2)), "cross3": bundle_of(cross_polytope(3))}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for name, _ in report.user_properties:
        if name == "acceptance":
            break
    else:
        return
    label = dict(report.user_properties)["acceptance"]
    _acceptance[label] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"[{_acceptance[label]}] {label}")
