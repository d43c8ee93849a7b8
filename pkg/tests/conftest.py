import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gorenstein_lab.algebra import GradedAlgebra  # noqa: E402
from gorenstein_lab.polynomial import PolyRing  # noqa: E402

# name -> (variables, defining ideal)
CORPUS = {
    "R1": (["x", "y"], ["x^2", "x*y"]),
    "R2": (["x", "y"], ["x^2"]),
    "QXY": (["x", "y"], []),
    "R3": (["x", "y"], ["x^2", "y^2"]),
    "R4": (["x", "y"], ["x^2", "x*y", "y^2"]),
    "QX": (["x"], []),
    "PLANE_LINE": (["x", "y", "z"], ["x*z", "y*z"]),
}


def make_ring(name: str) -> GradedAlgebra:
    variables, ideal = CORPUS[name]
    return GradedAlgebra(PolyRing(variables), ideal)


def spec_of(name: str) -> dict:
    variables, ideal = CORPUS[name]
    return {"field": "Q", "vars": list(variables), "ideal": list(ideal)}


def as_fraction_dict(p) -> dict:
    return dict(p.terms)


@pytest.fixture
def ring():
    return make_ring


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
