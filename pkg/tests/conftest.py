import json
import sys
from pathlib import Path

import pytest

from gishida.cones import make_cone
from gishida.exactlin import LatticeData, identity
from gishida.ishida import SupportComplex

DATA = Path(__file__).parent / "data"

LATTICE_GENS = [(2, 0, -3, 0), (1, -5, 1, 5)]
LATTICE_A = [[3, 1, 2, 0], [0, 1, 0, 1]]
SEGRE_A = [[0, 1, 1, 0], [0, 0, 1, 1], [1, 1, 1, 1]]
SEGRE_ORDER = [[0, 1], [1, 2], [2, 3], [0, 3]]


def load(name):
    with open(DATA / name) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def lattice_data():
    return LatticeData.from_generators(LATTICE_GENS, 4, A=LATTICE_A)


@pytest.fixture(scope="session")
def lattice_cone(lattice_data):
    return make_cone([list(r) for r in lattice_data.A])


@pytest.fixture(scope="session")
def segre_cone():
    return make_cone(SEGRE_A, SEGRE_ORDER)


@pytest.fixture(scope="session")
def segre_data():
    return LatticeData.from_matrix(SEGRE_A)


@pytest.fixture(scope="session")
def segre_delta(segre_cone):
    return SupportComplex.from_columns(segre_cone, [[0, 1], [2, 3]])


def orthant(d):
    return make_cone(identity(d))


def pytest_terminal_summary(terminalreporter):
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance") and getattr(mod, "RESULTS", None):
            terminalreporter.section("acceptance criteria")
            for k in sorted(mod.RESULTS):
                terminalreporter.write_line(mod.RESULTS[k])
