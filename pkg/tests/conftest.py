"""Shared fixtures: the bundled example matrices, built from exact rationals."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ahpkit import HierarchyModel, validate

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

#: Examples per hypothesis property suite.
PROPERTY_EXAMPLES = 200


def rat(x) -> float:
    return float(Fraction(str(x)))


def exact(rows) -> np.ndarray:
    return np.array([[rat(c) for c in row] for row in rows])


A1_ROWS = [
    [1, 9, 2, 3, 5],
    ["1/9", 1, "1/5", "1/3", "1/2"],
    ["1/2", 5, 1, "3/2", 3],
    ["1/3", 3, "2/3", 1, "3/2"],
    ["1/5", 2, "1/3", "2/3", 1],
]
A1M_ROWS = [
    [1, 8, 2, 3, 5],
    ["1/9", 1, "1/5", "1/3", "1/2"],
    ["1/2", 5, 1, "3/2", 3],
    ["1/3", 3, "2/3", 1, "3/2"],
    ["1/5", 2, "1/3", "2/3", 1],
]
A1SIGMA_ROWS = [
    [1, 2, 3, 5, 8],
    ["1/2", 1, "3/2", 3, 5],
    ["1/3", "2/3", 1, "3/2", 3],
    ["1/5", "1/3", "2/3", 1, 2],
    ["1/9", "1/5", "1/3", "1/2", 1],
]
A1D_ROWS = [
    [1, 2, 3, 8],
    ["1/2", 1, "3/2", 5],
    ["1/3", "2/3", 1, 3],
    ["1/9", "1/5", "1/3", 1],
]
# the published 6x6 extension; its (x6, x2) pair multiplies to 1.2 > 1 and
# is only admissible after an explicit mirror repair
A1A_ROWS = [
    [1, 2, 3, 5, 6, 8],
    ["1/2", 1, "3/2", 3, 4, 5],
    ["1/3", "2/3", 1, "3/2", 2, 3],
    ["1/5", "1/3", "2/3", 1, "3/2", 2],
    ["1/6", "1/4", "1/2", "2/3", 1, "3/2"],
    ["1/9", "1/5", "1/3", "1/2", "4/5", 1],
]
A2_ROWS = [
    [1, 9, 2, 3, 5],
    ["1/9", 1, "1/5", "1/3", "1/2"],
    ["1/4", 5, 1, "3/2", 3],
    ["1/3", 3, "2/3", 1, "3/2"],
    ["1/5", 2, "1/3", "2/3", 1],
]
A2M_ROWS = [
    [1, "1/9", 2, 3, 5],
    [9, 1, "1/5", "1/3", "1/2"],
    ["1/4", 5, 1, "3/2", 3],
    ["1/3", 3, "2/3", 1, "3/2"],
    ["1/5", 2, "1/3", "2/3", 1],
]

TABLE1_ROWS = [
    [1, "1/4", "1/3", "1/2"],
    [4, 1, 3, "3/2"],
    [3, "1/3", 1, "1/3"],
    [2, "2/3", 3, 1],
]
TABLE2_ROWS = [[1, 8, 4], ["1/8", 1, "1/4"], ["1/4", 4, 1]]
TABLE3_ROWS = [[1, "1/4", "1/9"], [4, 1, "1/5"], [9, 5, 1]]
TABLE4_ROWS = [[1, "2/3", "1/3"], ["3/2", 1, "1/2"], [3, 2, 1]]
TABLE5_ROWS = [[1, 4, 7], ["1/4", 1, 3], ["1/7", "1/3", 1]]
TABLE6_ROWS = [
    [1, "3/2", 3, "3.8"],
    ["2/3", 1, 3, "1.5"],
    ["1/3", "1/3", 1, "2.8"],
    ["1/4", "1/2", "1/3", 1],
]

W1_ROWS = [
    ["1/18", "1/11", "1/14", "1/9"],
    ["9/18", "9/11", "9/14", "5/9"],
    ["8/18", "1/11", "4/14", "3/9"],
]
W2_ROWS = [
    ["1/22", "1/12", "1/16", "1/12"],
    ["9/22", "9/12", "9/16", "5/12"],
    ["8/22", "1/12", "4/16", "3/12"],
    ["4/22", "1/12", "2/16", "2/12"],
]
W3_ROWS = [
    ["1/18", "9/11", "1/14", "3/9"],
    ["9/18", "1/11", "9/14", "1/9"],
    ["8/18", "1/11", "4/14", "5/9"],
]

CARS = ("Acura TL", "Toyota Camry", "Honda Civic")


@pytest.fixture
def a1():
    return validate(exact(A1_ROWS))


@pytest.fixture
def a1m():
    return validate(exact(A1M_ROWS))


@pytest.fixture
def a1sigma():
    return validate(exact(A1SIGMA_ROWS), ("x1", "x3", "x4", "x5", "x2"))


@pytest.fixture
def a1d():
    return validate(exact(A1D_ROWS), ("x1", "x3", "x4", "x2"))


@pytest.fixture
def a2():
    return validate(exact(A2_ROWS))


@pytest.fixture
def a2m():
    return validate(exact(A2M_ROWS))


@pytest.fixture
def table1():
    return validate(exact(TABLE1_ROWS), ("Prestige", "Price", "MPG", "Comfort"))


@pytest.fixture
def table6():
    return validate(exact(TABLE6_ROWS), ("Price", "Comfort", "MPG", "Prestige"))


def _car_matrices():
    return {
        "Prestige": validate(exact(TABLE2_ROWS), CARS),
        "Price": validate(exact(TABLE3_ROWS), CARS),
        "MPG": validate(exact(TABLE4_ROWS), CARS),
        "Comfort": validate(exact(TABLE5_ROWS), CARS),
    }


@pytest.fixture
def car_model(table1):
    mats = _car_matrices()
    criteria = ("Prestige", "Price", "MPG", "Comfort")
    return HierarchyModel(
        goal="Choose the best car",
        criteria=criteria,
        criteria_matrix=table1,
        alternatives=CARS,
        alt_matrices=tuple(mats[c] for c in criteria),
    )


@pytest.fixture
def car_model_table6(table6):
    mats = _car_matrices()
    criteria = ("Price", "Comfort", "MPG", "Prestige")
    return HierarchyModel(
        goal="Choose the best car",
        criteria=criteria,
        criteria_matrix=table6,
        alternatives=CARS,
        alt_matrices=tuple(mats[c] for c in criteria),
    )


@pytest.fixture
def a1sigma_model(a1sigma):
    return HierarchyModel.single_criterion(a1sigma, goal="rank the options", criterion="C")
