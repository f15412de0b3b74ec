from __future__ import annotations

import pytest

from idealstats.catalog import load_catalog

QUADRATIC_LABELS = ("Qi", "Qsqrt-3", "Qsqrt2", "Qsqrt5")
ALL_LABELS = ("Q",) + QUADRATIC_LABELS


@pytest.fixture(scope="session")
def fields():
    return load_catalog()


@pytest.fixture(scope="session")
def Q(fields):
    return fields["Q"]


@pytest.fixture(scope="session")
def Qi(fields):
    return fields["Qi"]


@pytest.fixture(scope="session")
def Qsqrt5(fields):
    return fields["Qsqrt5"]
