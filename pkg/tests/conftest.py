"""Shared session fixtures: fields, surfaces and group actions, built once."""

import pytest

from splitcayley.galois import QuadraticField
from splitcayley.hermitian import HermitianSurface
from splitcayley.unitary import UnitaryAction


@pytest.fixture(scope="session")
def field2():
    return QuadraticField.for_q(2)


@pytest.fixture(scope="session")
def field3():
    return QuadraticField.for_q(3)


@pytest.fixture(scope="session")
def surface2(field2):
    return HermitianSurface(field2)


@pytest.fixture(scope="session")
def surface3(field3):
    return HermitianSurface(field3)


@pytest.fixture(scope="session")
def action2(surface2):
    return UnitaryAction(surface2)


@pytest.fixture(scope="session")
def action3(surface3):
    return UnitaryAction(surface3)


@pytest.fixture(scope="session")
def bcs2(surface2):
    from splitcayley.quadric import BcsMap
    return BcsMap(surface2)


@pytest.fixture(scope="session")
def bcs3(surface3):
    from splitcayley.quadric import BcsMap
    return BcsMap(surface3)
