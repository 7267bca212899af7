import numpy as np
import pytest

from elastab import core


@pytest.fixture(scope="session")
def unit_material():
    return core.MaterialField.constant(1.0, 1.0, 1.0)


@pytest.fixture(scope="session")
def generic_material():
    return core.MaterialField.constant(1.3, 1.5, 2.0)


@pytest.fixture(scope="session")
def annulus_domain():
    return core.DomainSpec(d=2, ell=1.0, shape="annulus", r_in=0.5)


@pytest.fixture(scope="session")
def disk_domain():
    return core.DomainSpec(d=2, ell=1.0, shape="ball")


@pytest.fixture(scope="session")
def ball_domain():
    return core.DomainSpec(d=3, ell=1.0, shape="ball")


def l2_norm(weights, values):
    return float(np.sqrt(np.sum(weights * np.sum(np.abs(values) ** 2, axis=-1))))
