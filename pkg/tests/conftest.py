import numpy as np
import pytest

from refspin import models


@pytest.fixture(scope="session")
def potts3():
    return models.make_potts(3, d_sign=-1, xi_choice=0)


@pytest.fixture(scope="session")
def pentagonal():
    return models.make_pentagonal()


@pytest.fixture(scope="session")
def asym_potts_refinement():
    """A refinement with alpha_vp != alpha_vm and no type-II property;
    sensitive to every sign-convention mistake."""
    return models.make_potts_family(2.0, 0.3)


@pytest.fixture(scope="session")
def asym_pent_refinement():
    return models.make_pentagonal_family(1.5, 0.5, -0.25)


@pytest.fixture(scope="session")
def type_ii_refinement(potts3):
    return models.make_potts_refinement(potts3, 0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
