import numpy as np
import pytest

from fdasim import PropagationEnv, chebyshev_taper, make_phased_array

C_ROUND = 3e8


@pytest.fixture
def env_round():
    "Environment with the rounded wave speed used by the headline scenarios."
    return PropagationEnv(wave_speed_m_per_s=C_ROUND)


@pytest.fixture
def cheb15():
    "15-element half-wavelength phased array with a 30 dB Chebyshev taper."
    carrier = 10e9
    spacing = 0.5 * C_ROUND / carrier
    weights = chebyshev_taper(15, 30.0)
    return make_phased_array(15, spacing, carrier, weights, np.zeros(15))
