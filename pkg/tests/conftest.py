from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from scatlab.field import cached_field

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# small fields used throughout: (p, h, n)
SMALL = [(2, 1, 4), (3, 1, 3), (3, 1, 4), (5, 1, 3), (2, 2, 3), (3, 2, 2)]


@pytest.fixture(params=SMALL, ids=lambda t: f"p{t[0]}h{t[1]}n{t[2]}")
def small_ctx(request):
    return cached_field(*request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
