#!/usr/bin/env python
"""
pytest configuration.

Registers the hypothesis profiles used by the property tests; select one
with ``--hypothesis-profile=ci`` or the ``QPFB_HYPOTHESIS_PROFILE``
environment variable.

"""
import os

from hypothesis import HealthCheck
from hypothesis import settings

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile(
    "ci",
    max_examples=100,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("QPFB_HYPOTHESIS_PROFILE", "default"))
