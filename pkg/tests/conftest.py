"""Shared fixtures."""

from collections.abc import Iterator

import pytest

from cliffmorph.algebra.models import Signature, make_signature
from cliffmorph.config import get_settings


@pytest.fixture(autouse=True)
def fresh_settings() -> Iterator[None]:
    """Settings are read from the environment again in every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def euclidean() -> Signature:
    return make_signature(4, 0)


@pytest.fixture
def spacetime() -> Signature:
    return make_signature(1, 3)
