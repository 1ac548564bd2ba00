"""Shared fixtures: the worked example is expensive to build, so load it once."""

import pytest

from contactconics import HeightContext, load_worked_example


@pytest.fixture(scope="session")
def example():
    return load_worked_example()


@pytest.fixture(scope="session")
def model(example):
    return example.model


@pytest.fixture(scope="session")
def context(model):
    return HeightContext.for_model(model)
