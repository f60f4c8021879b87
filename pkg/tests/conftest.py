import random

import pytest
from hypothesis import settings

# reproducible property runs; failures replay from the printed seed
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repro")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=0, help="seed for the randomized table tests")


def pytest_report_header(config):
    return f"leibniz-rings random seed: {config.getoption('--seed')}"


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)
