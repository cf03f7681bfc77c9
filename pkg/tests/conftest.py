import pytest

from sncover.config import RunConfig, use_config
from sncover.kronecker import clear_pair_cache


@pytest.fixture(scope="session", autouse=True)
def config(tmp_path_factory):
    """Every test runs against a private table cache."""
    cfg = RunConfig(cache_dir=tmp_path_factory.mktemp("sncover-cache"), seed=0)
    with use_config(cfg):
        yield cfg


@pytest.fixture
def fresh_pairs():
    clear_pair_cache()
    yield
    clear_pair_cache()
