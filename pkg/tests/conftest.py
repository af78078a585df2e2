import pytest
from hypothesis import settings

from symhilb import symfun

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def fresh_store(tmp_path):
    """A Jack store backed by a private disk cache, restored afterwards."""
    old = symfun.default_store()
    store = symfun.JackStore(tmp_path / "jack")
    symfun.set_default_store(store)
    yield store
    symfun.set_default_store(old)
