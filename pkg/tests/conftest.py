import pytest

from wwl import WeylGroup, build_root_system


@pytest.fixture(scope="session")
def group_for():
    """Shared WeylGroup instances so tables are built once per session."""
    cache = {}

    def get(type_letter, rank):
        key = (type_letter, rank)
        if key not in cache:
            cache[key] = WeylGroup(build_root_system(type_letter, rank))
        return cache[key]

    return get
