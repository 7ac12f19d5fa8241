import pytest

import properties


@pytest.mark.parametrize("name", sorted(properties.ALL))
def test_property(name):
    assert properties.run(name) >= properties.COUNT
