from django.conf import settings
import pytest
import django

from ..graphs import Graph


@pytest.fixture(scope="session", autouse=True)
def setup(request):
    # prepare django ahead of all tests
    if not settings.configured:
        settings.configure(INSTALLED_APPS=["cayley_expander"])
    django.setup()


@pytest.fixture
def k2():
    return Graph(num_nodes=2, edges=[(0, 1)])


@pytest.fixture
def c4():
    return Graph(num_nodes=4, edges=[(0, 1), (1, 2), (2, 3), (3, 0)])
