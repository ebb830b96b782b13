import pytest
from hypothesis import settings

from hochkit.atiyah import build
from hochkit.resolvent import AffineAlgebra, koszul_tate_resolve

settings.register_profile("hochkit", max_examples=100, deadline=None)
settings.load_profile("hochkit")


def line():
    return AffineAlgebra.build({"x": 1})


def dual_numbers():
    return AffineAlgebra.build({"x": 1}, [lambda x: x**2])


def non_ci():
    return AffineAlgebra.build({"x": 1, "y": 1}, [lambda x, y: x**2, lambda x, y: x * y])


# (name, constructor, max_degree, max_weight)
ALGEBRAS = [("line", line, 4, 6), ("dual", dual_numbers, 4, 6), ("non_ci", non_ci, 3, 6)]

_BUILT = {}


def built(name):
    if name not in _BUILT:
        _, make, N, W = next(a for a in ALGEBRAS if a[0] == name)
        _BUILT[name] = build(koszul_tate_resolve(make(), N, W))
    return _BUILT[name]


@pytest.fixture(params=[a[0] for a in ALGEBRAS])
def maps(request):
    return built(request.param)


@pytest.fixture
def line_maps():
    return built("line")


@pytest.fixture
def dual_maps():
    return built("dual")


@pytest.fixture
def non_ci_maps():
    return built("non_ci")
