import pytest

from polareig import forms, graphs, polarspace
from polareig.gf import field_new


def make_space(family, dim, p, k=1):
    return polarspace.polar_space(forms.standard_form(family, dim, field_new(p, k)))


def make_collinearity(family, dim, p, k=1):
    return graphs.collinearity_graph(make_space(family, dim, p, k))


@pytest.fixture(scope="session")
def gf2():
    return field_new(2, 1)


@pytest.fixture(scope="session")
def gf3():
    return field_new(3, 1)


@pytest.fixture(scope="session")
def gf4():
    return field_new(2, 2)


@pytest.fixture(scope="session")
def gf9():
    return field_new(3, 2)


@pytest.fixture(scope="session")
def sp42():
    return make_collinearity("sp", 4, 2)


@pytest.fixture(scope="session")
def sp43():
    return make_collinearity("sp", 4, 3)


@pytest.fixture(scope="session")
def rook_o42():
    return make_collinearity("o+", 4, 2)


@pytest.fixture(scope="session")
def rook_o43():
    return make_collinearity("o+", 4, 3)


@pytest.fixture(scope="session")
def gq_o62():
    return make_collinearity("o-", 6, 2)


@pytest.fixture(scope="session")
def u44():
    return graphs.unitary_graph(field_new(2, 2))


@pytest.fixture(scope="session")
def u49():
    return graphs.unitary_graph(field_new(3, 2))


@pytest.fixture(scope="session")
def vo_plus_2():
    return graphs.affine_polar_graph(2, 1, field_new(2, 1))


@pytest.fixture(scope="session")
def vo_minus_2():
    return graphs.affine_polar_graph(2, -1, field_new(2, 1))


@pytest.fixture(scope="session")
def vo_plus_3():
    return graphs.affine_polar_graph(2, 1, field_new(3, 1))


@pytest.fixture(scope="session")
def vo_minus_3():
    return graphs.affine_polar_graph(2, -1, field_new(3, 1))


def pentagon():
    return graphs.graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
