import pytest

from artintits import coxeter as cx
from artintits.cubepath import OracleRegistry
from artintits.virtual_braids import gamma_vb


@pytest.fixture(scope="session")
def a2():
    return cx.build_graph(["s", "t"], [("s", "t", 3)])


@pytest.fixture(scope="session")
def b2():
    return cx.build_graph(["s", "t"], [("s", "t", 4)])


@pytest.fixture(scope="session")
def a3():
    return cx.build_graph(
        ["a", "b", "c"], [("a", "b", 3), ("b", "c", 3), ("a", "c", 2)]
    )


@pytest.fixture(scope="session")
def iinf():
    return cx.build_graph(["s", "t"], [("s", "t", None)])


@pytest.fixture(scope="session")
def triangle():
    return cx.build_graph(
        ["a", "b", "c"], [("a", "b", 3), ("b", "c", 3), ("a", "c", 3)]
    )


@pytest.fixture(scope="session")
def gvb3():
    return gamma_vb(3)


@pytest.fixture(scope="session")
def gvb4():
    return gamma_vb(4)


@pytest.fixture()
def reg(request):
    """Registry factory: reg(graph) -> OracleRegistry (fresh per test)."""
    return OracleRegistry


@pytest.fixture(scope="session")
def registry():
    from artintits.cubepath import registry_for

    return registry_for
