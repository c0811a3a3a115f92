import pytest

from bomst.instances import GenParams, Instance, generate
from bomst.ranking import SpanningTreeProblem

# worked 3-vertex instance used across the suite: trees (5,5), (3,6), (6,3)
K3_EDGES = ((1, 2, 1, 4), (1, 3, 4, 1), (2, 3, 2, 2))


@pytest.fixture
def k3() -> Instance:
    return Instance(3, K3_EDGES)


@pytest.fixture
def k3_problem(k3) -> SpanningTreeProblem:
    return SpanningTreeProblem(k3)


@pytest.fixture
def k4_unit() -> Instance:
    edges = tuple((u, v, 1, 1) for u in range(1, 4) for v in range(u + 1, 5))
    return Instance(4, edges)


def gen_instance(n: int, r: int = 100, rho: float = 0.0, seed: int = 1) -> Instance:
    return generate(GenParams(n=n, r=r, rho=rho, seed=seed))
