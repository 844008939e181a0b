import pytest

from eplab.zoo import Family, OperatorSpec, corpus_matrix, generate


@pytest.fixture(scope="session")
def corpus1000():
    """The seeded 1000-matrix mixed-family corpus used by the acceptance suite."""
    return [corpus_matrix(i, seed=0) for i in range(1000)]


@pytest.fixture(scope="session")
def ep200():
    """200 seeded EP-by-construction matrices (n in 2..32, varying rank)."""
    out = []
    for i in range(200):
        n = 2 + (i % 31)
        rank = 1 + (i % n)
        spec = OperatorSpec(family=Family.RANDOM_EP, n=n, rank=rank, seed=1000 + i)
        matrix, _ = generate(spec)
        out.append(matrix)
    return out


def random_complex(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
