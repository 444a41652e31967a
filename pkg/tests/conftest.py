"""Shared fixtures: bundled seeds and cached pipeline stages."""

import pytest

from clusterdeform.atlas import enumerate_atlas
from clusterdeform.cli import _data_path
from clusterdeform.seeds import ExtendedExchangeMatrix, Seed, load_seed
from clusterdeform.simplicial import cluster_complex, sr_ideal
from clusterdeform.universal import build_universal


def data_seed(name):
    return load_seed(_data_path(name))


def path_seed(coeffs):
    """Path quiver with prescribed off-diagonal pairs (b_{i,i+1}, b_{i+1,i})."""
    n = len(coeffs) + 1
    B = [[0] * n for _ in range(n)]
    for i, (a, b) in enumerate(coeffs):
        B[i][i + 1] = a
        B[i + 1][i] = b
    return Seed(ExtendedExchangeMatrix(B, n=n),
                ["z%d" % (i + 1) for i in range(n)])


@pytest.fixture(scope="session")
def a2_seed():
    return data_seed("a2")


@pytest.fixture(scope="session")
def a2_atlas(a2_seed):
    return enumerate_atlas(a2_seed)


@pytest.fixture(scope="session")
def a2_ideal(a2_atlas):
    return sr_ideal(cluster_complex(a2_atlas), a2_atlas.frozen_ids)


@pytest.fixture(scope="session")
def a2_univ(a2_seed):
    return build_universal(a2_seed)


@pytest.fixture(scope="session")
def g2_seed():
    return data_seed("g2")


@pytest.fixture(scope="session")
def g2_atlas(g2_seed):
    return enumerate_atlas(g2_seed)


@pytest.fixture(scope="session")
def g2_univ(g2_seed):
    return build_universal(g2_seed)


@pytest.fixture(scope="session")
def a3_bad_seed():
    return data_seed("a3_bad")


def pytest_terminal_summary(terminalreporter):
    import sys

    for name, mod in list(sys.modules.items()):
        if name.rsplit(".", 1)[-1] == "test_acceptance":
            results = getattr(mod, "RESULTS", None)
            if results:
                for num in sorted(results):
                    terminalreporter.write_line(
                        "CRITERION %d: %s" % (num, results[num]))
                return
