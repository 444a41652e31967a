"""Graded deformation degrees, witnesses, and the obstruction lookup."""

import pytest

from clusterdeform.cotangent import (CotangentError, characteristic_image,
                                     obstruction_class, seed_weights,
                                     t1_degree_families, t1_invariant,
                                     t1_witnesses)
from clusterdeform.gradings import find_strictly_positive
from clusterdeform.simplicial import cluster_complex, sr_ideal
from clusterdeform.universal import build_universal
from tests.conftest import data_seed, path_seed


def test_a2_families(a2_atlas):
    K = cluster_complex(a2_atlas)
    fams = t1_degree_families(a2_atlas, K)
    # rank 2: the mutated vertex always has its single neighbor required,
    # so omega is forced and there is one family per exchangeable pair
    assert len(fams) == 5
    for d in fams:
        assert d.family
        assert len(d.pair) == 2
        assert len(d.omega) == 1
        assert not d.omega & d.pair


def test_a2_pinned_degrees(a2_atlas, a2_univ):
    K = cluster_complex(a2_atlas)
    J = sr_ideal(K, a2_atlas.frozen_ids)
    D = find_strictly_positive(a2_atlas)
    pinned = t1_invariant(a2_atlas, K, J, D)
    image = characteristic_image(a2_univ)
    order = a2_univ.variable_order
    assert len(pinned) == 5
    assert sorted(d.degree_vector(order) for d in pinned) == \
        sorted(d.degree_vector(order) for d in image)


def test_characteristic_image_structure(a2_univ):
    image = characteristic_image(a2_univ)
    assert len(image) == a2_univ.p
    for deg in image:
        assert sum(deg.b.values()) == 2
        assert deg.omega <= set(deg.a)


def test_characteristic_image_rejects_isolated():
    univ = build_universal(path_seed([]))
    with pytest.raises(CotangentError):
        characteristic_image(univ)


def test_witnesses_a3_counterexample(a3_bad_seed):
    from clusterdeform.atlas import enumerate_atlas

    atlas = enumerate_atlas(a3_bad_seed)
    D = find_strictly_positive(atlas)
    root = atlas.seeds[0]
    matrix = root.base_matrix(atlas.n, atlas.m)
    weights = seed_weights(atlas, root, D)
    ws = t1_witnesses(matrix, 0, weights)
    assert ws == [[0, 0, 0, 0, -1, 1], [0, 0, 0, 0, 0, 0]]


def test_witnesses_a2_trivial(a2_atlas):
    D = find_strictly_positive(a2_atlas)
    for state in a2_atlas.seeds:
        matrix = state.base_matrix(a2_atlas.n, a2_atlas.m)
        weights = seed_weights(a2_atlas, state, D)
        for j in range(a2_atlas.n):
            neg_col = [-matrix.entries[i][j] for i in range(a2_atlas.m)]
            for w in t1_witnesses(matrix, j, weights):
                assert w == [0] * a2_atlas.m or w == neg_col


def test_witnesses_require_grading(a2_atlas):
    matrix = a2_atlas.seeds[0].base_matrix(a2_atlas.n, a2_atlas.m)
    with pytest.raises(CotangentError):
        t1_witnesses(matrix, 0, [1, 2, 3, 4, 5])


def test_seed_weights_positive(a2_atlas):
    D = find_strictly_positive(a2_atlas)
    for state in a2_atlas.seeds:
        assert all(w >= 1 for w in seed_weights(a2_atlas, state, D))


def test_obstruction_class():
    assert obstruction_class(data_seed("a2").matrix)["unobstructed"]
    assert obstruction_class(path_seed([(1, -1), (1, -1)]).matrix)[
        "unobstructed"]
    for name in ("g2", "b2", "c2"):
        report = obstruction_class(data_seed(name).matrix)
        assert not report["unobstructed"]
    with pytest.raises(CotangentError):
        from clusterdeform.seeds import ExtendedExchangeMatrix
        obstruction_class(ExtendedExchangeMatrix(
            [[0, 2, -2], [-2, 0, 2], [2, -2, 0]], n=3))
