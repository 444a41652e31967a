"""Decision procedures and the constructive repair."""

from itertools import product

import pytest

from clusterdeform.atlas import enumerate_atlas
from clusterdeform.gradings import find_strictly_positive, m_grading
from clusterdeform.intlinalg import vec_dot
from clusterdeform.properties import (PropertyError, SemigroupData, check_t0,
                                      check_t0_star, check_t1,
                                      exchangeable_pairs, repair_t1,
                                      semigroup_data)
from clusterdeform.simplicial import cluster_complex, sr_ideal
from clusterdeform.universal import build_universal
from tests.conftest import data_seed


def test_lattice_condition_holds_a2(a2_atlas):
    report = check_t1(a2_atlas)
    assert report.holds
    assert report.property == "T1"


def test_lattice_condition_fails_a3_variant(a3_bad_seed):
    atlas = enumerate_atlas(a3_bad_seed)
    report = check_t1(atlas)
    assert not report.holds
    first = report.witnesses[0]
    assert first["seed"] == 0 and first["j"] == 0
    assert first["w"] == [0, 0, 0, 0, -1, 1]


def test_repair(a3_bad_seed):
    repaired = repair_t1(a3_bad_seed)
    assert repaired.matrix.n == 3
    assert repaired.matrix.m == 9
    assert repaired.matrix.entries[:6] == a3_bad_seed.matrix.entries
    assert [list(r) for r in repaired.matrix.entries[6:]] == \
        [[0, 0, -1], [-1, 0, 0], [1, 0, 0]]
    atlas = enumerate_atlas(repaired)
    assert check_t1(atlas).holds
    # idempotent: repairing a repaired seed changes nothing
    again = repair_t1(repaired)
    assert again.matrix.entries == repaired.matrix.entries


def test_repair_requires_full_rank():
    from clusterdeform.seeds import ExtendedExchangeMatrix, Seed

    degenerate = Seed(ExtendedExchangeMatrix(
        [[0, 0], [0, 0], [1, 1]], n=2), ["a", "b", "f"])
    with pytest.raises(PropertyError):
        repair_t1(degenerate)


def test_derivation_condition_a2(a2_seed, a2_atlas, a2_ideal):
    K = cluster_complex(a2_atlas)
    grading = m_grading(a2_seed.matrix, a2_atlas)
    D = find_strictly_positive(a2_atlas)
    report = check_t0(K, a2_ideal, grading, a2_atlas, D)
    assert report.holds


def test_strong_derivation_condition_a2(a2_atlas, a2_ideal, a2_univ):
    K = cluster_complex(a2_atlas)
    D = find_strictly_positive(a2_atlas)
    sg = semigroup_data(a2_univ)
    report = check_t0_star(K, a2_ideal, a2_univ, sg, D)
    assert report.holds


def test_checks_require_strict_grading(a2_atlas, a2_ideal, g2_atlas):
    K = cluster_complex(a2_atlas)
    with pytest.raises(PropertyError):
        check_t0(K, a2_ideal, None, a2_atlas, None)
    # no strictly positive grading exists without frozen variables
    with pytest.raises(PropertyError):
        check_t1(g2_atlas)


def test_exchangeable_pairs(a2_atlas):
    pairs = exchangeable_pairs(a2_atlas)
    assert len(pairs) == 5
    assert frozenset({"x13", "x(-1,1,0,1,0)"}) in pairs


def brute_force_contains(gens, functional, target):
    """Exhaustive search over coefficient boxes bounded by the functional."""
    gens = [g for g in gens if any(g)]
    budget = vec_dot(functional, target)
    if budget < 0:
        return not any(target)
    bounds = [budget // vec_dot(functional, g) for g in gens]
    for combo in product(*[range(b + 1) for b in bounds]):
        total = [sum(c * g[i] for c, g in zip(combo, gens))
                 for i in range(len(target))]
        if tuple(total) == tuple(target):
            return True
    return False


def test_semigroup_membership_against_brute_force(a2_univ):
    sg = semigroup_data(a2_univ)
    gens = sg.generators
    f = sg.positive_functional
    targets = []
    for combo in product(range(3), repeat=3):
        t = [sum(c * g[i] for c, g in zip(combo, gens[:3]))
             for i in range(len(gens[0]))]
        targets.append(tuple(t))
    targets += [tuple(x + 1 for x in t) for t in targets[:10]]
    for t in targets:
        assert sg.contains(t) == brute_force_contains(gens, f, t)


def test_semigroup_rejects_bad_functional():
    with pytest.raises(PropertyError):
        SemigroupData([(1, 0), (-1, 0)], [1, 1])


def test_semigroup_functional_positive(a2_univ):
    sg = semigroup_data(a2_univ)
    for g in sg.generators:
        assert vec_dot(sg.positive_functional, g) >= 1
