import pytest

import _instances as I
from qgt.analysis import (
    SCHEMA_VERSION,
    find_all_triangulations,
    find_triangulation,
    fit_tetrahedral,
    fit_weights,
    gqt_report,
    jj_dims_check,
    propagation_check,
    rank_triangulations,
    relation_census,
)
from qgt.families import markov_quiver


@pytest.mark.parametrize("name,expected", [
    ("markov-1", {"ZZ"}),
    ("disk-1", {"ZZ"}),
    ("torus-3211", {"ZZ", "CZ"}),
    ("tetra-1-1", {"CC"}),
])
def test_census_classes(name, expected):
    census = relation_census(I.algebra(name))
    assert set(census.summary().values()) == expected
    for vc in census.vertices.values():
        assert vc.layer_dim == 2 and vc.targets_ok


@pytest.mark.parametrize("name", I.ALL)
def test_jj_and_propagation(name):
    A = I.algebra(name)
    assert jj_dims_check(A).passed
    assert propagation_check(A) == []


def test_zero_relation_types():
    census = relation_census(I.algebra("markov-1"))
    tq = markov_quiver()
    for a in tq.arrows:
        assert census.is_path_zero((a, tq.f(a)))
        assert not census.is_path_zero((a, tq.g(a)))


@pytest.mark.parametrize("name", [n for n in I.ALL if n not in ("tetra-2-0", "tetra-1-0")])
def test_find_triangulation_round_trip(name):
    f = find_triangulation(I.algebra(name))
    assert f.orbit_partition() == I.presentation(name).meta["tq"].f.orbit_partition()


@pytest.mark.parametrize("name", ["tetra-1-0", "tetra-2-0"])
def test_singular_tetrahedral_tie(name):
    # for lambda = 0 both solutions are recognized the same way, so nothing intrinsic separates them
    ranked = rank_triangulations(I.algebra(name))
    assert len(ranked) == 2
    assert ranked[0][1] == ranked[1][1] is not None


@pytest.mark.parametrize("name", ["tetra-1-1", "tetra-2-1"])
def test_nonsingular_tetrahedral_single_recognized(name):
    ranked = rank_triangulations(I.algebra(name))
    assert [fam is not None for _, fam in ranked] == [True, False]


def test_find_all_triangulations():
    assert len(find_all_triangulations(I.algebra("markov-1"))) == 1
    assert len(find_all_triangulations(I.algebra("tetra-1-1"))) == 2


@pytest.mark.parametrize("name", I.WEIGHTED + I.DEFORMED)
def test_fit_weights(name):
    fit = fit_weights(I.algebra(name), I.presentation(name).meta["tq"])
    assert I.same_weights(fit, I.weight_data(name))


def test_fit_weights_rejects_tetrahedral():
    notes = []
    assert fit_weights(I.algebra("tetra-2-1"), I.presentation("tetra-2-1").meta["tq"], notes) is None
    assert notes


@pytest.mark.parametrize("name,m,lam", [("tetra-1-1", 1, "1"), ("tetra-2-1", 2, "1"), ("tetra-2-0", 2, "0")])
def test_fit_tetrahedral(name, m, lam):
    A = I.algebra(name)
    fit = fit_tetrahedral(A, I.presentation(name).meta["tq"])
    assert fit.m == m and A.field.format(fit.lam) == lam


def test_report():
    rep = gqt_report(I.algebra("torus-3211"))
    assert rep["schema_version"] == SCHEMA_VERSION
    assert rep["dimension"] == 56 and rep["cartan_det"] == 0
    assert rep["family"] == "weighted" and rep["tameness"].startswith("tame (known")
    assert set(rep["tube_ranks"].values()) == {2}
    assert rep["verdict"] == "consistent with generalized quaternion type"
    bad = gqt_report(I.algebra("tetra-1-0"))
    assert bad["verdict"].startswith("violates") and bad["tetrahedral"]["singular"]
