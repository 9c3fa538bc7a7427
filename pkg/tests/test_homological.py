import random

import pytest
from hypothesis import given, settings, strategies as st

import _instances as I
from qgt.errors import ValidationError
from qgt.homological import (
    period_of_simple,
    projective_cover,
    projective_module,
    resolution,
    simple_module,
    syzygy,
    top,
    tube_rank,
)


def test_markov_trace_frozen():
    tr = resolution(I.algebra("markov-1"), "1", bound=4)
    covers = [s.cover for s in tr.steps[:4]]
    assert covers == [(1, 0, 0), (0, 2, 0), (0, 0, 2), (1, 0, 0)]
    assert [sum(s.dim_vector) for s in tr.steps] == [1, 11, 13, 11, 1]
    assert tr.period == 4


def test_projective_module():
    A = I.algebra("markov-1")
    P = projective_module(A, "2")
    P.check()
    assert P.dim == 12
    assert top(P) == {"1": 0, "2": 1, "3": 0}


def test_cover_and_syzygy_are_modules():
    A = I.algebra("torus-3211")
    M = simple_module(A, "3")
    for _ in range(3):
        N, cov = syzygy(M)
        N.check()
        cov.projective.check()
        assert cov.projective.dim == M.dim + N.dim
        M = N


def test_unknown_vertex():
    with pytest.raises(ValidationError):
        simple_module(I.algebra("markov-1"), "9")
    with pytest.raises(ValidationError):
        resolution(I.algebra("markov-1"), "1", bound=0)


def test_singular_tetrahedral_has_no_period_four():
    A = I.algebra("tetra-1-0")
    assert all(period_of_simple(A, v) != 4 for v in A.quiver.vertices)


def test_tube_rank():
    assert tube_rank(4) == 2 and tube_rank(3) == 3 and tube_rank(None) is None


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(["markov-1", "disk-1", "torus-3211", "tetra-1-1"]), st.integers(0, 10**6))
def test_syzygy_dims_independent_of_lift(name, seed):
    A = I.algebra(name)
    v = A.quiver.vertices[seed % len(A.quiver.vertices)]
    plain = resolution(A, v, bound=3)
    lifted = resolution(A, v, bound=3, rng=random.Random(seed))
    assert [s.dim_vector for s in plain.steps] == [s.dim_vector for s in lifted.steps]
    assert [s.cover for s in plain.steps] == [s.cover for s in lifted.steps]


def test_random_lift_cover_is_minimal():
    A = I.algebra("markov-2")
    M, _ = syzygy(simple_module(A, "2"))
    cov = projective_cover(M, random.Random(5))
    assert len(cov.summands) == sum(top(M).values())
