import pytest

from qgt.errors import ValidationError
from qgt.families import markov_quiver, torus_projective_quiver, triangle_disk_quiver
from qgt.fields import GF, Q
from qgt.presentations import (
    PathExpr,
    a_path,
    b_path,
    deformed_relations,
    make_weights,
    parse_presentation,
    parse_relations,
    presentation_from_json,
    tetrahedral_presentation,
    weighted_relations,
)


def test_a_path_markov():
    tq = markov_quiver()
    w = make_weights(tq, Q)
    assert a_path(tq, w, "sigma").arrows == ("sigma", "gamma", "rho", "alpha", "beta")
    assert b_path(tq, w, "sigma").length == 6


def test_a_path_loop_and_long_orbit():
    tq = torus_projective_quiver()
    w = make_weights(tq, Q, {"alpha": 3, "delta": 2, "eta": 1, "beta": 1})
    assert a_path(tq, w, "alpha").arrows == ("alpha", "alpha")
    disk = triangle_disk_quiver()
    w2 = make_weights(disk, Q, 2)
    p = a_path(disk, w2, "epsilon")
    assert p.length == 11 and p.source == "1" and p.arrows[0] == "epsilon"


def test_weight_validation():
    tq = triangle_disk_quiver()
    with pytest.raises(ValidationError):
        make_weights(tq, Q, 0)
    with pytest.raises(ValidationError):
        make_weights(tq, GF(5), 1, 0)
    with pytest.raises(ValidationError):
        make_weights(tq, Q, 1, 1, {"9": 1})
    t = torus_projective_quiver()
    with pytest.raises(ValidationError):
        make_weights(t, Q, {"alpha": 3, "beta": 1})
    with pytest.raises(ValidationError):  # loop orbit has n = 1, so m = 1 gives m*n < 3
        make_weights(t, Q, 1)


def test_relation_counts():
    tq = markov_quiver()
    p = weighted_relations(tq, make_weights(tq, GF(5)), GF(5))
    assert len(p.relations) == 12
    t = torus_projective_quiver()
    pt = weighted_relations(t, make_weights(t, Q, {"alpha": 3, "delta": 2, "eta": 1, "beta": 1}), Q)
    assert len(pt.relations) == 24
    assert len(tetrahedral_presentation(2, 1, Q).relations) == 24


def test_deformed_needs_border():
    tq = markov_quiver()
    with pytest.raises(ValidationError):
        deformed_relations(tq, make_weights(tq, Q), Q)


def test_deformed_with_zero_border_equals_weighted():
    tq = triangle_disk_quiver()
    F = GF(5)
    plain = weighted_relations(tq, make_weights(tq, F, 1, 2), F)
    zero = deformed_relations(tq, make_weights(tq, F, 1, 2, 0), F)
    assert plain.relations == zero.relations


def test_dsl_round_trip_markov():
    tq = markov_quiver()
    F = GF(5)
    p = weighted_relations(tq, make_weights(tq, F, 1, 3), F)
    back = parse_presentation(p.dsl(), tq.quiver)
    assert back.field == F
    assert back.relations == p.relations
    again = presentation_from_json(p.to_json())
    assert again.relations == p.relations and again.meta["tq"].f == tq.f


def test_dsl_coefficients():
    q = markov_quiver().quiver
    (r,) = parse_relations(q, "alpha*gamma - 2 sigma*beta", Q)
    assert dict(r.terms) == {("alpha", "gamma"): 1, ("sigma", "beta"): -2}
    (r2,) = parse_relations(q, "alpha*gamma + 1/2*sigma*beta  # comment", Q)
    assert dict(r2.terms)[("sigma", "beta")] == Q.parse("1/2")
    assert parse_relations(q, "alpha*gamma - alpha*gamma", Q) == []


@pytest.mark.parametrize("text,needle", [
    ("alpha*beta + gamma", "length < 2"),
    ("alpha*gamma + beta*delta", "non-parallel"),
    ("alpha*delta", "do not compose"),
    ("alpha*zeta", "unknown arrow"),
    ("alpha*gamma +", "dangling"),
])
def test_dsl_errors(text, needle):
    q = markov_quiver().quiver
    with pytest.raises(ValidationError, match=needle):
        parse_relations(q, text, Q)


def test_path_expr_sorting():
    q = markov_quiver().quiver
    e = PathExpr.build(q, Q, [(1, ("alpha", "gamma")), (2, ("sigma", "gamma", "rho", "alpha", "beta"))])
    assert [len(w) for w, _ in e.terms] == [2, 5]
    assert e.format(Q) == "alpha*gamma + 2*sigma*gamma*rho*alpha*beta"
