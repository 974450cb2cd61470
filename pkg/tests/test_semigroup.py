import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiver_edmonds import (
    QuiverDatum,
    Representation,
    apply_base_change,
    orbit_membership,
    saturation_probe,
    weight_semigroup_member,
)
from quiver_edmonds.capacity import POSITIVE, ZERO
from quiver_edmonds.errors import InconsistencyAlarm
from quiver_edmonds.fixtures import (
    a_n,
    d4,
    dynkin_quivers,
    five_vertex,
    five_vertex_relation,
    kronecker,
    kronecker_datum,
    random_invertible,
    random_representation,
    skew3_datum,
    weights,
)
from quiver_edmonds.oracle import NO, YES
from quiver_edmonds.quiver import euler_form
from quiver_edmonds.semigroup import (
    CONSISTENT_ERP,
    INCONCLUSIVE,
    UNSUPPORTED,
    WITNESSED_NON_SATURATED,
)


# -- weight semigroup --------------------------------------------------------

def test_a2_positive_weight(A2):
    r = weight_semigroup_member(A2, (1, 1), (1, -1))
    assert r.answer == YES and r.alpha == {"1": 1, "2": 0}


def test_a2_negative_weight(A2):
    r = weight_semigroup_member(A2, (1, 1), (-1, 1))
    assert r.answer == NO and r.alpha == {"1": -1, "2": 0}


def test_zero_weight(Q5):
    r = weight_semigroup_member(Q5, (1,) * 5, (0,) * 5)
    assert r.answer == YES and set(r.alpha.values()) == {0}


def test_kronecker_solve(K2):
    r = weight_semigroup_member(K2, (2, 2), (1, -1))
    assert r.answer == YES and r.alpha == {"1": 1, "2": 1}


def test_support_restriction(A3):
    # beta vanishes at the middle vertex, so the full subquiver has no arrows
    r = weight_semigroup_member(A3, (1, 0, 1), (1, 0, -1))
    assert r.answer == NO and set(r.alpha) == {"1", "3"}


def test_relations_unsupported(Q5):
    assert weight_semigroup_member(Q5, (1,) * 5, (0,) * 5,
                                   [five_vertex_relation(Q5)]).answer == UNSUPPORTED


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_alpha_solves_euler_equation(seed):
    rng = random.Random(seed)
    q = rng.choice(dynkin_quivers() + [kronecker(3), five_vertex()])
    beta = [rng.randint(1, 3) for _ in q.vertices]
    sigma = [rng.randint(-3, 3) for _ in q.vertices]
    r = weight_semigroup_member(q, beta, sigma)
    for k, y in enumerate(q.vertices):
        e_y = [int(x == y) for x in q.vertices]
        alpha = [r.alpha[x] for x in q.vertices]
        assert euler_form(q, alpha, e_y)[0] == sigma[k]


# -- orbit membership --------------------------------------------------------

def test_membership_diagonal_units(E):
    rep = orbit_membership(kronecker_datum([E(0, 0), E(1, 1)]))
    assert (rep.sigma_in_S, rep.semistable, rep.in_weight_semigroup) == (YES, POSITIVE, YES)
    assert rep.alpha == {"1": 1, "2": 1}


def test_membership_a2_doubled(A2):
    d = QuiverDatum(Representation(A2, (1, 2), {"a": [[1], [1]]}), (2, -1))
    rep = orbit_membership(d)
    assert (rep.sigma_in_S, rep.semistable, rep.in_weight_semigroup) == (NO, ZERO, YES)
    assert rep.alpha == {"1": 2, "2": 1}


def test_membership_zero_weight(Q5):
    d = QuiverDatum(Representation(Q5, (1,) * 5, {}), (0,) * 5)
    rep = orbit_membership(d)
    assert (rep.sigma_in_S, rep.semistable, rep.in_weight_semigroup) == (YES, POSITIVE, YES)
    assert rep.to_dict()["span_decision"]["answer"] == YES


def test_membership_alarm_on_contradiction(E):
    # an absurd zero bound makes the capacity side claim ZERO for a YES instance
    d = kronecker_datum([E(0, 0), E(1, 1)])
    with pytest.raises(InconsistencyAlarm):
        orbit_membership(d, capacity_kw={"zero_bound": 10.0, "threshold": 0.0, "max_iters": 5})


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_membership_base_change_invariance(seed):
    rng = random.Random(seed)
    q = rng.choice([a_n(3), d4("<><"), kronecker(2)])
    beta = [rng.randint(0, 2) for _ in q.vertices]
    cands = weights(q, beta, 2, 4)
    if not cands:
        return
    d = QuiverDatum(random_representation(q, beta, rng), rng.choice(cands))
    g = {x: random_invertible(rng, d.beta[x]) for x in q.vertices}
    a = orbit_membership(d)
    b = orbit_membership(d.with_rep(apply_base_change(g, d.rep)))
    assert (a.sigma_in_S, a.semistable, a.in_weight_semigroup) == \
        (b.sigma_in_S, b.semistable, b.in_weight_semigroup)


# -- saturation probe --------------------------------------------------------

@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dynkin_fixtures_are_consistent(seed):
    rng = random.Random(seed)
    q = rng.choice([a_n(2), a_n(3), a_n(3, "<>"), d4(">>>"), d4("<<>")])
    beta = [rng.randint(0, 2) for _ in q.vertices]
    cands = weights(q, beta, 1, 3)
    if not cands:
        return
    d = QuiverDatum(random_representation(q, beta, rng), rng.choice(cands))
    rep = saturation_probe(d, n_max=2)
    assert rep.erp_status == CONSISTENT_ERP


def test_row_units_probe(E):
    rep = saturation_probe(kronecker_datum([E(0, 0), E(0, 1)]), n_max=3)
    assert rep.erp_status == CONSISTENT_ERP and rep.witness is None and rep.capacity == ZERO
    assert [dec.answer for dec in rep.decisions] == [NO, NO, NO]


def test_zero_weight_probe(A2):
    rep = saturation_probe(QuiverDatum(Representation(A2, (1, 1), {}), (0, 0)))
    assert rep.erp_status == CONSISTENT_ERP and rep.witness == 1


def test_skew_symmetric_witness():
    # three 3x3 skew-symmetric matrices: every combination is singular,
    # but the doubled weight admits a non-singular combination
    rep = saturation_probe(skew3_datum(), n_max=2)
    assert rep.erp_status == WITNESSED_NON_SATURATED and rep.witness == 2
    assert rep.capacity == POSITIVE
    assert rep.decisions[0].method == "symbolic" and rep.decisions[0].proof_zero
    assert rep.to_dict()["per_n"][1]["answer"] == YES


def test_randomized_probe_cannot_witness():
    rep = saturation_probe(skew3_datum(), n_max=2, mode="randomized")
    assert rep.erp_status == INCONCLUSIVE and rep.witness == 2


def test_probe_validates_n_max(E):
    with pytest.raises(ValueError):
        saturation_probe(kronecker_datum([E(0, 0)]), n_max=0)
