import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coupledfp.errors import MetricError
from coupledfp.product_space import (
    OrderedMetricSpace,
    ProductPoint,
    lift,
    product_distance,
    product_leq,
    real_line,
    sup_norm_space,
    verify_bound_oracle,
    verify_metric_axioms,
    verify_order_axioms,
)
from oracles import brute_force_triangle_violations

finite = st.floats(-1e6, 1e6, allow_nan=False)
RL = real_line()


@pytest.mark.parametrize(
    "Y, V, expected",
    [
        ((0.0, 0.0), (0.0, 0.0), 0.0),
        ((-3.0, 3.0), (0.0, 0.0), 3.0),
        ((1.0, 2.0), (4.0, 6.0), 3.5),
    ],
)
def test_product_distance_examples(R, Y, V, expected):
    assert product_distance(R, ProductPoint(*Y), ProductPoint(*V)) == expected


def test_product_distance_rejects_bad_distance():
    space = OrderedMetricSpace(distance=lambda x, y: float("nan"), leq=lambda x, y: x <= y)
    with pytest.raises(MetricError):
        product_distance(space, ProductPoint(0, 0), ProductPoint(1, 1))


def test_product_leq_examples(R):
    assert product_leq(R, ProductPoint(1, 5), ProductPoint(2, 3))
    assert product_leq(R, ProductPoint(0, 0), ProductPoint(0, 0))
    assert not product_leq(R, ProductPoint(1, 1), ProductPoint(2, 2))
    assert not product_leq(R, ProductPoint(2, 2), ProductPoint(1, 1))


def test_lift_examples(F1):
    T = lift(F1)
    x, y = T(ProductPoint(-3.0, 3.0))
    assert x == pytest.approx(-12 / 5, abs=1e-15)
    assert y == pytest.approx(12 / 5, abs=1e-15)
    assert T(ProductPoint(0.0, 0.0)) == (0.0, 0.0)
    Tc = lift(lambda a, b: 7.5)
    for Z in [(0, 0), (-1, 3), (1e6, -2)]:
        assert Tc(ProductPoint(*Z)) == (7.5, 7.5)


def test_metric_axioms_abs(R):
    assert verify_metric_axioms(R, [-1.0, 0.0, 2.0]) == []


def test_metric_axioms_signed_distance_breaks_symmetry():
    space = OrderedMetricSpace(distance=lambda x, y: x - y, leq=lambda x, y: x <= y)
    found = verify_metric_axioms(space, [0.0, 1.0])
    assert any(v.axiom == "symmetry" for v in found)


def test_metric_axioms_squared_distance_breaks_triangle():
    d = lambda x, y: (x - y) ** 2
    pts = [0.0, 1.0, 2.0]
    expected = brute_force_triangle_violations(d, pts)
    assert (0.0, 1.0, 2.0) in expected
    found = verify_metric_axioms(OrderedMetricSpace(distance=d, leq=lambda x, y: x <= y), pts)
    got = {v.points for v in found if v.axiom == "triangle"}
    assert got == set(expected)


def test_metric_axioms_needs_sample(R):
    with pytest.raises(ValueError):
        verify_metric_axioms(R, [])


def test_order_axioms_grid_space():
    rng = np.random.default_rng(0)
    pts = [rng.integers(-1, 2, size=3).astype(float) for _ in range(12)]
    assert verify_order_axioms(sup_norm_space(), pts) == []


def test_order_axioms_detects_nontransitive():
    # "x <= y" iff |x - y| <= 1 is reflexive but not transitive
    space = OrderedMetricSpace(distance=lambda x, y: abs(x - y), leq=lambda x, y: abs(x - y) <= 1)
    found = verify_order_axioms(space, [0.0, 1.0, 2.0])
    assert any(v.axiom == "transitivity" for v in found)


def test_bound_oracle(R):
    assert verify_bound_oracle(R, 1.0, -4.0) is True
    bare = OrderedMetricSpace(distance=lambda x, y: abs(x - y), leq=lambda x, y: x <= y)
    assert verify_bound_oracle(bare, 1.0, 2.0) is None


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=3, max_size=3))
def test_d2_metric_axioms_on_random_triples(triple):
    A, B, C = (ProductPoint(*p) for p in triple)
    dab = product_distance(RL, A, B)
    assert product_distance(RL, A, A) == 0.0
    assert dab == product_distance(RL, B, A)
    assert product_distance(RL, A, C) <= dab + product_distance(RL, B, C) + 1e-9 * (1 + dab)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=3, max_size=3))
def test_product_order_is_partial_order(triple):
    A, B, C = (ProductPoint(*p) for p in triple)
    assert product_leq(RL, A, A)
    if product_leq(RL, A, B) and product_leq(RL, B, C):
        assert product_leq(RL, A, C)
    if product_leq(RL, A, B) and product_leq(RL, B, A):
        assert product_distance(RL, A, B) == 0.0


@given(finite, finite, finite, finite)
def test_product_order_definition_round_trip(u, v, x, y):
    assert product_leq(RL, ProductPoint(u, v), ProductPoint(x, y)) == (x >= u and y <= v)


@given(finite, finite)
def test_fixed_point_correspondence(a, b):
    # F(x, y) = (x + y)/2 has every (c, c) as a coupled fixed point
    F = lambda x, y: (x + y) / 2.0
    for Z in [ProductPoint(a, a), ProductPoint(a, b)]:
        TZ = lift(F)(Z)
        if product_distance(RL, TZ, Z) == 0.0:
            assert F(Z.first, Z.second) == Z.first
            assert F(Z.second, Z.first) == Z.second
