"""Ordered metric spaces, the product space X x X and the lifted operator.

A space is described by plain callables rather than a closed type, so that
points may be floats, numpy arrays or anything else the user's distance and
order understand.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Optional

import numpy as np

from .errors import MetricError

CoupledMap = Callable[[Any, Any], Any]


@dataclass(frozen=True)
class Bound:
    """Result of a bound oracle: a point and whether it bounds from above."""

    point: Any
    upper: bool


@dataclass(frozen=True)
class OrderedMetricSpace:
    """A set X with a metric ``distance`` and a partial order ``leq``.

    ``bound_oracle(x, y)`` may return a :class:`Bound` for the pair, or None
    when it cannot produce one. The two capability flags declare the
    lattice-like properties used by the uniqueness results: every pair of X
    has an upper or lower bound in X, and likewise for pairs of X x X.
    """

    distance: Callable[[Any, Any], float]
    leq: Callable[[Any, Any], bool]
    bound_oracle: Optional[Callable[[Any, Any], Optional[Bound]]] = None
    every_pair_bounded_in_X: bool = False
    every_pair_bounded_in_X2: bool = False
    name: str = "X"

    def dist(self, x, y) -> float:
        """Distance with a sanity check on the returned value."""
        d = float(self.distance(x, y))
        if not math.isfinite(d) or d < 0.0:
            raise MetricError(f"distance returned {d!r} on space {self.name}")
        return d

    def comparable(self, x, y) -> bool:
        return bool(self.leq(x, y) or self.leq(y, x))


class ProductPoint(NamedTuple):
    """An element Z = (x, y) of X x X."""

    first: Any
    second: Any

    def swapped(self) -> "ProductPoint":
        return ProductPoint(self.second, self.first)


def real_line() -> OrderedMetricSpace:
    """The real line with |x - y| and the usual (total) order."""

    def bound(x, y):
        return Bound(max(x, y), upper=True)

    return OrderedMetricSpace(
        distance=lambda x, y: abs(x - y),
        leq=lambda x, y: x <= y,
        bound_oracle=bound,
        every_pair_bounded_in_X=True,
        every_pair_bounded_in_X2=True,
        name="R",
    )


def sup_norm_space(scale: float = 1.0, name: str = "grid") -> OrderedMetricSpace:
    """Real arrays with the max-distance and the pointwise order.

    Used for R^n and for grid functions, where the max over nodes stands in
    for the sup over the interval. Pointwise max/min give bounds for every
    pair, so both capability flags hold.
    """

    def distance(x, y):
        return scale * float(np.max(np.abs(np.asarray(x) - np.asarray(y))))

    def leq(x, y):
        return bool(np.all(np.asarray(x) <= np.asarray(y)))

    def bound(x, y):
        return Bound(np.maximum(x, y), upper=True)

    return OrderedMetricSpace(
        distance=distance,
        leq=leq,
        bound_oracle=bound,
        every_pair_bounded_in_X=True,
        every_pair_bounded_in_X2=True,
        name=name,
    )


def product_distance(space: OrderedMetricSpace, Y: ProductPoint, V: ProductPoint) -> float:
    """d2(Y, V) = (d(x, u) + d(y, v)) / 2."""
    return 0.5 * (space.dist(Y[0], V[0]) + space.dist(Y[1], V[1]))


def product_leq(space: OrderedMetricSpace, V: ProductPoint, Y: ProductPoint) -> bool:
    """Product order: (u, v) <= (x, y) iff u <= x and y <= v."""
    return bool(space.leq(V[0], Y[0]) and space.leq(Y[1], V[1]))


def product_comparable(space: OrderedMetricSpace, Y: ProductPoint, V: ProductPoint) -> bool:
    return product_leq(space, V, Y) or product_leq(space, Y, V)


def lift(F: CoupledMap) -> Callable[[ProductPoint], ProductPoint]:
    """Return T(x, y) = (F(x, y), F(y, x)).

    Fixed points of T are exactly the coupled fixed points of F.
    """

    def T(Z):
        x, y = Z
        return ProductPoint(F(x, y), F(y, x))

    return T


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    points: tuple
    detail: str


def verify_metric_axioms(space: OrderedMetricSpace, sample, atol: float = 1e-12) -> list[AxiomViolation]:
    """Check identity, symmetry and the triangle inequality on a sample.

    All pairs and triples (with repetition) of ``sample`` are visited. The
    raw ``space.distance`` is used so that signed or otherwise broken
    distances show up as violations instead of exceptions. An empty list
    means nothing was falsified.
    """
    pts = list(sample)
    if not pts:
        raise ValueError("sample must be nonempty")
    d = space.distance
    out: list[AxiomViolation] = []
    for x in pts:
        dxx = float(d(x, x))
        if abs(dxx) > atol:
            out.append(AxiomViolation("identity", (x,), f"d(x,x)={dxx}"))
    for x, y in itertools.combinations(pts, 2):
        dxy, dyx = float(d(x, y)), float(d(y, x))
        if dxy < -atol or dyx < -atol:
            out.append(AxiomViolation("nonnegativity", (x, y), f"d={dxy}, {dyx}"))
        if abs(dxy - dyx) > atol:
            out.append(AxiomViolation("symmetry", (x, y), f"d(x,y)={dxy} != d(y,x)={dyx}"))
    for x, y, z in itertools.product(pts, repeat=3):
        lhs = float(d(x, z))
        rhs = float(d(x, y)) + float(d(y, z))
        if lhs > rhs + atol:
            out.append(AxiomViolation("triangle", (x, y, z), f"{lhs} > {rhs}"))
    return out


def verify_order_axioms(space: OrderedMetricSpace, sample, atol: float = 1e-12) -> list[AxiomViolation]:
    """Reflexivity, transitivity and antisymmetry (modulo distance 0)."""
    pts = list(sample)
    out: list[AxiomViolation] = []
    for x in pts:
        if not space.leq(x, x):
            out.append(AxiomViolation("reflexivity", (x,), "x <= x fails"))
    for x, y in itertools.product(pts, repeat=2):
        if space.leq(x, y) and space.leq(y, x) and float(space.distance(x, y)) > atol:
            out.append(AxiomViolation("antisymmetry", (x, y), "x <= y <= x but d(x,y) > 0"))
    for x, y, z in itertools.product(pts, repeat=3):
        if space.leq(x, y) and space.leq(y, z) and not space.leq(x, z):
            out.append(AxiomViolation("transitivity", (x, y, z), "x <= y <= z but not x <= z"))
    return out


def verify_bound_oracle(space: OrderedMetricSpace, x, y) -> Optional[bool]:
    """Whether the oracle's bound for (x, y) really bounds both points.

    Returns None when there is no oracle or it declines the pair.
    """
    if space.bound_oracle is None:
        return None
    b = space.bound_oracle(x, y)
    if b is None:
        return None
    if b.upper:
        return bool(space.leq(x, b.point) and space.leq(y, b.point))
    return bool(space.leq(b.point, x) and space.leq(b.point, y))
