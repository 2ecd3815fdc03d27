"""Sampling probes for mixed monotonicity and the two contractive conditions.

Both contractive conditions quantify over comparable pairs (x, y) >= (u, v),
i.e. x >= u and y <= v. The probes draw such pairs from a seeded sampler and
report the largest ratio seen together with the pair attaining it. They can
falsify a claimed constant; they cannot certify one.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import DegenerateSample
from .product_space import CoupledMap, OrderedMetricSpace, ProductPoint, product_leq

DEFAULT_SAMPLES = 10_000


class Condition(enum.Enum):
    SYMMETRIC = "SymmetricEq8"
    BHASKAR = "BhaskarEq5"


@dataclass(frozen=True)
class Sampler:
    """Seeded source of points and comparable product pairs.

    ``draw_point(rng)`` returns an X-point; ``draw_comparable_pair(rng)``
    returns ``(Y, V)`` with V <= Y in the product order. Every call to
    :meth:`rng` restarts the stream, so two probes run with the same sampler
    see the same samples.
    """

    draw_point: Callable[[np.random.Generator], Any]
    draw_comparable_pair: Callable[[np.random.Generator], tuple]
    seed: int = 0

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def pairs(self, n: int) -> list[tuple[ProductPoint, ProductPoint]]:
        rng = self.rng()
        out = []
        for _ in range(n):
            Y, V = self.draw_comparable_pair(rng)
            out.append((ProductPoint(*Y), ProductPoint(*V)))
        return out

    def with_seed(self, seed: int) -> "Sampler":
        return Sampler(self.draw_point, self.draw_comparable_pair, seed)


def _offsets(rng, draw):
    """Two nonnegative offsets, one of them possibly exactly zero.

    A quarter of the draws zero the first offset and a quarter the second:
    suprema of the contraction ratios typically sit on those faces of the
    comparable cone (for the (x - 3y)/5 example the Bhaskar ratio peaks at
    x = u).
    """
    face = rng.integers(4)
    a, b = draw(), draw()
    if face == 0:
        a = a * 0.0
    elif face == 1:
        b = b * 0.0
    return a, b


def real_line_sampler(seed: int = 0, scale: float = 10.0) -> Sampler:
    """Comparable pairs on R: draw (u, y), then x = u + dx, v = y + dv with dx, dv >= 0."""

    def point(rng):
        return float(rng.uniform(-scale, scale))

    def pair(rng):
        u = point(rng)
        y = point(rng)
        dx, dv = _offsets(rng, lambda: float(rng.uniform(0.0, scale)) + 1e-3)
        return (u + dx, y), (u, y + dv)

    return Sampler(point, pair, seed)


def grid_function_sampler(n_nodes: int, period: float = 1.0, seed: int = 0,
                          scale: float = 1.0, modes: int = 4) -> Sampler:
    """Comparable pairs of grid functions under the pointwise order.

    Points are random trigonometric polynomials on nodes t_i = i*T/(n_nodes-1);
    offsets are strictly positive smooth functions or exactly zero.
    """
    t = np.linspace(0.0, period, n_nodes)
    k = np.arange(1, modes + 1)
    phase = 2.0 * np.pi * np.outer(t, k) / period

    def point(rng):
        c = rng.normal(size=modes) / k
        s = rng.normal(size=modes) / k
        a0 = rng.normal()
        return scale * (a0 + np.cos(phase) @ c + np.sin(phase) @ s)

    def positive(rng):
        f = point(rng)
        return f - f.min() + scale * rng.uniform(0.01, 1.0)

    def pair(rng):
        u = point(rng)
        y = point(rng)
        dx, dv = _offsets(rng, lambda: positive(rng))
        return (u + dx, y), (u, y + dv)

    return Sampler(point, pair, seed)


@dataclass(frozen=True)
class MonotonicityViolation:
    kind: str  # "x" (not nondecreasing in x) or "y" (not nonincreasing in y)
    low: Any
    high: Any
    other: Any


def probe_mixed_monotone(F: CoupledMap, space: OrderedMetricSpace, sampler: Sampler,
                         n: int = DEFAULT_SAMPLES) -> list[MonotonicityViolation]:
    """Look for witnesses against mixed monotonicity of F.

    Each sampled comparable pair (x, y) >= (u, v) supplies u <= x and
    y <= v; with an extra free point w we test F(u, w) <= F(x, w) and
    F(w, y) >= F(w, v).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = sampler.rng()
    out = []
    for _ in range(n):
        (x, y), (u, v) = sampler.draw_comparable_pair(rng)
        w = sampler.draw_point(rng)
        if not space.leq(F(u, w), F(x, w)):
            out.append(MonotonicityViolation("x", u, x, w))
        if not space.leq(F(w, v), F(w, y)):
            out.append(MonotonicityViolation("y", y, v, w))
    return out


@dataclass
class ContractionReport:
    condition: Condition
    k_hat: float
    witness: tuple[ProductPoint, ProductPoint] | None
    samples_used: int
    seed: int
    ratios: np.ndarray = field(repr=False)

    @property
    def spread(self) -> float:
        """max - min of the recorded ratios."""
        return float(np.ptp(self.ratios)) if self.ratios.size else 0.0

    def as_dict(self) -> dict:
        return {
            "condition": self.condition.value,
            "k_hat": self.k_hat,
            "witness": _jsonable(self.witness),
            "samples_used": self.samples_used,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1)


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (tuple, list)):
        return [_jsonable(o) for o in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _ratios(F, space, pairs, condition):
    """Per-pair ratios; degenerate pairs (zero denominator) are dropped."""
    vals = []
    kept = []
    for Y, V in pairs:
        (x, y), (u, v) = Y, V
        den = space.dist(x, u) + space.dist(y, v)
        if den == 0.0:
            continue
        a = space.dist(F(x, y), F(u, v))
        b = space.dist(F(y, x), F(v, u))
        if condition is Condition.SYMMETRIC:
            vals.append((a + b) / den)
            kept.append((Y, V))
        else:
            # (v, u) >= (y, x) is comparable too, so both terms are
            # instances of the one-sided condition
            vals.append(2.0 * max(a, b) / den)
            kept.append((Y, V) if a >= b else ((v, u), (y, x)))
    return np.asarray(vals, dtype=float), kept


def _estimate(F, space, sampler, n, condition):
    if n < 1:
        raise ValueError("n must be >= 1")
    pairs = sampler.pairs(n)
    ratios, kept = _ratios(F, space, pairs, condition)
    if ratios.size == 0:
        raise DegenerateSample(f"all {n} sampled pairs have zero distance")
    i = int(np.argmax(ratios))  # first maximiser, independent of evaluation order
    Y, V = kept[i]
    return ContractionReport(condition, float(ratios[i]), (ProductPoint(*Y), ProductPoint(*V)),
                             int(ratios.size), sampler.seed, ratios)


def estimate_k_symmetric(F: CoupledMap, space: OrderedMetricSpace, sampler: Sampler,
                         n: int = DEFAULT_SAMPLES) -> ContractionReport:
    """Largest observed [d(F(x,y),F(u,v)) + d(F(y,x),F(v,u))] / [d(x,u) + d(y,v)]."""
    return _estimate(F, space, sampler, n, Condition.SYMMETRIC)


def estimate_k_bhaskar(F: CoupledMap, space: OrderedMetricSpace, sampler: Sampler,
                       n: int = DEFAULT_SAMPLES) -> ContractionReport:
    """Smallest k consistent with d(F(x,y),F(u,v)) <= k/2 [d(x,u) + d(y,v)] on the samples."""
    return _estimate(F, space, sampler, n, Condition.BHASKAR)


@dataclass
class ComparisonReport:
    symmetric: ContractionReport
    bhaskar: ContractionReport
    verdict: str  # "both", "Eq8 only", "Eq5 only" or "neither"

    def as_dict(self) -> dict:
        return {
            "symmetric": self.symmetric.as_dict(),
            "bhaskar": self.bhaskar.as_dict(),
            "verdict": self.verdict,
        }


def compare_conditions(F: CoupledMap, space: OrderedMetricSpace, sampler: Sampler,
                       n: int = DEFAULT_SAMPLES) -> ComparisonReport:
    """Estimate both constants on the same samples and say which stay below 1."""
    sym = estimate_k_symmetric(F, space, sampler, n)
    bha = estimate_k_bhaskar(F, space, sampler, n)
    s_ok, b_ok = sym.k_hat < 1.0, bha.k_hat < 1.0
    if s_ok and b_ok:
        verdict = "both"
    elif s_ok:
        verdict = "Eq8 only"
    elif b_ok:
        verdict = "Eq5 only"
    else:
        verdict = "neither"
    return ComparisonReport(sym, bha, verdict)


def check_pairs_comparable(space: OrderedMetricSpace, pairs) -> bool:
    return all(product_leq(space, V, Y) for Y, V in pairs)
