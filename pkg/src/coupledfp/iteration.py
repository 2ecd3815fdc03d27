"""Picard iteration Z_{n+1} = T(Z_n) on X x X with error bounds."""

from __future__ import annotations

import csv
import enum
import io
import json
import logging
import warnings
from dataclasses import dataclass, field
from typing import Any, Optional

from .product_space import (
    CoupledMap,
    OrderedMetricSpace,
    ProductPoint,
    lift,
    product_comparable,
    product_distance,
    product_leq,
    verify_bound_oracle,
)

log = logging.getLogger(__name__)

TRACE_COLUMNS = ("n", "d2_step", "bound", "monotone_ok")

# Hypothesis pair used for the starting point. The displayed statement of
# the existence theorem prints "y0 <= F(y0, x0)" in its first alternative;
# the proof and the worked example use "y0 >= F(y0, x0)", which is what the
# product order needs. We follow the proof.
BRANCH_CONVENTION = (
    "lower branch: x0 <= F(x0,y0) and y0 >= F(y0,x0); "
    "upper branch: x0 >= F(x0,y0) and y0 <= F(y0,x0)"
)


class Branch(enum.Enum):
    LOWER = "LowerBranch"
    UPPER = "UpperBranch"
    NEITHER = "Neither"


class StoppingRule(enum.Enum):
    A_PRIORI = "APriori"
    A_POSTERIORI = "APosteriori"
    STEP_SIZE = "StepSize"


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    NON_CONTRACTIVE_STEP = "NonContractiveStep"
    ORDER_VIOLATION = "OrderViolation"


@dataclass(frozen=True)
class IterationConfig:
    contraction_k: float
    tolerance: float = 1e-10
    max_iterations: int = 10_000
    stopping_rule: StoppingRule = StoppingRule.A_POSTERIORI
    # consecutive growing steps tolerated before giving up
    noncontractive_patience: int = 3

    def __post_init__(self):
        if not 0.0 <= self.contraction_k < 1.0:
            raise ValueError(f"contraction_k must lie in [0, 1), got {self.contraction_k}")
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer")
        if self.noncontractive_patience < 1:
            raise ValueError("noncontractive_patience must be a positive integer")


@dataclass(frozen=True)
class TraceStep:
    """Record for step n.

    ``step_distance`` is d2(Z_{n+1}, Z_n) and ``bound_value`` bounds the
    distance from Z_{n+1} (the newest iterate) to the fixed point under the
    configured stopping rule.
    """

    n: int
    iterate: ProductPoint
    step_distance: float
    monotone_ok: bool
    bound_value: float


@dataclass
class IterationTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def append(self, step: TraceStep):
        self.steps.append(step)

    @property
    def iterates(self) -> list[ProductPoint]:
        return [s.iterate for s in self.steps]

    @property
    def step_distances(self) -> list[float]:
        return [s.step_distance for s in self.steps]

    def step_ratios(self) -> list[float]:
        """d2(Z_{n+1}, Z_n) / d2(Z_n, Z_{n-1}) for n >= 1 (skips zero denominators)."""
        d = self.step_distances
        return [b / a for a, b in zip(d, d[1:]) if a > 0.0]

    def records(self) -> list[dict]:
        return [
            {
                "n": s.n,
                "d2_step": s.step_distance,
                "bound": s.bound_value,
                "monotone_ok": s.monotone_ok,
            }
            for s in self.steps
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TRACE_COLUMNS, lineterminator="\n")
        w.writeheader()
        for rec in self.records():
            w.writerow({**rec, "d2_step": repr(rec["d2_step"]), "bound": repr(rec["bound"])})
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.records(), indent=1)


@dataclass
class SolveResult:
    status: Status
    final: ProductPoint
    trace: IterationTrace
    branch: Branch
    initial: ProductPoint
    config: IterationConfig
    residual: Optional[float] = None
    coupled_map: Optional[CoupledMap] = field(default=None, repr=False)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    @property
    def iterations(self) -> int:
        return len(self.trace)


def a_priori_bound(k: float, d1: float, n: int) -> float:
    """k**n / (1 - k) * d1, the bound on d2(Z_n, fixed point) given d1 = d2(Z_1, Z_0)."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"a priori bound needs 0 <= k < 1, got {k}")
    if d1 < 0 or n < 0:
        raise ValueError("d1 and n must be nonnegative")
    return k**n / (1.0 - k) * d1


def a_posteriori_bound(k: float, last_step: float) -> float:
    """k / (1 - k) * d2(Z_{n+1}, Z_n), the bound on d2(Z_{n+1}, fixed point)."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"a posteriori bound needs 0 <= k < 1, got {k}")
    if last_step < 0:
        raise ValueError("last_step must be nonnegative")
    return k / (1.0 - k) * last_step


def check_initial(F: CoupledMap, space: OrderedMetricSpace, x0, y0) -> Branch:
    """Classify (x0, y0) as a lower start, an upper start, or neither."""
    fx = F(x0, y0)
    fy = F(y0, x0)
    if space.leq(x0, fx) and space.leq(fy, y0):
        return Branch.LOWER
    if space.leq(fx, x0) and space.leq(y0, fy):
        return Branch.UPPER
    return Branch.NEITHER


def _bound(rule: StoppingRule, k: float, d1: float, step: float, n: int) -> float:
    if rule is StoppingRule.A_PRIORI:
        return a_priori_bound(k, d1, n + 1)
    if rule is StoppingRule.A_POSTERIORI:
        return a_posteriori_bound(k, step)
    return step


def solve(
    F: CoupledMap,
    space: OrderedMetricSpace,
    Z0,
    config: IterationConfig,
) -> SolveResult:
    """Run the Picard iteration of the lifted operator from ``Z0``.

    Stops once the stopping rule's bound is at most ``config.tolerance`` and
    the fixed-point residual d2(T(Z), Z) confirms it. Monotonicity of the
    orbit is recorded per step in the product order matching the starting
    branch. When the start is on neither branch a warning is issued and the
    run ends with ``OrderViolation`` as soon as two consecutive iterates are
    incomparable (the contraction hypothesis only covers comparable pairs).
    """
    T = lift(F)
    Z = ProductPoint(*Z0)
    branch = check_initial(F, space, Z.first, Z.second)
    if branch is Branch.NEITHER:
        warnings.warn(
            "initial pair satisfies neither starting condition; "
            "convergence is not guaranteed (" + BRANCH_CONVENTION + ")",
            RuntimeWarning,
            stacklevel=2,
        )
    k = config.contraction_k
    tol = config.tolerance
    trace = IterationTrace()
    d1 = None
    prev_step = None
    growing = 0
    residual = None
    status = Status.MAX_ITERATIONS
    final = Z

    Znext = T(Z)
    for n in range(config.max_iterations):
        step = product_distance(space, Znext, Z)
        if d1 is None:
            d1 = step
        if branch is Branch.LOWER:
            mono = product_leq(space, Z, Znext)
        elif branch is Branch.UPPER:
            mono = product_leq(space, Znext, Z)
        else:
            mono = product_comparable(space, Z, Znext)
        bound = _bound(config.stopping_rule, k, d1, step, n)
        trace.append(TraceStep(n, Z, step, mono, bound))
        final = Znext

        if branch is Branch.NEITHER and not mono:
            status = Status.ORDER_VIOLATION
            break
        if prev_step is not None and step > prev_step:
            growing += 1
            if growing >= config.noncontractive_patience:
                status = Status.NON_CONTRACTIVE_STEP
                break
        else:
            growing = 0
        prev_step = step

        Zafter = T(Znext)
        if bound <= tol:
            residual = product_distance(space, Zafter, Znext)
            if residual <= tol:
                status = Status.CONVERGED
                break
        Z, Znext = Znext, Zafter

    log.debug("solve finished: %s after %d steps", status.value, len(trace))
    return SolveResult(
        status=status,
        final=final,
        trace=trace,
        branch=branch,
        initial=ProductPoint(*Z0),
        config=config,
        residual=residual,
        coupled_map=F,
    )


@dataclass
class UniquenessReport:
    """Which uniqueness / equal-component hypotheses could be established.

    Each hypothesis status is one of ``"holds"``, ``"fails"``,
    ``"spot-checked"`` (bound oracle verified on the computed pair only) or
    ``"not verifiable"``.
    """

    unique_coupled_fixed_point: str
    components_equal_by_bounds: str
    components_equal_by_comparable_start: str
    component_gap: float
    components_equal: Optional[bool]
    fixed_point_residual: Optional[float]
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        return {
            "unique_coupled_fixed_point": self.unique_coupled_fixed_point,
            "components_equal_by_bounds": self.components_equal_by_bounds,
            "components_equal_by_comparable_start": self.components_equal_by_comparable_start,
            "component_gap": self.component_gap,
            "components_equal": self.components_equal,
            "fixed_point_residual": self.fixed_point_residual,
            "notes": list(self.notes),
        }


def uniqueness_report(
    space: OrderedMetricSpace,
    result: SolveResult,
    F: Optional[CoupledMap] = None,
    atol: Optional[float] = None,
) -> UniquenessReport:
    """Report the uniqueness and equal-components hypotheses for a finished run.

    Uses the space's capability flags, the bound oracle on the computed pair
    and comparability of the starting pair. Whenever one of the
    equal-components hypotheses holds, the gap d(x, y) of the computed pair
    is checked against the tolerance and F(x, x) = x is verified.
    """
    F = F if F is not None else result.coupled_map
    atol = result.config.tolerance if atol is None else atol
    xbar, ybar = result.final
    x0, y0 = result.initial
    notes = []
    if not result.converged:
        notes.append(f"run did not converge ({result.status.value}); conclusions are provisional")

    if space.every_pair_bounded_in_X2:
        uniq = "holds"
    else:
        uniq = "not verifiable"
        notes.append("uniqueness not verifiable: no declared bounds for pairs in X x X")

    if space.every_pair_bounded_in_X:
        by_bounds = "holds"
    else:
        ok = verify_bound_oracle(space, xbar, ybar)
        if ok is None:
            by_bounds = "not verifiable"
        elif ok:
            by_bounds = "spot-checked"
        else:
            by_bounds = "fails"
            notes.append("bound oracle returned a point that does not bound the computed pair")

    by_start = "holds" if space.comparable(x0, y0) else "fails"

    gap = space.dist(xbar, ybar)
    equal = None
    fp_res = None
    if "holds" in (by_bounds, by_start) or by_bounds == "spot-checked":
        # 10x slack: the gap is controlled by the same bound as the iterate error
        equal = gap <= 10.0 * atol
        if F is not None:
            fp_res = space.dist(F(xbar, xbar), xbar)
        if not equal:
            notes.append(f"components differ by {gap:.3e} despite an equal-components hypothesis")
    return UniquenessReport(uniq, by_bounds, by_start, gap, equal, fp_res, notes)
