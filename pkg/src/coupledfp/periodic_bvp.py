"""Periodic problem u' = f(t, u) + g(t, u), u(0) = u(T), via coupled fixed points.

The first-order system

    u' + l1 u - l2 v = f(t, u) + g(t, v) + l1 u - l2 v
    v' + l1 v - l2 u = f(t, v) + g(t, u) + l1 v - l2 u

with periodic ends is rewritten through Green's kernels as u = A[u, v],
v = A[v, u] and solved with the Picard iteration of the lifted operator on
grid functions with the max-distance.

Kernels. With w = u + v and z = u - v the system decouples into two scalar
periodic problems with exponents tau2 = l2 - l1 (for w) and
tau1 = -(l1 + l2) (for z). Writing

    K_tau(r) = exp(tau r) / (1 - exp(tau T)),  r = (t - s) mod T,

the kernels are G1 = (K_tau1 + K_tau2) / 2 and G2 = (K_tau2 - K_tau1) / 2, so
that G1 - G2 = K_tau1 integrates to 1 / (l1 + l2) in s.

Both kernels jump by +-1/2 across s = t. Tables store the s < t branch on
the diagonal; the quadrature splits the diagonal trapezoid weight between
the two one-sided limits so each smooth piece gets a second-order rule.

User functions f(t, u) and g(t, u) must accept numpy arrays and broadcast.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .errors import NonFiniteIntegrand, PreconditionFailed, SingularKernel
from .iteration import (
    IterationConfig,
    SolveResult,
    StoppingRule,
    solve,
    uniqueness_report,
)
from .product_space import ProductPoint, sup_norm_space

SIGN_LHS = math.log((2.0 * math.e - 1.0) / math.e)
DENOM_EPS = 1e-12
DEFAULT_GRID_N = 256

RealFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class BvpSpec:
    f: RealFn
    g: RealFn
    lambda1: float
    lambda2: float
    mu1: float
    mu2: float
    T: float
    grid_n: int = DEFAULT_GRID_N

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "mu1", "mu2", "T"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be a positive real, got {val!r}")
        if int(self.grid_n) != self.grid_n or self.grid_n < 2:
            raise ValueError(f"grid_n must be an integer >= 2, got {self.grid_n!r}")

    @property
    def h(self) -> float:
        return self.T / self.grid_n

    @property
    def nodes(self) -> np.ndarray:
        return grid_nodes(self.T, self.grid_n)

    @property
    def tau1(self) -> float:
        return -(self.lambda1 + self.lambda2)

    @property
    def tau2(self) -> float:
        return self.lambda2 - self.lambda1

    def with_grid(self, grid_n: int) -> "BvpSpec":
        return BvpSpec(self.f, self.g, self.lambda1, self.lambda2, self.mu1, self.mu2, self.T, grid_n)


def grid_nodes(T: float, grid_n: int) -> np.ndarray:
    """t_i = i T / grid_n, i = 0..grid_n."""
    return np.arange(grid_n + 1) * (T / grid_n)


# --- kernels -----------------------------------------------------------------


def _periodic_green(tau: float, T: float, r: np.ndarray) -> np.ndarray:
    den = 1.0 - math.exp(tau * T)
    if abs(den) < DENOM_EPS:
        raise SingularKernel(f"|1 - exp(tau T)| = {abs(den):.3e} for tau = {tau}, T = {T}")
    return np.exp(tau * r) / den


def green_kernels(lambda1: float, lambda2: float, T: float, r) -> tuple[np.ndarray, np.ndarray]:
    """G1, G2 as functions of the periodic lag r = (t - s) mod T in [0, T]."""
    r = np.asarray(r, dtype=float)
    k1 = _periodic_green(-(lambda1 + lambda2), T, r)
    k2 = _periodic_green(lambda2 - lambda1, T, r)
    return 0.5 * (k1 + k2), 0.5 * (k2 - k1)


@dataclass(frozen=True)
class KernelTable:
    """Kernel values G_k(t_i, s_j) on the grid, plus quadrature matrices.

    ``Q1``/``Q2`` already carry the trapezoid weights and the split diagonal,
    so A[u, v](t_i) = sum_j Q1[i, j] b1[j] + Q2[i, j] b2[j].
    """

    t: np.ndarray
    G1: np.ndarray
    G2: np.ndarray
    Q1: np.ndarray = field(repr=False)
    Q2: np.ndarray = field(repr=False)


def kernel_tables(spec: BvpSpec) -> KernelTable:
    t = spec.nodes
    n, h, T = spec.grid_n, spec.h, spec.T
    diff = t[:, None] - t[None, :]
    # s <= t uses lag t - s (diagonal included), s > t uses t + T - s
    lag = np.where(diff >= 0.0, diff, diff + T)
    G1, G2 = green_kernels(spec.lambda1, spec.lambda2, T, lag)

    w = np.full(n + 1, h)
    w[0] = w[-1] = 0.5 * h
    # one-sided limits at the diagonal: lag 0 (s -> t-) and lag T (s -> t+)
    G1_ends, G2_ends = green_kernels(spec.lambda1, spec.lambda2, T, np.array([0.0, T]))
    Q = []
    for G, (g_left, g_right) in ((G1, G1_ends), (G2, G2_ends)):
        q = G * w[None, :]
        idx = np.arange(1, n)
        # interior diagonal: half weight on each one-sided limit
        q[idx, idx] = 0.5 * h * (g_left + g_right)
        q[0, 0] = 0.5 * h * g_right  # t = 0 only sees s > t
        q[n, n] = 0.5 * h * g_left  # t = T only sees s < t
        Q.append(q)
    return KernelTable(t, G1, G2, Q[0], Q[1])


def tau1_row_integrals(spec: BvpSpec, kernels: Optional[KernelTable] = None) -> np.ndarray:
    """Quadrature of the s-integral of G1 - G2 (the tau1 part) at every node.

    The exact value is 1 / (lambda1 + lambda2) for every t.
    """
    kt = kernels if kernels is not None else kernel_tables(spec)
    return np.sum(kt.Q1 - kt.Q2, axis=1)


# --- hypothesis checks ---------------------------------------------------------


@dataclass
class SignConditionReport:
    condition_3_8: bool
    condition_3_9: bool
    margin_3_8: float  # (l2 - l1) T - ln((2e - 1)/e)
    margin_3_9: float  # 1 - (l1 + l2) T
    min_G1: Optional[float] = None
    max_G2: Optional[float] = None
    G1_nonnegative: Optional[bool] = None
    G2_nonpositive: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.condition_3_8 and self.condition_3_9

    def as_dict(self) -> dict:
        return {
            "condition_3_8": self.condition_3_8,
            "condition_3_9": self.condition_3_9,
            "margin_3_8": self.margin_3_8,
            "margin_3_9": self.margin_3_9,
            "min_G1": self.min_G1,
            "max_G2": self.max_G2,
            "G1_nonnegative": self.G1_nonnegative,
            "G2_nonpositive": self.G2_nonpositive,
        }


def check_sign_conditions(spec: BvpSpec, atol: float = 1e-12) -> SignConditionReport:
    """Evaluate the two parameter inequalities and, if both hold, the kernel signs.

    The kernel cross-check is reported, not enforced: G1 takes negative
    values near s = t^+ for every admissible parameter set (it jumps down by
    1 across the diagonal), so only G2 <= 0 is implied by the inequalities.
    """
    m38 = (spec.lambda2 - spec.lambda1) * spec.T - SIGN_LHS
    m39 = 1.0 - (spec.lambda1 + spec.lambda2) * spec.T
    rep = SignConditionReport(m38 >= 0.0, m39 >= 0.0, m38, m39)
    if rep.passed:
        kt = kernel_tables(spec)
        rep.min_G1 = float(kt.G1.min())
        rep.max_G2 = float(kt.G2.max())
        rep.G1_nonnegative = rep.min_G1 >= -atol
        rep.G2_nonpositive = rep.max_G2 <= atol
    return rep


@dataclass
class AssumptionReport:
    condition_3_3: bool
    condition_3_4: bool
    condition_3_4_1: bool
    contraction_ratio: float
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.condition_3_3 and self.condition_3_4 and self.condition_3_4_1

    def as_dict(self) -> dict:
        return {
            "condition_3_3": self.condition_3_3,
            "condition_3_4": self.condition_3_4,
            "condition_3_4_1": self.condition_3_4_1,
            "contraction_ratio": self.contraction_ratio,
            "violations": self.violations[:20],
            "violation_count": len(self.violations),
        }


def check_assumption_3_1(spec: BvpSpec, u_grid, rtol: float = 1e-12) -> AssumptionReport:
    """Check the one-sided Lipschitz bounds on f and g over nodes and value pairs.

    For every node t and every pair v < u taken from ``u_grid``:
    0 <= (f+l1 id)(u) - (f+l1 id)(v) <= mu1 (u - v) and
    -mu2 (u - v) <= (g-l2 id)(u) - (g-l2 id)(v) <= 0.
    Comparisons allow a relative rounding slack ``rtol``.
    """
    ug = np.asarray(u_grid, dtype=float)
    if ug.ndim != 1 or ug.size < 2:
        raise ValueError("u_grid needs at least two values")
    if np.any(np.diff(ug) < 0):
        raise ValueError("u_grid must be sorted ascending")
    t = spec.nodes[:, None]
    U = ug[None, :]
    F = np.broadcast_to(spec.f(t, U) + spec.lambda1 * U, (t.shape[0], ug.size))
    G = np.broadcast_to(spec.g(t, U) - spec.lambda2 * U, (t.shape[0], ug.size))
    iv, iu = np.triu_indices(ug.size, k=1)  # iv < iu, so u_grid[iv] <= u_grid[iu]
    du = ug[iu] - ug[iv]
    dF = F[:, iu] - F[:, iv]
    dG = G[:, iu] - G[:, iv]
    slack = rtol * (1.0 + np.abs(F[:, iu]) + np.abs(F[:, iv]) + np.abs(G[:, iu]) + np.abs(G[:, iv]))

    violations = []

    def collect(mask, label):
        for i, j in zip(*np.nonzero(mask)):
            violations.append({
                "condition": label,
                "t": float(spec.nodes[i]),
                "u": float(ug[iu[j]]),
                "v": float(ug[iv[j]]),
            })
        return not mask.any()

    ok33 = collect(dF < -slack, "3.3 lower") & collect(dF > spec.mu1 * du + slack, "3.3 upper")
    ok34 = collect(dG < -spec.mu2 * du - slack, "3.4 lower") & collect(dG > slack, "3.4 upper")
    ratio = bvp_contraction_k(spec)
    return AssumptionReport(bool(ok33), bool(ok34), ratio < 1.0, ratio, violations)


def bvp_contraction_k(spec: BvpSpec) -> float:
    """(mu1 + mu2) / (lambda1 + lambda2), the symmetric contraction constant of A."""
    return (spec.mu1 + spec.mu2) / (spec.lambda1 + spec.lambda2)


def bhaskar_contraction_k(spec: BvpSpec) -> float:
    """2 max(mu1, mu2) / (lambda1 + lambda2), the constant of the one-sided condition."""
    return 2.0 * max(spec.mu1, spec.mu2) / (spec.lambda1 + spec.lambda2)


def _fd_derivative(values: np.ndarray, h: float, periodic: bool) -> np.ndarray:
    if periodic:
        core = values[:-1]
        d = (np.roll(core, -1) - np.roll(core, 1)) / (2.0 * h)
        return np.append(d, d[0])
    return np.gradient(values, h, edge_order=2)


@dataclass
class LowerUpperReport:
    alpha_inequality: bool
    beta_inequality: bool
    alpha_endpoints: bool
    beta_endpoints: bool
    condition_3_11: bool
    condition_3_12: bool
    margin_alpha: float  # min over interior nodes of rhs - alpha' + slack
    margin_beta: float
    margin_3_11: float
    margin_3_12: float
    slack: float
    remark_ratio: Optional[float]  # (beta(0)-beta(T)) / (alpha(T)-alpha(0)), informational
    violations: list[dict] = field(default_factory=list)

    @property
    def is_lower_upper(self) -> bool:
        return self.alpha_inequality and self.beta_inequality and self.alpha_endpoints and self.beta_endpoints

    @property
    def passed(self) -> bool:
        return self.is_lower_upper and self.condition_3_11 and self.condition_3_12

    def as_dict(self) -> dict:
        d = {k: v for k, v in self.__dict__.items() if k != "violations"}
        d["violations"] = self.violations[:20]
        return d


def check_lower_upper(alpha, beta, spec: BvpSpec) -> LowerUpperReport:
    """Check that (alpha, beta) is a coupled lower-upper solution.

    Derivatives are central differences. Inputs that close periodically
    (equal end values) wrap around; others use second-order one-sided
    differences at the ends. The differential inequalities are checked at
    interior nodes with slack 10 h^2 * max(1, max |rhs|); endpoint
    inequalities and the two lambda conditions are checked exactly.
    """
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    n = spec.grid_n
    if a.shape != (n + 1,) or b.shape != (n + 1,):
        raise ValueError(f"alpha/beta must have {n + 1} grid values")
    t, h, T = spec.nodes, spec.h, spec.T
    l1, l2 = spec.lambda1, spec.lambda2

    da = _fd_derivative(a, h, periodic=abs(a[0] - a[-1]) <= 1e-12 * (1.0 + abs(a[0])))
    db = _fd_derivative(b, h, periodic=abs(b[0] - b[-1]) <= 1e-12 * (1.0 + abs(b[0])))
    rhs_a = np.broadcast_to(spec.f(t, a) + spec.g(t, b), t.shape)
    rhs_b = np.broadcast_to(spec.f(t, b) + spec.g(t, a), t.shape)
    slack = 10.0 * h * h * max(1.0, float(np.max(np.abs(rhs_a))), float(np.max(np.abs(rhs_b))))

    inner = slice(1, n)
    gap_a = rhs_a[inner] - da[inner] + slack  # alpha' <= rhs
    gap_b = db[inner] - rhs_b[inner] + slack  # beta' >= rhs
    violations = []
    for label, gap in (("alpha", gap_a), ("beta", gap_b)):
        for i in np.nonzero(gap < 0.0)[0]:
            violations.append({"condition": f"{label} differential inequality", "t": float(t[i + 1]),
                               "deficit": float(-gap[i])})

    dA = a[-1] - a[0]  # alpha(T) - alpha(0)
    dB = b[0] - b[-1]  # beta(0) - beta(T)
    m311 = dA / T - (l1 * dA + l2 * dB)
    m312 = dB / T - (l1 * dB + l2 * dA)
    remark = dB / dA if dA != 0.0 else None
    return LowerUpperReport(
        alpha_inequality=bool(np.all(gap_a >= 0.0)),
        beta_inequality=bool(np.all(gap_b >= 0.0)),
        alpha_endpoints=bool(a[0] <= a[-1]),
        beta_endpoints=bool(b[0] >= b[-1]),
        condition_3_11=bool(m311 >= 0.0),
        condition_3_12=bool(m312 >= 0.0),
        margin_alpha=float(gap_a.min()) if gap_a.size else 0.0,
        margin_beta=float(gap_b.min()) if gap_b.size else 0.0,
        margin_3_11=float(m311),
        margin_3_12=float(m312),
        slack=slack,
        remark_ratio=remark,
        violations=violations,
    )


# --- the integral operator --------------------------------------------------------


def apply_A(u, v, spec: BvpSpec, kernels: KernelTable) -> np.ndarray:
    """Trapezoidal approximation of A[u, v] at every grid node.

    A[u, v](t) = int_0^T G1(t, s) [f(s,u) + g(s,v) + l1 u - l2 v]
                       + G2(t, s) [f(s,v) + g(s,u) + l1 v - l2 u] ds
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    s = kernels.t
    if u.shape != s.shape or v.shape != s.shape:
        raise ValueError(f"u and v must live on the kernel grid ({s.size} nodes)")
    l1, l2 = spec.lambda1, spec.lambda2
    b1 = spec.f(s, u) + spec.g(s, v) + l1 * u - l2 * v
    b2 = spec.f(s, v) + spec.g(s, u) + l1 * v - l2 * u
    bad = ~(np.isfinite(b1) & np.isfinite(b2))
    if bad.any():
        j = int(np.nonzero(bad)[0][0])
        raise NonFiniteIntegrand(j, float(s[j]))
    # row sums in numpy's fixed pairwise order keep results reproducible
    return np.sum(kernels.Q1 * b1[None, :] + kernels.Q2 * b2[None, :], axis=1)


def operator(spec: BvpSpec, kernels: Optional[KernelTable] = None):
    """A as a coupled map (u, v) -> A[u, v] on grid functions."""
    kt = kernels if kernels is not None else kernel_tables(spec)

    def A(u, v):
        return apply_A(u, v, spec, kt)

    return A


def ode_residual(u, spec: BvpSpec) -> float:
    """max_i |u'(t_i) - f(t_i, u_i) - g(t_i, u_i)| with periodic central differences."""
    u = np.asarray(u, dtype=float)
    t = spec.nodes
    du = _fd_derivative(u, spec.h, periodic=True)
    return float(np.max(np.abs(du - spec.f(t, u) - spec.g(t, u))))


# --- solving ---------------------------------------------------------------------


@dataclass
class PreconditionReport:
    sign: SignConditionReport
    assumption: AssumptionReport
    lower_upper: LowerUpperReport
    contraction_k: float
    bhaskar_k: float

    @property
    def failures(self) -> list[str]:
        out = []
        if not self.sign.condition_3_8:
            out.append("condition_3_8")
        if not self.sign.condition_3_9:
            out.append("condition_3_9")
        if not self.assumption.condition_3_3:
            out.append("condition_3_3")
        if not self.assumption.condition_3_4:
            out.append("condition_3_4")
        if not self.assumption.condition_3_4_1:
            out.append("condition_3_4_1")
        if not self.lower_upper.is_lower_upper:
            out.append("lower_upper_solution")
        if not self.lower_upper.condition_3_11:
            out.append("condition_3_11")
        if not self.lower_upper.condition_3_12:
            out.append("condition_3_12")
        return out

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "failures": self.failures,
            "sign_conditions": self.sign.as_dict(),
            "assumption_3_1": self.assumption.as_dict(),
            "lower_upper": self.lower_upper.as_dict(),
            "contraction_k": self.contraction_k,
            "bhaskar_k": self.bhaskar_k,
        }


def default_probe_grid(alpha, beta, size: int = 33) -> np.ndarray:
    lo = float(min(np.min(alpha), np.min(beta)))
    hi = float(max(np.max(alpha), np.max(beta)))
    if hi - lo <= 0.0:
        lo, hi = lo - 1.0, hi + 1.0
    return np.linspace(lo, hi, size)


def check_preconditions(spec: BvpSpec, alpha, beta, probe_grid=None) -> PreconditionReport:
    """Run every hypothesis check needed before :func:`solve_bvp`."""
    probe = default_probe_grid(alpha, beta) if probe_grid is None else probe_grid
    return PreconditionReport(
        sign=check_sign_conditions(spec),
        assumption=check_assumption_3_1(spec, probe),
        lower_upper=check_lower_upper(alpha, beta, spec),
        contraction_k=bvp_contraction_k(spec),
        bhaskar_k=bhaskar_contraction_k(spec),
    )


@dataclass
class BvpSolution:
    u: np.ndarray
    v: np.ndarray
    result: SolveResult
    preconditions: PreconditionReport
    report: dict


def solve_bvp(
    spec: BvpSpec,
    alpha,
    beta,
    tolerance: float = 1e-10,
    max_iterations: int = 10_000,
    kernels: Optional[KernelTable] = None,
    probe_grid=None,
    stopping_rule: StoppingRule = StoppingRule.A_POSTERIORI,
) -> BvpSolution:
    """Solve the periodic problem starting from a coupled lower-upper pair.

    Raises :class:`PreconditionFailed` naming the first failed hypothesis
    (all failures are listed on the exception's ``report``). Engine outcomes
    other than convergence are returned in ``report["status"]``.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    pre = check_preconditions(spec, alpha, beta, probe_grid)
    if not pre.passed:
        err = PreconditionFailed(pre.failures[0], ", ".join(pre.failures))
        err.report = pre
        raise err

    kt = kernels if kernels is not None else kernel_tables(spec)
    A = operator(spec, kt)
    space = sup_norm_space(name="C([0,T]) on grid")
    cfg = IterationConfig(
        contraction_k=pre.contraction_k,
        tolerance=tolerance,
        max_iterations=max_iterations,
        stopping_rule=stopping_rule,
    )
    res = solve(A, space, ProductPoint(alpha, beta), cfg)
    u, v = res.final
    uniq = uniqueness_report(space, res, A)
    ratios = res.trace.step_ratios()
    report = {
        "status": res.status.value,
        "iterations": res.iterations,
        "branch": res.branch.value,
        "contraction_k": pre.contraction_k,
        "bhaskar_k": pre.bhaskar_k,
        "max_step_ratio": max(ratios) if ratios else None,
        "monotone_violations": sum(not s.monotone_ok for s in res.trace),
        "sup_u_minus_v": float(np.max(np.abs(u - v))),
        "ode_residual": ode_residual(u, spec),
        "periodicity_residual": float(abs(u[0] - u[-1])),
        "fixed_point_residual": res.residual,
        "uniqueness": uniq.as_dict(),
        "grid_n": spec.grid_n,
        "tolerance": tolerance,
    }
    return BvpSolution(np.asarray(u), np.asarray(v), res, pre, report)


# --- built-in family and I/O -------------------------------------------------------

FORCINGS = ("cos", "sin", "const")


def forcing_term(name: str, amplitude: float, T: float) -> RealFn:
    omega = 2.0 * math.pi / T
    if name == "cos":
        return lambda t: amplitude * np.cos(omega * t)
    if name == "sin":
        return lambda t: amplitude * np.sin(omega * t)
    if name == "const":
        return lambda t: amplitude + 0.0 * np.asarray(t, dtype=float)
    raise ValueError(f"unknown forcing {name!r}; expected one of {FORCINGS}")


def linear_family(f_slope: float, g_slope: float, forcing: str = "cos",
                  amplitude: float = 1.0, T: float = 1.0) -> tuple[RealFn, RealFn]:
    """f(t, u) = f_slope u and g(t, u) = g_slope u + c(t)."""
    c = forcing_term(forcing, amplitude, T)

    def f(t, u):
        return f_slope * np.asarray(u, dtype=float) + 0.0 * np.asarray(t, dtype=float)

    def g(t, u):
        return g_slope * np.asarray(u, dtype=float) + c(t)

    return f, g


def linear_periodic_solution(t, a: float, forcing: str = "cos", amplitude: float = 1.0,
                             T: float = 1.0) -> np.ndarray:
    """Closed-form T-periodic solution of u' = a u + c(t) for the built-in forcings (a != 0)."""
    t = np.asarray(t, dtype=float)
    w = 2.0 * math.pi / T
    den = a * a + w * w
    if forcing == "cos":
        return amplitude * (-a * np.cos(w * t) + w * np.sin(w * t)) / den
    if forcing == "sin":
        return amplitude * (-a * np.sin(w * t) - w * np.cos(w * t)) / den
    if forcing == "const":
        return np.full_like(t, -amplitude / a)
    raise ValueError(f"unknown forcing {forcing!r}")


def manufactured_spec(lambda1=0.2, lambda2=0.8, mu1=0.3, mu2=0.5, T=1.0,
                      grid_n=DEFAULT_GRID_N, forcing="cos", amplitude=1.0) -> BvpSpec:
    """Linear test problem whose shifted maps have slopes mu1/2 and -mu2/2.

    Then h(t, u) = a u + c(t) with a = l2 - l1 + (mu1 - mu2)/2.
    """
    f, g = linear_family(-lambda1 + 0.5 * mu1, lambda2 - 0.5 * mu2, forcing, amplitude, T)
    return BvpSpec(f, g, lambda1, lambda2, mu1, mu2, T, grid_n)


def write_grid_csv(path, t, values, header=("t", "value")) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for ti, vi in zip(np.asarray(t), np.asarray(values)):
            w.writerow([repr(float(ti)), repr(float(vi))])


def read_grid_csv(path) -> tuple[np.ndarray, np.ndarray]:
    with open(Path(path), newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    data = rows[1:] if not _is_number(rows[0][0]) else rows
    arr = np.array([[float(a), float(b)] for a, b in data], dtype=float)
    return arr[:, 0], arr[:, 1]


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


__all__ = [
    "BvpSpec", "KernelTable", "kernel_tables", "green_kernels", "tau1_row_integrals",
    "check_sign_conditions", "check_assumption_3_1", "check_lower_upper", "apply_A",
    "operator", "bvp_contraction_k", "bhaskar_contraction_k", "solve_bvp",
    "check_preconditions", "ode_residual", "manufactured_spec", "linear_family",
    "linear_periodic_solution", "write_grid_csv", "read_grid_csv",
]
