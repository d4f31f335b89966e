"""Uniform-contribution investment decision on the twisted strip.

When every firm on a ``2N x M`` strip chooses the same contribution level
``a`` and the same outlay ``c``, the benefit of contributing is priced at
``2NMa`` per unit outlay, the cooperation weights follow the technology
rule ``t1 = t2 = k * (c * a) ** beta``, and the cost functional collapses
to a single-variable objective

    H(c) = -2*N*M*a*c
           + k * c**beta * N * a**(2 + beta) * (2*M*(1 - delta) + 2*(M - 1))
           + k * c**beta * N * a**(lam + beta)

where ``lam`` is the loyalty exponent (how many contribution factors the
half-turn pairing carries; 4 by default, 2 for the variant that keeps the
pairing quadratic like the other terms).  Grouping the powers of ``a``
gives the bracket

    B = 2*M*(2 - delta) - 2 + a**(lam - 2)

so that  H'(c) = -2*N*M*a + beta*k*c**(beta - 1)*N*a**(2 + beta)*B.

The firm maximizes H over the budget interval ``0 <= c <= p - w`` (sale
price minus wage).  The stationary point, when one exists, is

    c* = (2*M / (beta*k*a**(1 + beta)*B)) ** (1/(beta - 1))      beta > 1
    c* = ((beta*k*a**(1 + beta)*B) / (2*M)) ** (1/(1 - beta))    beta < 1

a local minimum of H for ``beta > 1`` (the optimum then sits on a budget
boundary) and a local maximum for ``beta < 1``.  For ``beta == 1`` the
derivative is constant and the sign of ``k*a**2*B - 2*M`` decides which
boundary wins.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np


class BetaRegime(enum.Enum):
    """Which side of the knife edge ``beta == 1`` a scenario sits on."""

    BETA_ABOVE_ONE = "BetaAboveOne"
    BETA_BELOW_ONE = "BetaBelowOne"
    BETA_EQUAL_ONE = "BetaEqualOne"


class StationaryKind(enum.Enum):
    LOCAL_MAX = "LocalMax"
    LOCAL_MIN = "LocalMin"
    FLAT_DERIVATIVE = "FlatDerivative"


_SCENARIO_KEYS = ("N", "M", "a", "k", "beta", "delta", "p", "w", "lambda")


@dataclass(frozen=True)
class CsrScenario:
    """Economic parameters of the uniform-contribution decision problem.

    ``N`` and ``M`` set the strip (2N firms per wire, M wires), ``a`` is
    the common contribution level, ``k``/``beta`` the technology rule for
    the cooperation weights, ``delta`` the neighborhood discount, ``p``
    the sale price, ``w`` the wage, and ``loyalty_exponent`` the power of
    ``a`` carried by the half-turn pairing (2 or 4).
    """

    N: int
    M: int
    a: float
    k: float
    beta: float
    delta: float
    p: float
    w: float
    loyalty_exponent: int = 4

    def __post_init__(self) -> None:
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 1):
            raise ValueError(f"N must be an integer >= 1, got {self.N!r}")
        if not (isinstance(self.M, (int, np.integer)) and self.M >= 1):
            raise ValueError(f"M must be an integer >= 1, got {self.M!r}")
        for name in ("a", "k", "beta", "delta", "p", "w"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if not (0.0 <= self.a < 1.0):
            raise ValueError(f"a must lie in [0, 1), got {self.a}")
        if self.k <= 0.0:
            raise ValueError(f"k must be > 0, got {self.k}")
        if self.beta <= 0.0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if not (0.0 < self.delta < 1.0):
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.p < 0.0 or self.w < 0.0:
            raise ValueError("p and w must be >= 0")
        if self.loyalty_exponent not in (2, 4):
            raise ValueError(
                f"loyalty exponent must be 2 or 4, got {self.loyalty_exponent!r}"
            )

    @classmethod
    def from_dict(cls, data: dict) -> "CsrScenario":
        """Build from a plain mapping; the loyalty exponent key is ``lambda``."""
        unknown = sorted(set(data) - set(_SCENARIO_KEYS))
        if unknown:
            raise ValueError(f"unknown scenario keys: {', '.join(unknown)}")
        missing = sorted(set(_SCENARIO_KEYS[:-1]) - set(data))
        if missing:
            raise ValueError(f"missing scenario keys: {', '.join(missing)}")
        return cls(
            N=int(data["N"]),
            M=int(data["M"]),
            a=float(data["a"]),
            k=float(data["k"]),
            beta=float(data["beta"]),
            delta=float(data["delta"]),
            p=float(data["p"]),
            w=float(data["w"]),
            loyalty_exponent=int(data.get("lambda", 4)),
        )

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "M": self.M,
            "a": self.a,
            "k": self.k,
            "beta": self.beta,
            "delta": self.delta,
            "p": self.p,
            "w": self.w,
            "lambda": self.loyalty_exponent,
        }


@dataclass(frozen=True)
class DecisionReport:
    """Outcome of the constrained maximization of H over the budget.

    ``stationary`` is the closed-form stationary point (None when there is
    none), reported alongside the true optimum even when the two disagree;
    ``feasible`` states whether the margin constraint
    ``N*M*a*(p - w - c) >= 0`` holds at the chosen outlay.
    """

    stationary: float | None
    stationary_kind: StationaryKind | None
    constrained_opt: float
    objective_at_opt: float
    case: BetaRegime
    feasible: bool


def profit_baseline(scenario: CsrScenario) -> float:
    """Aggregate margin N*M*a*(p - w) before any outlay is spent."""
    s = scenario
    return s.N * s.M * s.a * (s.p - s.w)


def bracket(scenario: CsrScenario) -> float:
    """B = 2*M*(2 - delta) - 2 + a**(lam - 2); strictly positive."""
    s = scenario
    return 2.0 * s.M * (2.0 - s.delta) - 2.0 + float(
        np.float64(s.a) ** (s.loyalty_exponent - 2)
    )


def hcsr_of_c(c, scenario: CsrScenario):
    """Objective H(c); accepts a scalar or an array of outlays >= 0."""
    s = scenario
    arr = np.asarray(c, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("c must be finite")
    if np.any(arr < 0.0):
        raise ValueError("c must be >= 0")
    with np.errstate(over="ignore"):
        grow = s.k * arr**s.beta * s.N
        value = (
            -2.0 * s.N * s.M * s.a * arr
            + grow
            * np.float64(s.a) ** (2.0 + s.beta)
            * (2.0 * s.M * (1.0 - s.delta) + 2.0 * (s.M - 1.0))
            + grow * np.float64(s.a) ** (s.loyalty_exponent + s.beta)
        )
    if arr.ndim == 0:
        return float(value)
    return value


def dhcsr_dc(c, scenario: CsrScenario):
    """Derivative H'(c) for outlays > 0; scalar or array."""
    s = scenario
    arr = np.asarray(c, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("c must be finite")
    if np.any(arr <= 0.0):
        raise ValueError("c must be > 0")
    with np.errstate(over="ignore"):
        value = (
            -2.0 * s.N * s.M * s.a
            + s.beta
            * s.k
            * arr ** (s.beta - 1.0)
            * s.N
            * np.float64(s.a) ** (2.0 + s.beta)
            * bracket(s)
        )
    if arr.ndim == 0:
        return float(value)
    return value


def beta_regime(scenario: CsrScenario) -> BetaRegime:
    if scenario.beta > 1.0:
        return BetaRegime.BETA_ABOVE_ONE
    if scenario.beta < 1.0:
        return BetaRegime.BETA_BELOW_ONE
    return BetaRegime.BETA_EQUAL_ONE


def stationary_closed_form(scenario: CsrScenario) -> float | None:
    """Positive root of H'(c) = 0, or None when no stationary point exists.

    There is none for ``beta == 1`` (constant derivative) and for ``a == 0``
    (H vanishes identically).  Extreme parameter combinations can push the
    root past float range; the overflow is returned as ``inf`` rather than
    raised, and downstream code treats it as lying beyond any budget.
    """
    s = scenario
    if s.beta == 1.0 or s.a == 0.0:
        return None
    b = bracket(s)
    with np.errstate(over="ignore"):
        if s.beta > 1.0:
            base = np.float64(2.0 * s.M) / np.float64(
                s.beta * s.k * np.float64(s.a) ** (1.0 + s.beta) * b
            )
            root = base ** (1.0 / (s.beta - 1.0))
        else:
            base = np.float64(
                s.beta * s.k * np.float64(s.a) ** (1.0 + s.beta) * b
            ) / np.float64(2.0 * s.M)
            root = base ** (1.0 / (1.0 - s.beta))
    return float(root)


def classify_stationary(scenario: CsrScenario) -> StationaryKind | None:
    """Nature of the stationary point: minimum above the knife edge
    (``beta > 1``), maximum below it, constant derivative at ``beta == 1``.
    Returns None when H has no stationary point (``a == 0``)."""
    if scenario.beta == 1.0:
        return StationaryKind.FLAT_DERIVATIVE
    if scenario.a == 0.0:
        return None
    if scenario.beta > 1.0:
        return StationaryKind.LOCAL_MIN
    return StationaryKind.LOCAL_MAX


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximization of a unimodal f on [lo, hi]."""
    if hi - lo <= tol:
        return 0.5 * (lo + hi)
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv * (hi - lo)
    x2 = lo + inv * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo = x1
            x1, f1 = x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = f(x2)
        else:
            hi = x2
            x2, f2 = x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = f(x1)
    return 0.5 * (lo + hi)


def optimize_constrained(scenario: CsrScenario) -> DecisionReport:
    """Maximize H over the budget interval [0, p - w].

    Candidates are the two boundaries plus the interior stationary point
    when it is a local maximum inside the interval; ties go to the
    smallest outlay.  With ``p < w`` the budget is empty, the outlay is
    zero, and the report comes back infeasible (except in the degenerate
    ``a == 0`` case, where the margin constraint holds trivially).
    """
    s = scenario
    budget = max(0.0, s.p - s.w)
    stationary = stationary_closed_form(s)
    kind = classify_stationary(s)

    candidates = [0.0]
    if budget > 0.0:
        if (
            kind is StationaryKind.LOCAL_MAX
            and stationary is not None
            and 0.0 < stationary < budget
        ):
            candidates.append(stationary)
        candidates.append(budget)

    best_c = candidates[0]
    best_h = hcsr_of_c(best_c, s)
    for c in candidates[1:]:
        h = hcsr_of_c(c, s)
        if h > best_h:
            best_c, best_h = c, h

    return DecisionReport(
        stationary=stationary,
        stationary_kind=kind,
        constrained_opt=best_c,
        objective_at_opt=best_h,
        case=beta_regime(s),
        feasible=s.N * s.M * s.a * (s.p - s.w - best_c) >= 0.0,
    )


def optimize_oracle(
    scenario: CsrScenario, grid_points: int = 10_000
) -> tuple[float, float]:
    """Grid-plus-refinement maximizer of H, independent of the closed form.

    Scans a uniform grid over the budget, refines the best bracket by
    golden section, and keeps the exact boundaries as candidates.  Returns
    ``(c, H(c))``; ties go to the smallest outlay.
    """
    s = scenario
    if grid_points < 3:
        raise ValueError(f"grid_points must be >= 3, got {grid_points}")
    budget = max(0.0, s.p - s.w)
    if budget == 0.0:
        return 0.0, hcsr_of_c(0.0, s)

    grid = np.linspace(0.0, budget, grid_points)
    values = hcsr_of_c(grid, s)
    peak = int(np.argmax(values))
    lo = float(grid[max(peak - 1, 0)])
    hi = float(grid[min(peak + 1, grid_points - 1)])
    refined = _golden_max(
        lambda c: hcsr_of_c(c, s), lo, hi, tol=1e-10 * max(1.0, budget)
    )

    best_c = 0.0
    best_h = hcsr_of_c(0.0, s)
    for c in sorted({float(grid[peak]), refined, budget}):
        h = hcsr_of_c(c, s)
        if h > best_h:
            best_c, best_h = c, h
    return best_c, best_h


def _with_param(scenario: CsrScenario, param: str, value: float) -> CsrScenario:
    return replace(scenario, **{param: value})


def comparative_statics(
    scenario: CsrScenario, param: str, step: float = 1e-2
) -> float:
    """Signed sensitivity of the stationary point to one parameter.

    ``delta`` and ``beta`` use a central difference of the closed form
    (the step is halved once if a stepped scenario leaves the valid domain
    or hops across the ``beta == 1`` knife edge, then the computation
    fails).  ``M`` is discrete, so its sensitivity is the forward
    difference ``c*(M+1) - c*(M)``.
    """
    s = scenario
    if s.beta == 1.0 or s.a == 0.0:
        raise ValueError("sensitivity needs a stationary point (beta != 1, a > 0)")

    if param == "M":
        c_here = stationary_closed_form(s)
        c_next = stationary_closed_form(replace(s, M=s.M + 1))
        return c_next - c_here

    if param not in ("delta", "beta"):
        raise ValueError(f"param must be 'delta', 'beta' or 'M', got {param!r}")

    center = float(getattr(s, param))
    for h in (step, step / 2.0):
        try:
            s_hi = _with_param(s, param, center + h)
            s_lo = _with_param(s, param, center - h)
        except ValueError:
            continue
        if param == "beta" and (s_hi.beta - 1.0) * (s_lo.beta - 1.0) <= 0.0:
            continue  # the two closed forms would straddle the knife edge
        c_hi = stationary_closed_form(s_hi)
        c_lo = stationary_closed_form(s_lo)
        return (c_hi - c_lo) / (2.0 * h)
    raise ValueError(
        f"cannot step {param} by {step} (or half) without leaving the domain"
    )
