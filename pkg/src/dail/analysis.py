"""Closed-form collision bounds and the success-probability chain for DAIL.

Four readings of the success probability are available through
``success_probability(p, variant=...)``:

``"literal"``
    The expanded double sum as printed: ``C(Q,x) w^x (1-w)^(Q-x) (min(M,K)/K)^x``
    for the activity weight, ``C(K-1,y) C(Z-K,x-y) / C(Z-1,x)`` for the
    same-rectangle split and ``((min(M,K)-1)/min(M,K))^(x-y)`` for success.
``"strict"``
    Same chain with the coefficients written next to the individual terms,
    ``C(Q+1,x)`` and ``C(K+1,y)``.  These do not normalise and can leave [0, 1].
``"normalized"``
    Activity as a proper binomial with per-neighbour rate ``w min(M,K)/K``.
``"exact"``
    Activity ``Binomial(Q, w)`` and a without-replacement success term: of the
    ``Z-K`` patterns outside the tagged rectangle exactly ``m-1`` cover the
    tagged cell, one per other rectangle.

Binomial coefficients are evaluated in log space, so Q in the hundreds is fine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

VARIANTS = ("literal", "strict", "normalized", "exact")


class ModelInconsistency(ValueError):
    """A term of the probability chain fell outside [0, 1]."""


@dataclass(frozen=True)
class AnalyticalParams:
    Q: int
    M: int
    K: int
    omega: float
    m: int

    def __post_init__(self):
        if self.Q < 0 or self.M < 1 or self.K < 1 or self.m < 1:
            raise ValueError(f"need Q >= 0, M >= 1, K >= 1, m >= 1; got {self}")
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError(f"use factor omega={self.omega} outside [0, 1]")
        if self.Z - 1 < self.Q:
            raise ValueError(f"only Z-1={self.Z - 1} other symbol patterns for Q={self.Q} neighbours")

    @property
    def Z(self) -> int:
        return self.K * self.m

    @property
    def hops(self) -> int:
        return min(self.M, self.K)


def _log_comb(n: int, k: int) -> float:
    if k < 0 or k > n or n < 0:
        return -math.inf
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _xlog(x: float, y: float) -> float:
    if x == 0:
        return 0.0
    return x * math.log(y) if y > 0 else -math.inf


def _exp(v: float) -> float:
    return 0.0 if v == -math.inf else math.exp(v)


def _checked(v: float, what: str) -> float:
    # tolerate rounding of log-space sums
    if v < -1e-12 or v > 1 + 1e-12:
        raise ModelInconsistency(f"{what} = {v!r} is not a probability")
    return min(max(v, 0.0), 1.0)


def collision_bounds(Q: int, K: int) -> tuple[int, int]:
    """(fewest, most) collisions a sensor with Q interfering neighbours can see per superframe."""
    if Q < 0 or K < 1:
        raise ValueError(f"need Q >= 0 and K >= 1, got Q={Q}, K={K}")
    return max(Q - K + 1, 0), Q


def _log_pr_active(x: int, p: AnalyticalParams, strict: bool) -> float:
    n = p.Q + 1 if strict else p.Q
    return (
        _log_comb(n, x)
        + _xlog(x, p.omega)
        + _xlog(p.Q - x, 1.0 - p.omega)
        + _xlog(x, p.hops / p.K)
    )


def pr_active(x: int, p: AnalyticalParams, strict: bool = False) -> float:
    """Weight of x neighbours transmitting in the tagged sensor's slot."""
    if not 0 <= x <= p.Q:
        raise ValueError(f"x={x} outside 0..Q={p.Q}")
    return _checked(_exp(_log_pr_active(x, p, strict)), f"Pr(X={x})")


def pr_active_normalized(x: int, p: AnalyticalParams) -> float:
    if not 0 <= x <= p.Q:
        raise ValueError(f"x={x} outside 0..Q={p.Q}")
    rate = p.omega * p.hops / p.K
    return _exp(_log_comb(p.Q, x) + _xlog(x, rate) + _xlog(p.Q - x, 1.0 - rate))


def _log_pr_same(y: int, x: int, p: AnalyticalParams, strict: bool) -> float:
    top = p.K + 1 if strict else p.K - 1
    return _log_comb(top, y) + _log_comb(p.Z - p.K, x - y) - _log_comb(p.Z - 1, x)


def pr_same_rectangle(y: int, x: int, p: AnalyticalParams, strict: bool = False) -> float:
    """Probability that y of x active neighbours hold patterns from the tagged sensor's rectangle."""
    if not 0 <= y <= x:
        raise ValueError(f"need 0 <= y <= x, got y={y}, x={x}")
    if x > p.Z - 1:
        raise ValueError(f"x={x} exceeds the Z-1={p.Z - 1} patterns available")
    return _checked(_exp(_log_pr_same(y, x, p, strict)), f"Pr(Y={y}|X={x})")


def pr_collision_given(x: int, y: int, p: AnalyticalParams) -> float:
    if not 0 <= y <= x:
        raise ValueError(f"need 0 <= y <= x, got y={y}, x={x}")
    h = p.hops
    if h == 0:
        raise ValueError("min(M, K) must be positive")
    return 1.0 - ((h - 1) / h) ** (x - y)


def _log_success_exact(x: int, y: int, p: AnalyticalParams) -> float:
    # no draw among the x-y foreign patterns is one of the m-1 that cover the tagged cell
    foreign = p.Z - p.K
    return _log_comb(foreign - (p.m - 1), x - y) - _log_comb(foreign, x - y)


def success_probability(p: AnalyticalParams, variant: str = "literal", check: bool = True) -> float:
    """Probability that one transmission of a tagged sensor gets through.

    With ``check`` (default) a value outside [0, 1] raises
    ``ModelInconsistency``; with ``check=False`` the raw sum is returned.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")
    strict = variant == "strict"
    h = p.hops
    log_keep = math.log((h - 1) / h) if h > 1 else -math.inf
    total = 0.0
    for x in range(p.Q + 1):
        if variant == "normalized":
            rate = p.omega * h / p.K
            la = _log_comb(p.Q, x) + _xlog(x, rate) + _xlog(p.Q - x, 1.0 - rate)
        elif variant == "exact":
            la = _log_comb(p.Q, x) + _xlog(x, p.omega) + _xlog(p.Q - x, 1.0 - p.omega)
        else:
            la = _log_pr_active(x, p, strict)
        if la == -math.inf:
            continue
        if check and variant != "normalized":
            _checked(_exp(la), f"Pr(X={x})")
        for y in range(x + 1):
            ly = _log_pr_same(y, x, p, strict)
            if ly == -math.inf:
                continue
            if check:
                _checked(_exp(ly), f"Pr(Y={y}|X={x})")
            if variant == "exact":
                ls = _log_success_exact(x, y, p)
            else:
                ls = 0.0 if x == y else (x - y) * log_keep
            total += _exp(la + ly + ls)
    if check:
        return _checked(total, f"lambda[{variant}]")
    return total


def success_probabilities(p: AnalyticalParams) -> dict[str, float]:
    """All variants; an inconsistent one maps to its raw (unchecked) value."""
    out = {}
    for v in VARIANTS:
        out[v] = success_probability(p, v, check=False)
    return out
