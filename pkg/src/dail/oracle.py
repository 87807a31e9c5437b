"""Brute-force and Monte Carlo checks that do not go through the closed forms."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .analysis import AnalyticalParams
from .latin import LatinRectangle, LatinSquare, generate_mols, is_prime


@dataclass(frozen=True)
class Violation:
    kind: str  # "latin", "same-rectangle" or "cross-rectangle"
    rect_a: int
    symbol_a: int
    rect_b: int
    symbol_b: int
    cells: tuple[tuple[int, int], ...]

    def __str__(self):
        where = ", ".join(f"(channel {c}, slot {s})" for c, s in self.cells)
        if self.kind == "latin":
            return f"rectangle {self.rect_a}: symbol {self.symbol_a} repeats a channel or slot at {where}"
        return (
            f"{self.kind}: rectangle {self.rect_a} symbol {self.symbol_a} and rectangle {self.rect_b} "
            f"symbol {self.symbol_b} share {len(self.cells)} cells: {where}"
        )


@dataclass
class TheoremCheck:
    rows: int
    cols: int
    rectangles: int
    alphabet: int
    pairs_checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _grid(s) -> np.ndarray:
    if isinstance(s, (LatinSquare, LatinRectangle)):
        return s.grid
    return np.asarray(s, dtype=np.int64)


def exhaustive_theorem_check(family: Sequence, rows: int, cols: int) -> TheoremCheck:
    """Enumerate every pattern pair of every ``rows x cols`` cut of ``family``.

    ``family`` may hold LatinSquares or raw integer grids; raw grids are not
    validated, so corrupted inputs are reported rather than rejected.  Symbol
    patterns that reuse a channel or a slot are reported as ``"latin"``
    violations; same-rectangle pairs must not meet and cross-rectangle pairs
    may meet at most once.
    """
    grids = [_grid(s)[:rows, :cols] for s in family]
    q = max(int(_grid(s).shape[0]) for s in family)
    if any(g.shape != (rows, cols) for g in grids):
        raise ValueError(f"cannot cut {rows}x{cols} from every square of the family")
    report = TheoremCheck(rows, cols, len(grids), q)

    inc = np.zeros((len(grids) * q, rows * cols), dtype=np.int32)
    for r, g in enumerate(grids):
        flat = g.ravel()
        inc[r * q + flat, np.arange(rows * cols)] = 1
        for sym in range(q):
            ch, sl = np.nonzero(g == sym)
            dup = (np.bincount(ch, minlength=rows)[ch] > 1) | (np.bincount(sl, minlength=cols)[sl] > 1)
            if dup.any():
                report.violations.append(
                    Violation("latin", r, sym, r, sym, tuple(zip(ch[dup].tolist(), sl[dup].tolist())))
                )

    overlap = inc @ inc.T
    n = overlap.shape[0]
    iu, ju = np.triu_indices(n, 1)
    report.pairs_checked = int(iu.size)
    same = (iu // q) == (ju // q)
    limit = np.where(same, 0, 1)
    bad = overlap[iu, ju] > limit
    for a, b in zip(iu[bad].tolist(), ju[bad].tolist()):
        shared = np.nonzero(inc[a] & inc[b])[0]
        report.violations.append(
            Violation(
                "same-rectangle" if a // q == b // q else "cross-rectangle",
                a // q,
                a % q,
                b // q,
                b % q,
                tuple((int(c) // cols, int(c) % cols) for c in shared),
            )
        )
    return report


# --- Monte Carlo estimate of the success probability ---

def _gf2_mul(a: int, b: int, k: int, poly: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> k:
            a ^= poly
    return out


_GF2_POLY = {2: 0b111, 3: 0b1011}


def orthogonal_grids(K: int, m: int) -> list[np.ndarray]:
    """m mutually orthogonal K x K grids for the Monte Carlo model.

    Prime K uses the affine construction, K in {4, 8} uses GF(2^k)
    multiplication, any K with m == 1 uses the cyclic square.
    """
    if m == 1:
        i = np.arange(K)
        return [(i[:, None] + i[None, :]) % K]
    if m > K - 1:
        raise ValueError(f"no family of {m} orthogonal squares of order {K}")
    if is_prime(K):
        return [s.grid for s in list(generate_mols(K))[:m]]
    k = K.bit_length() - 1
    if K == 1 << k and k in _GF2_POLY:
        poly = _GF2_POLY[k]
        out = []
        for a in range(1, m + 1):
            g = np.array([[_gf2_mul(a, i, k, poly) ^ j for j in range(K)] for i in range(K)])
            out.append(g)
        return out
    raise ValueError(f"no orthogonal-family construction for order {K} with m={m}")


@dataclass(frozen=True)
class OracleConfig:
    params: AnalyticalParams
    trials: int = 1_000_000
    seed: int = 0
    chunk: int = 100_000
    target_se: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def _mc_chunk(n: int, seed, bad: np.ndarray | None, Q: int, omega: float, K: int, m: int) -> int:
    rng = np.random.default_rng(seed)
    n_patterns = K * m - 1
    # distinct patterns for the Q neighbours: first Q entries of a random permutation
    draws = np.argsort(rng.random((n, n_patterns)), axis=1)[:, :Q]
    if bad is not None:
        cell = rng.integers(bad.shape[0], size=n)
        hit = bad[cell[:, None], draws]
    else:
        # no concrete family: the tagged cell holds one uniform symbol of each other rectangle
        occ = rng.integers(K, size=(n, m))
        rect, sym = (draws + 1) // K, (draws + 1) % K
        hit = (rect > 0) & (sym == np.take_along_axis(occ, rect, axis=1))
    active = rng.random((n, Q)) < omega
    return int(n - np.count_nonzero((hit & active).any(axis=1)))


def monte_carlo_lambda(cfg: OracleConfig) -> tuple[float, float]:
    """Simulated success probability of one tagged transmission, with its standard error.

    The tagged sensor owns symbol 0 of rectangle 0 and transmits in one of its
    cells chosen uniformly.  Each of Q neighbours is active with probability
    omega; the neighbours hold distinct patterns drawn uniformly from the
    Z - 1 others.  A trial succeeds when no active neighbour's symbol sits in
    the tagged cell of its own rectangle.

    When no orthogonal family of order K and size m can be built (K = 12,
    m = 16 for instance) the squares are replaced by what the check relies
    on: each other rectangle puts exactly one of its K symbols, uniformly
    chosen, in the tagged cell.
    """
    p = cfg.params
    if p.Q == 0 or p.omega == 0:
        return 1.0, 0.0
    rows = min(p.M, p.K)
    try:
        grids = [g[:rows, :] for g in orthogonal_grids(p.K, p.m)]
    except ValueError:
        bad = None
    else:
        ch, sl = np.nonzero(grids[0] == 0)
        others = [(r, f) for r in range(p.m) for f in range(p.K) if (r, f) != (0, 0)]
        bad = np.array([[grids[r][c, s] == f for r, f in others] for c, s in zip(ch, sl)])

    seeds = np.random.SeedSequence(cfg.seed).spawn(math.ceil(cfg.trials / cfg.chunk))
    successes = 0
    left = cfg.trials
    for s in seeds:
        n = min(cfg.chunk, left)
        successes += _mc_chunk(n, s, bad, p.Q, p.omega, p.K, p.m)
        left -= n
    est = successes / cfg.trials
    se = math.sqrt(est * (1 - est) / cfg.trials)
    if cfg.target_se is not None:
        worst = 0.5 / math.sqrt(cfg.trials)
        if worst > cfg.target_se and se > cfg.target_se:
            warnings.warn(
                f"{cfg.trials} trials give standard error {se:.2e} > requested {cfg.target_se:.2e}",
                stacklevel=2,
            )
    return est, se
