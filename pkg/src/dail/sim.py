"""Superframe-level simulator for coexisting TDMA WBANs under DAIL or the SMS baseline.

A collision is a coincidence in (channel, slot) between a sensor and one of
its interference-graph neighbours.  Schedules are static for a run, so the
transmission-level conflict graph is built once and every superframe only
redraws the activity mask.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

import numpy as np
from scipy import sparse

from .latin import LatinRectangle, LatinSquare, OrthogonalFamily, cut_rectangle, pattern_of

SCHEMES = ("DAIL", "SMS")
ASSIGNMENT_MODES = ("iid-random", "coordinated-distinct")
TRAFFIC_MODES = ("pattern", "demand")


@dataclass(frozen=True)
class AbstractQ:
    """Every sensor gets exactly ``q`` random neighbours in other WBANs."""

    q: int


@dataclass(frozen=True)
class Disk:
    """Coordinators uniform in a square hall, sensors uniform on a body disk around them."""

    area_side: float = 10.0
    radius: float = 3.0
    body_radius: float = 0.5


@dataclass(frozen=True)
class Placed:
    """Explicit positions: ``sensors[w]`` lists the sensor coordinates of WBAN ``w``."""

    coordinators: tuple
    sensors: tuple
    radius: float = 3.0


Geometry = Union[AbstractQ, Disk, Placed]


@dataclass(frozen=True)
class EnergyModel:
    tx_power_dbm: float = -10.0
    tx_time_s: float = 1e-3
    superframe_s: float = 1.0
    retry_limit: int = 1

    def __post_init__(self):
        if self.retry_limit < 0:
            raise ValueError(f"retry limit must be >= 0, got {self.retry_limit}")

    @property
    def e_tx_mj(self) -> float:
        return 10 ** (self.tx_power_dbm / 10) * self.tx_time_s


@dataclass(frozen=True)
class NetworkConfig:
    n_wbans: int
    sensors_per_wban: int = 12
    channels: int = 16
    slots_per_sensor: int = 1
    frame_length: int | None = None
    omega: float = 1.0
    geometry: Geometry = Disk()
    assignment_mode: str = "iid-random"
    superframes: int = 1000
    seed: int = 0
    traffic: str = "pattern"
    energy: EnergyModel = EnergyModel()

    def __post_init__(self):
        for name in ("n_wbans", "sensors_per_wban", "channels", "slots_per_sensor", "superframes"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.frame_length is not None and self.frame_length < 1:
            raise ValueError("frame_length must be >= 1")
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError(f"omega={self.omega} outside [0, 1]")
        if self.assignment_mode not in ASSIGNMENT_MODES:
            raise ValueError(f"assignment_mode must be one of {ASSIGNMENT_MODES}")
        if self.traffic not in TRAFFIC_MODES:
            raise ValueError(f"traffic must be one of {TRAFFIC_MODES}")

    @property
    def K(self) -> int:
        return self.slots_per_sensor * self.sensors_per_wban

    @property
    def FL(self) -> int:
        if self.frame_length is not None:
            return self.frame_length
        return compute_frame_length(self.n_wbans, self.K)

    @property
    def n_sensors(self) -> int:
        return self.n_wbans * self.sensors_per_wban

    def streams(self):
        """Independent generators for geometry, schedule and activity."""
        return [np.random.default_rng(s) for s in np.random.SeedSequence(self.seed).spawn(3)]

    def with_(self, **kw) -> "NetworkConfig":
        return replace(self, **kw)


@dataclass(frozen=True, eq=False)
class Network:
    wban_of: np.ndarray  # (S,) WBAN index of each sensor
    coordinators: np.ndarray | None  # (N, 2) or None for abstract graphs
    positions: np.ndarray | None  # (S, 2)
    edges: np.ndarray  # (E, 2), a < b, endpoints in distinct WBANs

    @property
    def n_sensors(self) -> int:
        return self.wban_of.size

    @property
    def n_wbans(self) -> int:
        return int(self.wban_of.max()) + 1 if self.wban_of.size else 0

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_sensors, self.n_sensors), dtype=bool)
        if len(self.edges):
            a[self.edges[:, 0], self.edges[:, 1]] = True
            a[self.edges[:, 1], self.edges[:, 0]] = True
        return a

    def degree(self) -> np.ndarray:
        d = np.zeros(self.n_sensors, dtype=np.int64)
        if len(self.edges):
            np.add.at(d, self.edges.ravel(), 1)
        return d

    def has_edge(self, a: int, b: int) -> bool:
        lo, hi = min(a, b), max(a, b)
        return bool(np.any((self.edges[:, 0] == lo) & (self.edges[:, 1] == hi)))

    def without_edges(self) -> "Network":
        return Network(self.wban_of, self.coordinators, self.positions, np.zeros((0, 2), dtype=np.int64))


def compute_frame_length(n_wbans: int, K: int) -> int:
    """Superframe length: K slots, stretched to N when WBANs outnumber slots."""
    return n_wbans if n_wbans > K else K


def _edges_from_mask(mask: np.ndarray) -> np.ndarray:
    a, b = np.nonzero(np.triu(mask, 1))
    return np.stack([a, b], axis=1).astype(np.int64) if a.size else np.zeros((0, 2), dtype=np.int64)


def _disk_edges(crd: np.ndarray, pos: np.ndarray, wban_of: np.ndarray, radius: float) -> np.ndarray:
    # sensor a of WBAN w and sensor b of WBAN v interfere iff a lies in v's disk and b in w's
    dist = np.linalg.norm(pos[:, None, :] - crd[None, :, :], axis=2)
    in_range = dist <= radius
    reach = in_range[:, wban_of]  # reach[a, b]: a within the disk of b's coordinator
    mask = reach & reach.T & (wban_of[:, None] != wban_of[None, :])
    return _edges_from_mask(mask)


def _regular_cross_edges(wban_of: np.ndarray, q: int, rng, attempts: int = 200) -> np.ndarray:
    S = wban_of.size
    if q == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if (S * q) % 2:
        raise ValueError(f"no graph on {S} sensors has every degree equal to {q} (S*Q is odd)")
    for _ in range(attempts):
        stubs = list(rng.permutation(np.repeat(np.arange(S), q)))
        seen: set[tuple[int, int]] = set()
        ok = True
        while stubs:
            a = stubs.pop()
            cands = [
                k for k, b in enumerate(stubs)
                if wban_of[b] != wban_of[a] and (min(a, b), max(a, b)) not in seen
            ]
            if not cands:
                ok = False
                break
            b = stubs.pop(cands[int(rng.integers(len(cands)))])
            seen.add((min(a, b), max(a, b)))
        if ok:
            return np.array(sorted(seen), dtype=np.int64)
    raise RuntimeError(f"could not draw a {q}-regular cross-WBAN graph in {attempts} attempts")


def build_network(cfg: NetworkConfig) -> Network:
    rng = cfg.streams()[0]
    N, L = cfg.n_wbans, cfg.sensors_per_wban
    wban_of = np.repeat(np.arange(N), L)
    geo = cfg.geometry
    if isinstance(geo, AbstractQ):
        if geo.q > N * L - L:
            raise ValueError(f"Q={geo.q} exceeds the {N * L - L} sensors outside any one WBAN")
        return Network(wban_of, None, None, _regular_cross_edges(wban_of, geo.q, rng))
    if isinstance(geo, Disk):
        crd = rng.uniform(0.0, geo.area_side, size=(N, 2))
        r = geo.body_radius * np.sqrt(rng.uniform(size=N * L))
        theta = rng.uniform(0.0, 2 * np.pi, size=N * L)
        pos = crd[wban_of] + np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
        return Network(wban_of, crd, pos, _disk_edges(crd, pos, wban_of, geo.radius))
    if isinstance(geo, Placed):
        crd = np.asarray(geo.coordinators, dtype=float)
        if crd.shape != (N, 2) or len(geo.sensors) != N or any(len(s) != L for s in geo.sensors):
            raise ValueError(f"placement must give {N} coordinators and {L} sensors per WBAN")
        pos = np.asarray([p for s in geo.sensors for p in s], dtype=float)
        return Network(wban_of, crd, pos, _disk_edges(crd, pos, wban_of, geo.radius))
    raise TypeError(f"unknown geometry {geo!r}")


@dataclass(frozen=True, eq=False)
class Schedule:
    """Static per-sensor (channel, slot) lists; padded with -1 beyond ``n_hops``."""

    scheme: str
    channel: np.ndarray  # (S, H)
    slot: np.ndarray  # (S, H)
    n_hops: np.ndarray  # (S,)
    frame_length: int
    channels: int
    rectangle: np.ndarray  # (S,) rectangle index, -1 under SMS
    symbol: np.ndarray  # (S,) symbol, -1 under SMS
    wban_rectangle: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    full_square: bool = False

    def hops(self, sensor: int) -> list[tuple[int, int]]:
        n = int(self.n_hops[sensor])
        return list(zip(self.channel[sensor, :n].tolist(), self.slot[sensor, :n].tolist()))


def _pack(hop_lists: Sequence[Sequence[tuple[int, int]]]):
    H = max((len(h) for h in hop_lists), default=0)
    S = len(hop_lists)
    ch = np.full((S, max(H, 1)), -1, dtype=np.int64)
    sl = np.full((S, max(H, 1)), -1, dtype=np.int64)
    n = np.zeros(S, dtype=np.int64)
    for s, hops in enumerate(hop_lists):
        n[s] = len(hops)
        for k, (c, t) in enumerate(hops):
            ch[s, k] = c
            sl[s, k] = t
    return ch, sl, n


def _as_rectangles(family, channels: int, frame_length: int) -> list[LatinRectangle]:
    rects = []
    for k, s in enumerate(family):
        if isinstance(s, LatinRectangle):
            if s.cols != frame_length:
                raise ValueError(f"rectangle {k} has {s.cols} slots, superframe has {frame_length}")
            rects.append(s)
            continue
        if not isinstance(s, LatinSquare):
            s = LatinSquare(s)
        if s.order < frame_length:
            raise ValueError(f"family order {s.order} is below the frame length {frame_length}")
        rects.append(cut_rectangle(s, min(channels, s.order), frame_length, (0, k)))
    return rects


def assign_dail_schedules(
    net: Network,
    family: OrthogonalFamily | Sequence,
    cfg: NetworkConfig,
    rng=None,
    rectangles: Sequence[int] | None = None,
    symbols: Sequence[Sequence[int]] | None = None,
) -> Schedule:
    """Give each WBAN a rectangle from ``family`` and each of its sensors a distinct symbol.

    ``rectangles`` (one index per WBAN) and ``symbols`` (one list per WBAN)
    override the random draws.
    """
    if rng is None:
        rng = cfg.streams()[1]
    FL = cfg.FL
    rects = _as_rectangles(family, cfg.channels, FL)
    q = rects[0].alphabet_size
    N, L = cfg.n_wbans, cfg.sensors_per_wban
    if L > q:
        raise ValueError(f"{L} sensors per WBAN need {L} symbols; the alphabet has {q}")
    if rectangles is None:
        if cfg.assignment_mode == "coordinated-distinct":
            if N > len(rects):
                raise ValueError(f"{N} WBANs cannot hold distinct rectangles from a family of {len(rects)}")
            rectangles = rng.choice(len(rects), size=N, replace=False)
        else:
            rectangles = rng.integers(len(rects), size=N)
    rectangles = np.asarray(rectangles, dtype=np.int64)
    if rectangles.shape != (N,):
        raise ValueError(f"need one rectangle per WBAN ({N})")
    if symbols is None:
        symbols = [rng.choice(q, size=L, replace=False) for _ in range(N)]
    sym = np.asarray(symbols, dtype=np.int64).reshape(N, L)
    if any(len(set(row.tolist())) != L for row in sym):
        raise ValueError("sensors of one WBAN must hold distinct symbols")

    hop_lists = []
    for w in range(N):
        r = rects[rectangles[w]]
        for s in sym[w]:
            hop_lists.append(pattern_of(r, int(s)).hops)
    ch, sl, n = _pack(hop_lists)
    rows = rects[0].rows
    return Schedule(
        "DAIL", ch, sl, n, FL, rows,
        rectangle=np.repeat(rectangles, L),
        symbol=sym.ravel(),
        wban_rectangle=rectangles,
        full_square=rows == FL == q,
    )


def greedy_channels(net: Network, channels: int, rng) -> np.ndarray:
    """First-fit channel coloring in sensor order.

    Conflicts are interference edges plus sensors of the same WBAN, which
    transmit in the same fixed slots and so need distinct channels.  A sensor
    with no free channel takes a uniformly random channel not yet used inside
    its own WBAN (any channel if its WBAN already uses all of them).
    """
    conflict = net.adjacency() | (net.wban_of[:, None] == net.wban_of[None, :])
    np.fill_diagonal(conflict, False)
    colour = np.full(net.n_sensors, -1, dtype=np.int64)
    for s in range(net.n_sensors):
        used = np.zeros(channels, dtype=bool)
        nb = colour[conflict[s]]
        used[nb[nb >= 0]] = True
        free = np.flatnonzero(~used)
        if free.size:
            colour[s] = free[0]
            continue
        own = colour[(net.wban_of == net.wban_of[s]) & (colour >= 0)]
        pool = np.setdiff1d(np.arange(channels), own)
        if pool.size == 0:
            pool = np.arange(channels)
        colour[s] = int(pool[rng.integers(pool.size)])
    return colour


def assign_sms_schedules(net: Network, cfg: NetworkConfig, rng=None) -> Schedule:
    if rng is None:
        rng = cfg.streams()[1]
    FL, M = cfg.FL, cfg.channels
    colour = greedy_channels(net, M, rng)
    n_slots = min(M, FL)
    hop_lists = []
    for s in range(net.n_sensors):
        slots = np.arange(FL) if n_slots == FL else np.sort(rng.choice(FL, size=n_slots, replace=False))
        hop_lists.append([(int(colour[s]), int(t)) for t in slots])
    ch, sl, n = _pack(hop_lists)
    minus = np.full(net.n_sensors, -1, dtype=np.int64)
    return Schedule("SMS", ch, sl, n, FL, M, minus, minus.copy())


def assign_schedules(scheme: str, net: Network, cfg: NetworkConfig, family=None) -> Schedule:
    if scheme == "DAIL":
        if family is None:
            from .latin import rectangle_family

            family, _ = rectangle_family(cfg.channels, cfg.FL)
        return assign_dail_schedules(net, family, cfg)
    if scheme == "SMS":
        return assign_sms_schedules(net, cfg)
    raise ValueError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")


# --- running ---

@dataclass(frozen=True, eq=False)
class Transmissions:
    sensor: np.ndarray
    hop: np.ndarray
    cell: np.ndarray
    next: np.ndarray  # index of the same sensor's next hop (cyclic)
    start: np.ndarray  # (S+1,) offsets of each sensor's block
    conflicts: sparse.csr_matrix  # (n_tx, n_tx): same cell and neighbouring sensors


def transmissions(net: Network, sched: Schedule, pairs_mask=None) -> Transmissions:
    """Flatten a schedule and link every transmission to the neighbour transmissions in its cell.

    ``pairs_mask`` (S x S bool) restricts which sensor pairs count; default is
    the interference graph.
    """
    S = net.n_sensors
    sensor = np.repeat(np.arange(S), sched.n_hops)
    hop = np.concatenate([np.arange(n) for n in sched.n_hops]) if S else np.zeros(0, dtype=np.int64)
    cell = sched.channel[sensor, hop] * sched.frame_length + sched.slot[sensor, hop]
    start = np.concatenate([[0], np.cumsum(sched.n_hops)])
    nxt = start[sensor] + (hop + 1) % np.maximum(sched.n_hops[sensor], 1)

    adj = net.adjacency() if pairs_mask is None else pairs_mask
    order = np.argsort(cell, kind="stable")
    sorted_cells = cell[order]
    bounds = np.flatnonzero(np.diff(sorted_cells)) + 1
    rows, cols = [], []
    for grp in np.split(order, bounds):
        if grp.size < 2:
            continue
        i, j = np.triu_indices(grp.size, 1)
        a, b = grp[i], grp[j]
        keep = adj[sensor[a], sensor[b]]
        rows += [a[keep], b[keep]]
        cols += [b[keep], a[keep]]
    n_tx = sensor.size
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    conf = sparse.csr_matrix((np.ones(r.size, dtype=np.int32), (r, c)), shape=(n_tx, n_tx))
    return Transmissions(sensor, hop, cell, nxt, start, conf)


@dataclass(eq=False)
class CollisionReport:
    scheme: str
    omega: float
    n_wbans: int
    frame_length: int
    seed: int
    tx: np.ndarray  # (T, S) transmissions per sensor and superframe
    collided: np.ndarray  # (T, S) transmissions that met an active neighbour
    coincidences: np.ndarray  # (T, S) active neighbour transmissions met (one per colliding neighbour)
    attempts: np.ndarray  # (T, S) tx plus retransmissions
    degree: np.ndarray  # (S,)
    n_wbans_for_pc: int = 1
    pc: float = 0.0

    @property
    def mcp(self) -> float:
        total = int(self.tx.sum())
        return float(self.collided.sum()) / total if total else 0.0

    @property
    def per_frame_mcp(self) -> np.ndarray:
        tx = self.tx.sum(axis=1)
        return np.divide(self.collided.sum(axis=1), tx, out=np.zeros(tx.shape), where=tx > 0)

    @property
    def per_sensor_collisions(self) -> np.ndarray:
        return self.coincidences

    def rows(self):
        T, S = self.tx.shape
        for t in range(T):
            for s in range(S):
                yield (
                    self.scheme, self.omega, self.n_wbans, self.frame_length, self.seed, t, s,
                    int(self.tx[t, s]), int(self.collided[t, s]), int(self.attempts[t, s]),
                )


RUN_CSV_HEADER = ("scheme", "omega", "n_wbans", "frame_len", "seed", "superframe", "sensor_id",
                  "tx", "collisions", "attempts")


def write_run_csv(reports: Sequence[CollisionReport], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RUN_CSV_HEADER)
        for rep in reports:
            w.writerows(rep.rows())


def _activity(cfg: NetworkConfig, sched: Schedule, txs: Transmissions, rng, T: int) -> np.ndarray:
    n_tx = txs.sensor.size
    act = np.ones((T, n_tx), dtype=bool)
    if cfg.traffic == "demand":
        # p hops per superframe, drawn uniformly from the sensor's schedule
        keys = rng.random((T, n_tx))
        rank = np.empty_like(keys)
        for s in range(len(txs.start) - 1):
            a, b = txs.start[s], txs.start[s + 1]
            if b > a:
                rank[:, a:b] = np.argsort(np.argsort(keys[:, a:b], axis=1), axis=1)
        act &= rank < cfg.slots_per_sensor
    if cfg.omega < 1.0:
        act &= rng.random((T, n_tx)) < cfg.omega
    return act


def _per_sensor(x: np.ndarray, start: np.ndarray, S: int) -> np.ndarray:
    out = np.zeros((x.shape[0], S), dtype=np.int64)
    nz = np.flatnonzero(start[1:] > start[:-1])
    if nz.size:
        out[:, nz] = np.add.reduceat(x, start[nz], axis=1)
    return out


def run(net: Network, sched: Schedule, cfg: NetworkConfig, energy: EnergyModel | None = None,
        chunk: int = 250) -> CollisionReport:
    """Simulate ``cfg.superframes`` superframes and count collisions.

    A transmission collides when at least one interference neighbour is
    active in the same (channel, slot).  Collided transmissions are retried on
    the sensor's following hops, up to the energy model's retry limit.
    """
    energy = energy or cfg.energy
    rng = cfg.streams()[2]
    txs = transmissions(net, sched)
    S, T = net.n_sensors, cfg.superframes
    conf = txs.conflicts
    out = {k: np.zeros((T, S), dtype=np.int64) for k in ("tx", "collided", "coincidences", "attempts")}
    for t0 in range(0, T, chunk):
        n = min(chunk, T - t0)
        act = _activity(cfg, sched, txs, rng, n)
        hits = (conf @ act.T.astype(np.int32)).T  # (n, n_tx) active neighbour tx in the same cell
        coll = act & (hits > 0)
        attempts = act.astype(np.int64)
        still = coll
        idx = np.arange(txs.sensor.size)
        for _ in range(energy.retry_limit):
            attempts += still
            idx = txs.next[idx]
            still = still & (hits[:, idx] > 0)
        sl = slice(t0, t0 + n)
        out["tx"][sl] = _per_sensor(act.astype(np.int64), txs.start, S)
        out["collided"][sl] = _per_sensor(coll.astype(np.int64), txs.start, S)
        out["coincidences"][sl] = _per_sensor(np.where(act, hits, 0), txs.start, S)
        out["attempts"][sl] = _per_sensor(attempts, txs.start, S)
    rep = CollisionReport(
        sched.scheme, cfg.omega, cfg.n_wbans, sched.frame_length, cfg.seed,
        degree=net.degree(), n_wbans_for_pc=cfg.n_wbans, **out,
    )
    rep.pc = account_power(rep, energy)
    return rep


def account_power(report: CollisionReport, energy: EnergyModel) -> float:
    """Mean power per WBAN in mW: every attempt costs ``e_tx`` over the run's wall-clock."""
    if energy.retry_limit < 0:
        raise ValueError("retry limit must be >= 0")
    T = report.tx.shape[0]
    duration = T * energy.superframe_s
    return float(report.attempts.sum()) * energy.e_tx_mj / (report.n_wbans_for_pc * duration)


def simulate(scheme: str, cfg: NetworkConfig, family=None, net: Network | None = None) -> CollisionReport:
    net = build_network(cfg) if net is None else net
    return run(net, assign_schedules(scheme, net, cfg, family), cfg)


def theorem_violations(net: Network, sched: Schedule, report: CollisionReport, cfg: NetworkConfig,
                       lower: bool | None = None) -> list[str]:
    """Per-superframe collision bounds for DAIL schedules.

    Neighbours holding the very same pattern (same rectangle and symbol) are
    left out; they collide on every hop by construction.  The remaining
    neighbours may each add at most one collision per superframe.  The lower
    bound ``max(Q_s - K + 1, 0)`` is only checked (by default) when every
    neighbour is guaranteed to meet the sensor: full squares, distinct
    rectangles per WBAN and omega = 1.
    """
    if sched.scheme != "DAIL":
        return []
    same_pattern = (sched.rectangle[:, None] == sched.rectangle[None, :]) & (
        sched.symbol[:, None] == sched.symbol[None, :]
    )
    adj = net.adjacency()
    mask = adj & ~same_pattern
    q_s = mask.sum(axis=1)
    if lower is None:
        distinct = len(set(sched.wban_rectangle.tolist())) == cfg.n_wbans
        lower = sched.full_square and distinct and cfg.omega == 1.0 and cfg.traffic == "pattern"
    if mask.sum() == adj.sum():
        counts = report.coincidences
    else:
        txs = transmissions(net, sched, pairs_mask=mask)
        rep = run_counts(txs, cfg, sched, net.n_sensors)
        counts = rep
    K = sched.frame_length
    lo = np.maximum(q_s - K + 1, 0)
    out = []
    over = counts > q_s[None, :]
    under = counts < lo[None, :] if lower else np.zeros_like(over)
    for kind, bad in (("above", over), ("below", under)):
        if bad.any():
            t, s = np.argwhere(bad)[0]
            out.append(
                f"superframe {t}, sensor {s}: {counts[t, s]} collisions {kind} bound "
                f"[{lo[s]}, {q_s[s]}] ({int(bad.sum())} sensor-superframes affected)"
            )
    return out


def run_counts(txs: Transmissions, cfg: NetworkConfig, sched: Schedule, S: int) -> np.ndarray:
    """Coincidence counts for an already-flattened schedule, replaying the run's activity draws."""
    rng = cfg.streams()[2]
    T = cfg.superframes
    out = np.zeros((T, S), dtype=np.int64)
    for t0 in range(0, T, 250):
        n = min(250, T - t0)
        act = _activity(cfg, sched, txs, rng, n)
        hits = (txs.conflicts @ act.T.astype(np.int32)).T
        out[t0 : t0 + n] = _per_sensor(np.where(act, hits, 0), txs.start, S)
    return out
