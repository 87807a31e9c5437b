"""Latin squares, orthogonal families, Latin rectangles and transmission patterns.

Rows of a rectangle are channels, columns are time-slots, and the cells holding
one symbol form the hop sequence of the sensor that owns that symbol.  All
symbols are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def _frozen(grid) -> np.ndarray:
    a = np.array(grid, dtype=np.int64, copy=True)
    a.setflags(write=False)
    return a


def _distinct_lines(grid: np.ndarray, axis: int) -> bool:
    s = np.sort(grid, axis=axis)
    d = np.diff(s, axis=axis)
    return bool(np.all(d != 0))


@dataclass(frozen=True, eq=False)
class LatinSquare:
    grid: np.ndarray

    def __post_init__(self):
        g = _frozen(self.grid)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 1:
            raise ValueError(f"a Latin square needs a non-empty square grid, got shape {g.shape}")
        q = g.shape[0]
        if g.min() < 0 or g.max() >= q:
            raise ValueError(f"symbols must lie in 0..{q - 1}")
        if not (_distinct_lines(g, 1) and _distinct_lines(g, 0)):
            raise ValueError("every row and every column must be a permutation of 0..q-1")
        object.__setattr__(self, "grid", g)

    @property
    def order(self) -> int:
        return self.grid.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return np.array_equal(self.grid, other.grid)

    def __hash__(self):
        return hash(self.grid.tobytes())

    def __repr__(self):
        return f"LatinSquare(order={self.order})"


@dataclass(frozen=True, eq=False)
class OrthogonalFamily:
    """Pairwise-orthogonal Latin squares of one order.

    Construction checks every pair, so an instance is always a valid family.
    """

    squares: tuple[LatinSquare, ...]

    def __post_init__(self):
        sq = tuple(self.squares)
        if not sq:
            raise ValueError("an orthogonal family needs at least one square")
        q = sq[0].order
        if any(s.order != q for s in sq):
            raise ValueError("all squares in a family must share one order")
        if len(sq) > max(q - 1, 1):
            raise ValueError(f"at most {q - 1} mutually orthogonal squares exist for order {q}")
        for a in range(len(sq)):
            for b in range(a + 1, len(sq)):
                if not are_orthogonal(sq[a], sq[b]):
                    raise ValueError(f"squares {a} and {b} are not orthogonal")
        object.__setattr__(self, "squares", sq)

    @property
    def order(self) -> int:
        return self.squares[0].order

    def __len__(self):
        return len(self.squares)

    def __getitem__(self, i) -> LatinSquare:
        return self.squares[i]

    def __iter__(self):
        return iter(self.squares)

    def __eq__(self, other):
        if not isinstance(other, OrthogonalFamily):
            return NotImplemented
        return self.squares == other.squares

    def __hash__(self):
        return hash(self.squares)

    def __repr__(self):
        return f"OrthogonalFamily(order={self.order}, size={len(self)})"


@dataclass(frozen=True, eq=False)
class LatinRectangle:
    grid: np.ndarray
    alphabet_size: int
    source: tuple[int, int] = (0, 0)  # (family id, square index)

    def __post_init__(self):
        g = _frozen(self.grid)
        q = int(self.alphabet_size)
        if g.ndim != 2 or 0 in g.shape:
            raise ValueError(f"a Latin rectangle needs a non-empty 2-D grid, got shape {g.shape}")
        if g.shape[0] > q or g.shape[1] > q:
            raise ValueError(f"a {g.shape[0]}x{g.shape[1]} rectangle cannot be Latin over {q} symbols")
        if g.min() < 0 or g.max() >= q:
            raise ValueError(f"symbols must lie in 0..{q - 1}")
        if not (_distinct_lines(g, 1) and _distinct_lines(g, 0)):
            raise ValueError("symbols must be distinct within every row and every column")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "alphabet_size", q)
        object.__setattr__(self, "source", tuple(int(v) for v in self.source))

    @property
    def rows(self) -> int:
        return self.grid.shape[0]

    @property
    def cols(self) -> int:
        return self.grid.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.grid.shape

    def __eq__(self, other):
        if not isinstance(other, LatinRectangle):
            return NotImplemented
        return (
            self.alphabet_size == other.alphabet_size
            and self.source == other.source
            and np.array_equal(self.grid, other.grid)
        )

    def __hash__(self):
        return hash((self.grid.tobytes(), self.grid.shape, self.alphabet_size, self.source))

    def __repr__(self):
        return f"LatinRectangle({self.rows}x{self.cols}, q={self.alphabet_size}, source={self.source})"


@dataclass(frozen=True)
class TransmissionPattern:
    """Hop sequence of one symbol: (channel, slot) cells sorted by channel."""

    symbol: int
    hops: tuple[tuple[int, int], ...]
    shape: tuple[int, int] = field(default=(0, 0))  # (channels, slots) of the source rectangle

    def __post_init__(self):
        hops = tuple((int(c), int(s)) for c, s in self.hops)
        chans = [c for c, _ in hops]
        slots = [s for _, s in hops]
        if len(set(chans)) != len(chans) or len(set(slots)) != len(slots):
            raise ValueError("a transmission pattern cannot reuse a channel or a slot")
        object.__setattr__(self, "hops", hops)
        object.__setattr__(self, "shape", tuple(int(v) for v in self.shape))

    def __len__(self):
        return len(self.hops)

    def cells(self) -> frozenset:
        return frozenset(self.hops)


def generate_mols(q: int) -> OrthogonalFamily:
    """Complete family of q-1 mutually orthogonal Latin squares of prime order q.

    Square ``a`` (1 <= a < q) has ``grid[i][j] = (a*i + j) mod q``.  For q = 2
    the single square ``[[0, 1], [1, 0]]`` is returned.
    """
    q = int(q)
    if q < 2 or not is_prime(q):
        raise ValueError(f"order {q} is not a prime >= 2; smallest usable prime is {next_prime(q)}")
    i = np.arange(q)[:, None]
    j = np.arange(q)[None, :]
    return OrthogonalFamily(tuple(LatinSquare((a * i + j) % q) for a in range(1, q)))


def are_orthogonal(e: LatinSquare, f: LatinSquare) -> bool:
    if e.order != f.order:
        raise ValueError(f"order mismatch: {e.order} vs {f.order}")
    q = e.order
    pairs = e.grid.ravel() * q + f.grid.ravel()
    return np.unique(pairs).size == q * q


def cut_rectangle(s: LatinSquare, channels: int, slots: int, source: tuple[int, int] = (0, 0)) -> LatinRectangle:
    """Top-left ``channels x slots`` block of ``s``."""
    if not (1 <= channels <= s.order and 1 <= slots <= s.order):
        raise ValueError(f"cannot cut {channels}x{slots} from an order-{s.order} square")
    return LatinRectangle(s.grid[:channels, :slots], s.order, source)


def pattern_of(r: LatinRectangle | LatinSquare, symbol: int) -> TransmissionPattern:
    if isinstance(r, LatinSquare):
        r = cut_rectangle(r, r.order, r.order)
    if not 0 <= symbol < r.alphabet_size:
        raise ValueError(f"symbol {symbol} outside alphabet 0..{r.alphabet_size - 1}")
    ch, sl = np.nonzero(r.grid == symbol)  # row-major, so already sorted by channel
    return TransmissionPattern(int(symbol), tuple(zip(ch.tolist(), sl.tolist())), r.shape)


def overlap_count(p1: TransmissionPattern, p2: TransmissionPattern) -> int:
    if p1.shape != p2.shape:
        raise ValueError(f"patterns come from rectangles of different size: {p1.shape} vs {p2.shape}")
    return len(p1.cells() & p2.cells())


def family_rectangles(family: Iterable[LatinSquare], channels: int, slots: int, family_id: int = 0) -> list[LatinRectangle]:
    return [cut_rectangle(s, channels, slots, (family_id, k)) for k, s in enumerate(family)]


def rectangle_family(channels: int, slots: int) -> tuple[OrthogonalFamily, list[LatinRectangle]]:
    """Family sized for a ``channels x slots`` superframe.

    The order is the smallest prime >= max(channels, slots); rows are clipped
    to that order.
    """
    q = next_prime(max(channels, slots))
    fam = generate_mols(q)
    return fam, family_rectangles(fam, min(channels, q), slots)


# --- text format: header "q rows cols index", then rows of space-separated ints ---

def dumps_rectangle(r: LatinRectangle) -> str:
    lines = [f"{r.alphabet_size} {r.rows} {r.cols} {r.source[1]}"]
    lines += [" ".join(str(int(v)) for v in row) for row in r.grid]
    return "\n".join(lines) + "\n"


def _parse_blocks(lines: Sequence[str]):
    lines = [ln for ln in lines if ln.strip()]
    pos = 0
    while pos < len(lines):
        head = lines[pos].split()
        if len(head) != 4:
            raise ValueError(f"bad header line {lines[pos]!r}; expected 'q rows cols index'")
        q, rows, cols, index = (int(v) for v in head)
        body = [[int(v) for v in ln.split()] for ln in lines[pos + 1 : pos + 1 + rows]]
        if len(body) != rows or any(len(b) != cols for b in body):
            raise ValueError(f"block at line {pos + 1} does not hold {rows} rows of {cols} integers")
        yield q, index, np.array(body, dtype=np.int64).reshape(rows, cols)
        pos += 1 + rows


def loads_rectangle(text: str, family_id: int = 0) -> LatinRectangle:
    blocks = list(_parse_blocks(text.splitlines()))
    if len(blocks) != 1:
        raise ValueError(f"expected one rectangle, found {len(blocks)}")
    q, index, grid = blocks[0]
    return LatinRectangle(grid, q, (family_id, index))


def dumps_family(family: Iterable[LatinSquare] | Iterable[LatinRectangle]) -> str:
    out = []
    for k, s in enumerate(family):
        if isinstance(s, LatinSquare):
            s = LatinRectangle(s.grid, s.order, (0, k))
        out.append(dumps_rectangle(s))
    return "".join(out)


def loads_family(text: str) -> list[LatinRectangle]:
    return [LatinRectangle(g, q, (0, idx)) for q, idx, g in _parse_blocks(text.splitlines())]


def dump_family(family, fp: TextIO) -> None:
    fp.write(dumps_family(family))


def load_family(fp: TextIO) -> list[LatinRectangle]:
    return loads_family(fp.read())
