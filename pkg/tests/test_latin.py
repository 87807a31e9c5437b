import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dail.latin import (
    LatinRectangle,
    LatinSquare,
    OrthogonalFamily,
    TransmissionPattern,
    are_orthogonal,
    cut_rectangle,
    dumps_family,
    dumps_rectangle,
    family_rectangles,
    generate_mols,
    is_prime,
    loads_family,
    loads_rectangle,
    next_prime,
    overlap_count,
    pattern_of,
    rectangle_family,
)

from conftest import B, G, R

PRIMES = [2, 3, 5, 7, 11, 13, 17]


def brute_orthogonal(a, b):
    q = len(a)
    return len({(a[i][j], b[i][j]) for i in range(q) for j in range(q)}) == q * q


def brute_cells(grid, symbol):
    return [(i, j) for i in range(len(grid)) for j in range(len(grid[0])) if grid[i][j] == symbol]


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert next_prime(16) == 17 and next_prime(17) == 17 and next_prime(0) == 2


def test_mols_order_two():
    fam = generate_mols(2)
    assert len(fam) == 1
    assert fam[0].grid.tolist() == [[0, 1], [1, 0]]


def test_mols_order_five_pairwise_brute_force():
    fam = generate_mols(5)
    assert len(fam) == 4
    for a, b in itertools.combinations(fam, 2):
        assert brute_orthogonal(a.grid.tolist(), b.grid.tolist())
        assert are_orthogonal(a, b)


@pytest.mark.parametrize("q", [4, 1, 0, 9, 15])
def test_mols_rejects_non_prime(q):
    with pytest.raises(ValueError, match=f"smallest usable prime is {next_prime(q)}"):
        generate_mols(q)


@pytest.mark.parametrize("q", PRIMES)
def test_mols_complete_and_valid(q):
    fam = generate_mols(q)
    assert len(fam) == q - 1
    for s in fam:
        g = s.grid
        assert all(sorted(row) == list(range(q)) for row in g.tolist())
        assert all(sorted(col) == list(range(q)) for col in g.T.tolist())


def test_latin_square_validation():
    with pytest.raises(ValueError):
        LatinSquare([[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        LatinSquare([[0, 2], [2, 0]])
    with pytest.raises(ValueError):
        LatinSquare([[0, 1, 2], [1, 2, 0]])
    s = LatinSquare([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        s.grid[0, 0] = 1


def test_family_rejects_non_orthogonal(efj):
    e, f, _ = efj
    with pytest.raises(ValueError, match="not orthogonal"):
        OrthogonalFamily((e, f))
    with pytest.raises(ValueError, match="order"):
        OrthogonalFamily((generate_mols(3)[0], generate_mols(5)[0]))


def test_worked_example_squares_against_enumeration(efj):
    # the printed E, F, J are cyclic shifts of each other, so superimposing
    # any two yields only q distinct ordered pairs
    e, f, j = efj
    for a, b in [(e, f), (e, j), (f, j)]:
        assert are_orthogonal(a, b) == brute_orthogonal(a.grid.tolist(), b.grid.tolist())
    pairs = {(int(x), int(y)) for x, y in zip(e.grid.ravel(), f.grid.ravel())}
    assert len(pairs) == 4
    assert not are_orthogonal(e, f)
    assert not are_orthogonal(e, j)


def test_square_not_orthogonal_to_itself():
    for q in PRIMES:
        s = generate_mols(q)[0]
        assert not are_orthogonal(s, s)


def test_orthogonal_order_mismatch():
    with pytest.raises(ValueError, match="order mismatch"):
        are_orthogonal(generate_mols(3)[0], generate_mols(5)[0])


def test_cut_identity(efj):
    e = efj[0]
    r = cut_rectangle(e, 4, 4)
    assert np.array_equal(r.grid, e.grid)


def test_cut_top_rows(efj):
    r = cut_rectangle(efj[0], 2, 4)
    assert (r.grid + 1).tolist() == [[1, 2, 3, 4], [2, 3, 4, 1]]


def test_cut_16x12():
    s = generate_mols(17)[0]
    r = cut_rectangle(s, 16, 12)
    assert r.shape == (16, 12) and r.alphabet_size == 17
    for col in r.grid.T.tolist():
        assert len(set(col)) == 16
    for row in r.grid.tolist():
        assert len(set(row)) == 12


def test_cut_too_large(efj):
    with pytest.raises(ValueError):
        cut_rectangle(efj[0], 5, 4)
    with pytest.raises(ValueError):
        cut_rectangle(efj[0], 4, 5)


def test_rectangle_rejects_repeats():
    with pytest.raises(ValueError):
        LatinRectangle([[0, 1], [0, 2]], 3)
    with pytest.raises(ValueError):
        LatinRectangle([[0, 1, 2, 3]], 3)


def test_pattern_of_worked_example(efj):
    p = pattern_of(cut_rectangle(efj[0], 4, 4), B)
    one_based = {(c + 1, s + 1) for c, s in p.hops}
    assert one_based == {(1, 2), (2, 1), (3, 4), (4, 3)}
    assert [c for c, _ in p.hops] == sorted(c for c, _ in p.hops)


def test_pattern_of_one_by_one():
    r = LatinRectangle([[0]], 3)
    assert pattern_of(r, 0).hops == ((0, 0),)
    assert pattern_of(r, 1).hops == ()
    assert pattern_of(r, 2).hops == ()


def test_pattern_of_matches_grid_scan():
    r = cut_rectangle(generate_mols(17)[2], 16, 12)  # a = 3
    assert list(pattern_of(r, 0).hops) == brute_cells(r.grid.tolist(), 0)


def test_pattern_of_out_of_alphabet():
    r = LatinRectangle([[0]], 3)
    with pytest.raises(ValueError):
        pattern_of(r, 3)
    with pytest.raises(ValueError):
        pattern_of(r, -1)


def test_transmission_pattern_invariants():
    with pytest.raises(ValueError):
        TransmissionPattern(0, ((0, 0), (0, 1)))
    with pytest.raises(ValueError):
        TransmissionPattern(0, ((0, 1), (1, 1)))


def test_overlap_worked_example(efj):
    e, f, j = (cut_rectangle(s, 4, 4) for s in efj)
    pu, pv, pw = pattern_of(e, B), pattern_of(f, R), pattern_of(j, G)
    assert overlap_count(pu, pv) == 0
    assert overlap_count(pu, pw) == 0
    assert overlap_count(pv, pw) == 0


def test_overlap_dimension_mismatch():
    s = generate_mols(5)[0]
    with pytest.raises(ValueError):
        overlap_count(pattern_of(cut_rectangle(s, 3, 5), 0), pattern_of(cut_rectangle(s, 4, 5), 0))


def test_overlap_q7_exhaustive():
    fam = generate_mols(7)
    for rows, cols in [(7, 7), (5, 7), (7, 4), (3, 3)]:
        rects = family_rectangles(fam, rows, cols)
        pats = [(k, s, pattern_of(r, s)) for k, r in enumerate(rects) for s in range(7)]
        for (ka, sa, pa), (kb, sb, pb) in itertools.combinations(pats, 2):
            n = overlap_count(pa, pb)
            brute = len(set(brute_cells(rects[ka].grid.tolist(), sa)) & set(brute_cells(rects[kb].grid.tolist(), sb)))
            assert n == brute
            assert n == 0 if ka == kb else n in (0, 1)


def test_rectangle_family_sizes():
    fam, rects = rectangle_family(16, 12)
    assert fam.order == 17 and len(rects) == 16
    assert all(r.shape == (16, 12) for r in rects)
    fam, rects = rectangle_family(16, 28)
    assert fam.order == 29 and rects[0].shape == (16, 28)


def test_text_round_trip():
    r = cut_rectangle(generate_mols(17)[4], 16, 12, (0, 4))
    text = dumps_rectangle(r)
    assert text.splitlines()[0] == "17 16 12 4"
    back = loads_rectangle(text)
    assert back == r
    assert dumps_rectangle(back) == text


def test_family_round_trip():
    fam = generate_mols(7)
    text = dumps_family(fam)
    rects = loads_family(text)
    assert len(rects) == 6
    assert all(np.array_equal(a.grid, b.grid) for a, b in zip(rects, fam))
    assert dumps_family(rects) == text


def test_text_bad_input():
    with pytest.raises(ValueError):
        loads_rectangle("3 2 2\n0 1\n1 0\n")
    with pytest.raises(ValueError):
        loads_rectangle("3 2 2 0\n0 1\n")


@st.composite
def cuts(draw):
    q = draw(st.sampled_from(PRIMES))
    a = draw(st.integers(0, max(len(generate_mols(q)) - 1, 0)))
    rows = draw(st.integers(1, q))
    cols = draw(st.integers(1, q))
    return q, a, rows, cols


@settings(max_examples=60, deadline=None)
@given(cuts())
def test_patterns_partition_the_rectangle(c):
    q, a, rows, cols = c
    r = cut_rectangle(generate_mols(q)[a], rows, cols)
    seen = []
    for s in range(q):
        p = pattern_of(r, s)
        assert len(p) <= min(rows, cols)
        assert all(r.grid[i, j] == s for i, j in p.hops)
        seen += p.hops
    assert len(seen) == len(set(seen)) == rows * cols


@settings(max_examples=60, deadline=None)
@given(cuts())
def test_full_cut_reproduces_square(c):
    q, a, _, _ = c
    s = generate_mols(q)[a]
    assert np.array_equal(cut_rectangle(s, q, q).grid, s.grid)


@settings(max_examples=40, deadline=None)
@given(cuts())
def test_serialization_round_trip(c):
    q, a, rows, cols = c
    r = cut_rectangle(generate_mols(q)[a], rows, cols, (0, a))
    assert loads_rectangle(dumps_rectangle(r)) == r
