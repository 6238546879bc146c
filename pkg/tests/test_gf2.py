from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import matmul_loops, rank_sets, rank_xor_basis
from realfloer.gf2 import (BitMatrix, block_assemble, block_extract, hstack, multiply, rank, rank_kernel_image,
                           solve, vstack)


def dense_matrices(max_rows=9, max_cols=9):
    return st.tuples(st.integers(0, max_rows), st.integers(0, max_cols)).flatmap(
        lambda rc: st.lists(st.integers(0, 1), min_size=rc[0] * rc[1], max_size=rc[0] * rc[1]).map(
            lambda xs: np.array(xs, dtype=np.uint8).reshape(rc)))


def test_entries_roundtrip_and_validation():
    m = BitMatrix.from_entries(3, 4, [(0, 1), (2, 3)])
    assert m.entries() == [(0, 1), (2, 3)]
    assert m[0, 1] == 1 and m[1, 1] == 0
    with pytest.raises(ValueError, match="outside"):
        BitMatrix.from_entries(2, 2, [(2, 0)])
    with pytest.raises(ValueError, match="duplicate"):
        BitMatrix.from_entries(2, 2, [(1, 1), (1, 1)])


def test_identity_times_m():
    m = BitMatrix.from_dense([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert multiply(BitMatrix.identity(3), m) == m
    assert (m @ BitMatrix.zeros(3, 2)).is_zero()


def test_multiply_mismatch_names_shapes():
    with pytest.raises(ValueError, match=r"2x3 times 2x3"):
        multiply(BitMatrix.zeros(2, 3), BitMatrix.zeros(2, 3))


def test_random_5x4_times_4x6_matches_triple_loop():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b = rng.integers(0, 2, (5, 4)), rng.integers(0, 2, (4, 6))
        got = multiply(BitMatrix.from_dense(a), BitMatrix.from_dense(b)).to_dense()
        assert np.array_equal(got, matmul_loops(a, b))


def test_wide_matrices_cross_word_boundaries():
    rng = np.random.default_rng(3)
    a, b = rng.integers(0, 2, (7, 130)), rng.integers(0, 2, (130, 70))
    assert np.array_equal(multiply(BitMatrix.from_dense(a), BitMatrix.from_dense(b)).to_dense(), matmul_loops(a, b))
    assert rank(BitMatrix.from_dense(a)) == rank_xor_basis(a)


def test_identity_and_zero_rank():
    prof = rank_kernel_image(BitMatrix.identity(5))
    assert prof.rank == 5 and prof.nullity == 0
    prof = rank_kernel_image(BitMatrix.zeros(3, 4))
    assert prof.rank == 0 and prof.nullity == 4
    assert rank_kernel_image(BitMatrix.zeros(0, 0)).rank == 0


def test_random_6x6_rank_matches_both_oracles():
    rng = np.random.default_rng(11)
    for _ in range(200):
        d = rng.integers(0, 2, (6, 6))
        m = BitMatrix.from_dense(d)
        assert rank(m) == rank_xor_basis(d) == rank_sets(6, 6, m.entries())


@settings(max_examples=150, deadline=None)
@given(dense_matrices())
def test_rank_nullity_and_bases(d):
    m = BitMatrix.from_dense(d) if d.size else BitMatrix(*d.shape)
    prof = rank_kernel_image(m)
    assert prof.rank + prof.nullity == m.cols
    assert prof.rank == rank_xor_basis(d) if d.size else prof.rank == 0
    assert (m @ prof.kernel).is_zero()
    if prof.nullity:
        assert rank_xor_basis(prof.kernel.to_dense().T) == prof.nullity
    if prof.rank:
        img = prof.image
        assert rank_xor_basis(img.to_dense().T) == prof.rank
        assert solve(m, img) is not None


@settings(max_examples=100, deadline=None)
@given(dense_matrices(6, 6), dense_matrices(6, 6), dense_matrices(6, 6))
def test_multiply_associative(a, b, c):
    # cut the random shapes down to a composable triple
    n = min(a.shape[1], b.shape[0])
    k = min(b.shape[1], c.shape[0])
    A, B, C = (BitMatrix.from_dense(x) if x.size else BitMatrix(*x.shape)
               for x in (a[:, :n], b[:n, :k], c[:k, :]))
    assert (A @ B) @ C == A @ (B @ C)


def test_solve_none_when_inconsistent():
    m = BitMatrix.from_dense([[1, 1], [1, 1]])
    assert solve(m, BitMatrix.from_dense([[1], [0]])) is None
    x = solve(m, BitMatrix.from_dense([[1], [1]]))
    assert m @ x == BitMatrix.from_dense([[1], [1]])


def test_block_assemble_small_grid():
    one, zero = BitMatrix.from_dense([[1]]), BitMatrix.from_dense([[0]])
    m = block_assemble([[one, zero], [one, one]], [1, 1], [1, 1])
    assert m.to_dense().tolist() == [[1, 0], [1, 1]]
    assert block_assemble([[None, None], [None, None]], [2, 1], [3, 0]) == BitMatrix.zeros(3, 3)


def test_block_assemble_names_offending_cell():
    with pytest.raises(ValueError, match=r"block \(1, 0\)"):
        block_assemble([[None], [BitMatrix.zeros(2, 2)]], [1, 1], [2])


def test_block_layout_matches_index_arithmetic():
    rng = np.random.default_rng(5)
    rows, cols = [2, 3], [1, 4]
    grid = [[BitMatrix.from_dense(rng.integers(0, 2, (r, c))) for c in cols] for r in rows]
    m = block_assemble(grid, rows, cols).to_dense()
    for bi, r0 in enumerate([0, 2]):
        for bj, c0 in enumerate([0, 1]):
            blk = grid[bi][bj].to_dense()
            for i in range(rows[bi]):
                for j in range(cols[bj]):
                    assert m[r0 + i, c0 + j] == blk[i, j]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=3), st.lists(st.integers(0, 4), min_size=1, max_size=3),
       st.integers(0, 2 ** 32 - 1))
def test_block_roundtrip(rows, cols, seed):
    rng = np.random.default_rng(seed)
    grid = [[BitMatrix.from_dense(rng.integers(0, 2, (r, c))) if r and c else BitMatrix(r, c) for c in cols]
            for r in rows]
    assert block_extract(block_assemble(grid, rows, cols), rows, cols) == grid


def test_stack_helpers():
    a, b = BitMatrix.identity(2), BitMatrix.zeros(2, 1)
    assert hstack([a, b]).shape == (2, 3)
    assert vstack([a, BitMatrix.zeros(1, 2)]).shape == (3, 2)
    with pytest.raises(ValueError):
        hstack([a, BitMatrix.zeros(3, 1)])
