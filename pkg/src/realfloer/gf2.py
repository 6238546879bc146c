"""Exact linear algebra over the two-element field.

Matrices are stored as word-packed rows: bit ``j`` of row ``i`` lives in
word ``j // 64`` at bit position ``j % 64``.  Column ``j`` of a matrix is the
image of the ``j``-th source basis vector, so ``m[i, j]`` is the coefficient
of target generator ``i`` in the image of source generator ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BitMatrix",
    "RankProfile",
    "multiply",
    "rank_kernel_image",
    "solve",
    "block_assemble",
    "block_extract",
    "hstack",
    "vstack",
]

_WORD = 64
_DT = np.dtype("<u8")


def _nwords(cols: int) -> int:
    return (cols + _WORD - 1) // _WORD


def _pack(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    nw = _nwords(cols)
    if rows == 0 or nw == 0:
        return np.zeros((rows, nw), dtype=_DT)
    padded = np.zeros((rows, nw * _WORD), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    return np.packbits(padded, axis=1, bitorder="little").view(_DT).reshape(rows, nw)


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    raw = np.ascontiguousarray(words).view(np.uint8).reshape(rows, -1)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


class BitMatrix:
    """Immutable matrix over GF(2)."""

    __slots__ = ("rows", "cols", "_words", "_hash")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape {rows}x{cols}")
        nw = _nwords(cols)
        if words is None:
            words = np.zeros((rows, nw), dtype=_DT)
        elif words.shape != (rows, nw):
            raise ValueError(f"word array shape {words.shape} does not fit {rows}x{cols}")
        words = np.array(words, dtype=_DT, copy=True)
        words.setflags(write=False)
        self.rows = rows
        self.cols = cols
        self._words = words
        self._hash = None

    # construction

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> BitMatrix:
        arr = np.asarray(dense)
        if arr.ndim != 2:
            raise ValueError("dense matrix must be two-dimensional")
        arr = (arr.astype(np.int64) & 1).astype(np.uint8)
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> BitMatrix:
        dense = np.zeros((rows, cols), dtype=np.uint8)
        seen = set()
        for i, j in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if (i, j) in seen:
                raise ValueError(f"duplicate entry ({i}, {j})")
            seen.add((i, j))
            dense[i, j] = 1
        return cls(rows, cols, _pack(dense))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Iterable[int]]) -> BitMatrix:
        """Matrix whose ``j``-th column has ones at the listed row indices."""
        dense = np.zeros((rows, len(columns)), dtype=np.uint8)
        for j, col in enumerate(columns):
            for i in col:
                dense[i, j] ^= 1
        return cls(rows, len(columns), _pack(dense))

    # views

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def words(self) -> np.ndarray:
        return self._words

    def to_dense(self) -> np.ndarray:
        return _unpack(self._words, self.cols).copy()

    def entries(self) -> list[tuple[int, int]]:
        ii, jj = np.nonzero(self.to_dense())
        return sorted(zip(ii.tolist(), jj.tolist()))

    def nnz(self) -> int:
        return int(self.to_dense().sum())

    def is_zero(self) -> bool:
        return not self._words.any()

    def __getitem__(self, key) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return int((int(self._words[i, j // _WORD]) >> (j % _WORD)) & 1)

    def column(self, j: int) -> list[int]:
        return np.flatnonzero(self.to_dense()[:, j]).tolist()

    def columns(self) -> list[list[int]]:
        dense = self.to_dense()
        return [np.flatnonzero(dense[:, j]).tolist() for j in range(self.cols)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> BitMatrix:
        dense = self.to_dense()
        return BitMatrix.from_dense(dense[np.ix_(list(rows), list(cols))]) if len(rows) and len(cols) \
            else BitMatrix(len(rows), len(cols))

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def flip(self, i: int, j: int) -> BitMatrix:
        dense = self.to_dense()
        dense[i, j] ^= 1
        return BitMatrix.from_dense(dense)

    # arithmetic

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols}")
        return BitMatrix(self.rows, self.cols, self._words ^ other._words)

    __sub__ = __add__

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._words.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    if a.rows == 0 or b.cols == 0 or a.cols == 0:
        return BitMatrix(a.rows, b.cols)
    # float64 products are exact while the inner dimension stays below 2**53
    prod = a.to_dense().astype(np.float64) @ b.to_dense().astype(np.float64)
    return BitMatrix.from_dense(np.fmod(prod, 2.0).astype(np.uint8))


def _eliminate(words: np.ndarray, pivot_cols: int) -> list[int]:
    """In-place Gauss-Jordan reduction over GF(2).

    Columns are scanned left to right; the pivot is the lowest-index row
    (among rows not yet used) holding a one.  Returns the pivot columns.
    """
    nrows = words.shape[0]
    pivots: list[int] = []
    r = 0
    one = np.uint64(1)
    for j in range(pivot_cols):
        if r == nrows:
            break
        w = j // _WORD
        bit = np.uint64(j % _WORD)
        hits = np.flatnonzero((words[r:, w] >> bit) & one)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        col = np.flatnonzero((words[:, w] >> bit) & one)
        col = col[col != r]
        if col.size:
            words[col] ^= words[r]
        pivots.append(j)
        r += 1
    return pivots


@dataclass(frozen=True)
class RankProfile:
    """Rank, a kernel basis and an image basis of a matrix.

    ``kernel`` is a ``cols x nullity`` matrix whose columns span the kernel;
    ``image`` is a ``rows x rank`` matrix whose columns are the pivot columns
    of the original matrix.
    """

    rank: int
    pivots: tuple[int, ...]
    kernel: BitMatrix
    image: BitMatrix

    @property
    def kernel_basis(self) -> list[list[int]]:
        return self.kernel.columns()

    @property
    def image_basis(self) -> list[list[int]]:
        return self.image.columns()

    @property
    def nullity(self) -> int:
        return self.kernel.cols


def rank_kernel_image(m: BitMatrix) -> RankProfile:
    words = np.array(m.words, copy=True)
    pivots = _eliminate(words, m.cols)
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    kernel = np.zeros((m.cols, len(free)), dtype=np.uint8)
    if free:
        reduced = _unpack(words[:rank], m.cols)
        for k, f in enumerate(free):
            kernel[f, k] = 1
            for r, pc in enumerate(pivots):
                kernel[pc, k] = reduced[r, f]
    image = m.submatrix(range(m.rows), pivots) if rank else BitMatrix(m.rows, 0)
    return RankProfile(rank, tuple(pivots), BitMatrix.from_dense(kernel) if free else BitMatrix(m.cols, 0), image)


def rank(m: BitMatrix) -> int:
    words = np.array(m.words, copy=True)
    return len(_eliminate(words, m.cols))


def solve(m: BitMatrix, rhs: BitMatrix) -> BitMatrix | None:
    """Return some ``x`` with ``m @ x == rhs``, or ``None`` when none exists."""
    if m.rows != rhs.rows:
        raise ValueError(f"dimension mismatch: {m.rows}x{m.cols} against right side {rhs.rows}x{rhs.cols}")
    aug = hstack([m, rhs])
    words = np.array(aug.words, copy=True)
    pivots = _eliminate(words, m.cols)
    dense = _unpack(words, aug.cols)
    rank_ = len(pivots)
    if dense[rank_:, m.cols:].any():
        return None
    x = np.zeros((m.cols, rhs.cols), dtype=np.uint8)
    for r, pc in enumerate(pivots):
        x[pc] = dense[r, m.cols:]
    return BitMatrix.from_dense(x)


def hstack(mats: Sequence[BitMatrix]) -> BitMatrix:
    if not mats:
        raise ValueError("hstack of nothing")
    rows = mats[0].rows
    for k, mat in enumerate(mats):
        if mat.rows != rows:
            raise ValueError(f"hstack: block {k} has {mat.rows} rows, expected {rows}")
    return BitMatrix.from_dense(np.hstack([mat.to_dense() for mat in mats])) if sum(x.cols for x in mats) \
        else BitMatrix(rows, 0)


def vstack(mats: Sequence[BitMatrix]) -> BitMatrix:
    if not mats:
        raise ValueError("vstack of nothing")
    cols = mats[0].cols
    for k, mat in enumerate(mats):
        if mat.cols != cols:
            raise ValueError(f"vstack: block {k} has {mat.cols} columns, expected {cols}")
    return BitMatrix.from_dense(np.vstack([mat.to_dense() for mat in mats])) if sum(x.rows for x in mats) \
        else BitMatrix(0, cols)


def block_assemble(blocks: Sequence[Sequence[BitMatrix | None]], row_sizes: Sequence[int],
                   col_sizes: Sequence[int]) -> BitMatrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    if len(blocks) != len(row_sizes):
        raise ValueError(f"grid has {len(blocks)} block rows, expected {len(row_sizes)}")
    row_off = np.concatenate([[0], np.cumsum(row_sizes, dtype=np.int64)]).tolist()
    col_off = np.concatenate([[0], np.cumsum(col_sizes, dtype=np.int64)]).tolist()
    dense = np.zeros((row_off[-1], col_off[-1]), dtype=np.uint8)
    for r, line in enumerate(blocks):
        if len(line) != len(col_sizes):
            raise ValueError(f"block row {r} has {len(line)} cells, expected {len(col_sizes)}")
        for c, blk in enumerate(line):
            if blk is None:
                continue
            if blk.shape != (row_sizes[r], col_sizes[c]):
                raise ValueError(
                    f"block ({r}, {c}) has shape {blk.rows}x{blk.cols}, "
                    f"expected {row_sizes[r]}x{col_sizes[c]}")
            dense[row_off[r]:row_off[r + 1], col_off[c]:col_off[c + 1]] = blk.to_dense()
    return BitMatrix.from_dense(dense) if dense.size else BitMatrix(row_off[-1], col_off[-1])


def block_extract(m: BitMatrix, row_sizes: Sequence[int], col_sizes: Sequence[int]) -> list[list[BitMatrix]]:
    if sum(row_sizes) != m.rows or sum(col_sizes) != m.cols:
        raise ValueError(f"layout {list(row_sizes)}x{list(col_sizes)} does not fit {m.rows}x{m.cols}")
    row_off = np.concatenate([[0], np.cumsum(row_sizes, dtype=np.int64)]).tolist()
    col_off = np.concatenate([[0], np.cumsum(col_sizes, dtype=np.int64)]).tolist()
    return [[m.submatrix(range(row_off[r], row_off[r + 1]), range(col_off[c], col_off[c + 1]))
             for c in range(len(col_sizes))] for r in range(len(row_sizes))]
