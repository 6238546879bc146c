"""Graded chain complexes over GF(2): homology, chain maps, homotopies, cones."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .gf2 import BitMatrix, block_assemble, hstack, rank_kernel_image, solve

__all__ = [
    "RefusalError",
    "Report",
    "Generator",
    "GradedBasis",
    "Window",
    "GradedComplex",
    "ChainMap",
    "ChainHomotopy",
    "Homology",
    "InducedMap",
    "verify_complex",
    "homology",
    "chain_map_violations",
    "mapping_cone",
    "induced_map_on_homology",
    "verify_homotopy_identity",
    "exactness",
    "as_fraction",
]


class RefusalError(Exception):
    """An operation refused because its precondition does not hold."""


@dataclass
class Report:
    ok: bool
    violations: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("gradings must be exact; got a float")
    return Fraction(value)


@dataclass(frozen=True)
class Generator:
    id: str
    grading: Fraction
    spinc: str = "s0"

    def __post_init__(self):
        object.__setattr__(self, "grading", as_fraction(self.grading))


class GradedBasis:
    """Ordered generators with rational gradings and spin-c labels."""

    __slots__ = ("generators", "_index", "_by_grading")

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        index: dict[str, int] = {}
        base: dict[str, Fraction] = {}
        for k, g in enumerate(gens):
            if g.id in index:
                raise ValueError(f"duplicate generator id {g.id!r}")
            index[g.id] = k
            ref = base.setdefault(g.spinc, g.grading)
            if (g.grading - ref).denominator != 1:
                raise ValueError(
                    f"generator {g.id!r} has grading {g.grading} not an integer away from "
                    f"{ref} within spin-c label {g.spinc!r}")
        self.generators = gens
        self._index = index
        by: dict[Fraction, list[int]] = {}
        for k, g in enumerate(gens):
            by.setdefault(g.grading, []).append(k)
        self._by_grading = {q: tuple(v) for q, v in sorted(by.items())}

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, k: int) -> Generator:
        return self.generators[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedBasis) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def index(self, gid: str) -> int:
        return self._index[gid]

    def __contains__(self, gid: str) -> bool:
        return gid in self._index

    @property
    def ids(self) -> list[str]:
        return [g.id for g in self.generators]

    @property
    def gradings(self) -> list[Fraction]:
        return [g.grading for g in self.generators]

    @property
    def by_grading(self) -> dict[Fraction, tuple[int, ...]]:
        return self._by_grading

    def spinc_labels(self) -> list[str]:
        seen: dict[str, None] = {}
        for g in self.generators:
            seen.setdefault(g.spinc, None)
        return list(seen)

    def shifted(self, delta) -> GradedBasis:
        delta = as_fraction(delta)
        return GradedBasis(Generator(g.id, g.grading + delta, g.spinc) for g in self.generators)


@dataclass(frozen=True)
class Window:
    """Grading interval on which a truncated complex is complete.

    Homology is trusted only at interior gradings, at least ``margin`` away
    from either edge.
    """

    lo: Fraction
    hi: Fraction
    margin: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))

    @classmethod
    def checked(cls, lo, hi) -> Window:
        w = cls(lo, hi)
        if not w.lo < w.hi:
            raise ValueError(f"window {w.lo}..{w.hi} is empty")
        if w.hi - w.lo < 3:
            raise ValueError(f"window {w.lo}..{w.hi} narrower than 3")
        return w

    @classmethod
    def parse(cls, text: str) -> Window:
        try:
            lo, hi = text.split("..")
            return cls.checked(Fraction(lo.strip()), Fraction(hi.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad window {text!r}: expected LO..HI") from exc

    def interior(self, q: Fraction) -> bool:
        return self.lo + self.margin <= q <= self.hi - self.margin

    def shifted(self, delta) -> Window:
        delta = as_fraction(delta)
        return Window(self.lo + delta, self.hi + delta, self.margin)

    def intersect(self, other: Window) -> Window:
        return Window(max(self.lo, other.lo), min(self.hi, other.hi), max(self.margin, other.margin))

    def widened(self, by: int = 1) -> Window:
        return Window(self.lo - by, self.hi + by, self.margin)

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}"


def _intersect(a: Window | None, b: Window | None) -> Window | None:
    if a is None:
        return b
    if b is None:
        return a
    return a.intersect(b)


class GradedComplex:
    """A finite graded complex; ``window`` marks where a truncation is complete."""

    __slots__ = ("basis", "differential", "window", "name")

    def __init__(self, basis: GradedBasis, differential: BitMatrix | None = None,
                 window: Window | None = None, name: str = ""):
        n = len(basis)
        if differential is None:
            differential = BitMatrix(n, n)
        if differential.shape != (n, n):
            raise ValueError(f"differential is {differential.rows}x{differential.cols}, "
                             f"basis has {n} generators")
        self.basis = basis
        self.differential = differential
        self.window = window
        self.name = name

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedComplex) and self.basis == other.basis
                and self.differential == other.differential)

    def __hash__(self) -> int:
        return hash((self.basis, self.differential))

    def is_interior(self, q) -> bool:
        return self.window is None or self.window.interior(as_fraction(q))

    def interior_gradings(self) -> list[Fraction]:
        return [q for q in self.basis.by_grading if self.is_interior(q)]

    def shifted(self, delta) -> GradedComplex:
        w = self.window.shifted(delta) if self.window is not None else None
        return GradedComplex(self.basis.shifted(delta), self.differential, w, self.name)

    def restrict(self, indices: Sequence[int]) -> GradedComplex:
        idx = list(indices)
        basis = GradedBasis(self.basis[k] for k in idx)
        return GradedComplex(basis, self.differential.submatrix(idx, idx), self.window, self.name)

    def spinc_part(self, label: str) -> GradedComplex:
        """Summand on one spin-c label; the differential must not mix labels."""
        idx = [k for k, g in enumerate(self.basis) if g.spinc == label]
        other = [k for k, g in enumerate(self.basis) if g.spinc != label]
        if idx and other:
            if not self.differential.submatrix(other, idx).is_zero() or \
                    not self.differential.submatrix(idx, other).is_zero():
                raise RefusalError(f"differential mixes spin-c label {label!r} with others")
        return self.restrict(idx)

    def __repr__(self) -> str:
        return f"GradedComplex({self.name or '?'}, {len(self)} generators)"


def _grading_mismatches(m: BitMatrix, rows: GradedBasis, cols: GradedBasis, shift: Fraction):
    dense = m.to_dense()
    out = []
    rg = rows.gradings
    cg = cols.gradings
    for i, j in zip(*np.nonzero(dense)):
        if rg[i] != cg[j] + shift:
            out.append((int(i), int(j)))
    return out


def verify_complex(c: GradedComplex) -> Report:
    violations = []
    for i, j in _grading_mismatches(c.differential, c.basis, c.basis, Fraction(-1)):
        gi, gj = c.basis[i], c.basis[j]
        violations.append(f"grading: entry ({i}, {j}) {gj.id}->{gi.id} goes {gj.grading} to {gi.grading}")
    sq = c.differential @ c.differential
    for i, j in sq.entries():
        violations.append(f"d^2: entry ({i}, {j}) {c.basis[j].id}->{c.basis[i].id} is nonzero")
    return Report(not violations, violations, {"generators": len(c)})


@dataclass(frozen=True)
class ChainMap:
    source: GradedComplex
    target: GradedComplex
    matrix: BitMatrix
    degree: Fraction = Fraction(0)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "degree", as_fraction(self.degree))
        if self.matrix.shape != (len(self.target), len(self.source)):
            raise ValueError(f"map {self.name or ''} is {self.matrix.rows}x{self.matrix.cols}, "
                             f"expected {len(self.target)}x{len(self.source)}")

    def __matmul__(self, other: ChainMap) -> ChainMap:
        """Composition ``self o other``."""
        if len(other.target) != len(self.source):
            raise ValueError("maps are not composable")
        return ChainMap(other.source, self.target, self.matrix @ other.matrix,
                        self.degree + other.degree)

    @classmethod
    def zero(cls, source: GradedComplex, target: GradedComplex, degree=0, name="") -> ChainMap:
        return cls(source, target, BitMatrix(len(target), len(source)), degree, name)

    @classmethod
    def identity(cls, c: GradedComplex) -> ChainMap:
        return cls(c, c, BitMatrix.identity(len(c)), Fraction(0), "id")


class ChainHomotopy(ChainMap):
    """Same data as a chain map; only the grading shift is an invariant."""


def chain_map_violations(f: ChainMap, check_commutes: bool = True) -> list[str]:
    out = []
    for i, j in _grading_mismatches(f.matrix, f.target.basis, f.source.basis, f.degree):
        out.append(f"grading: {f.name or 'map'} entry {f.source.basis[j].id}->{f.target.basis[i].id} "
                   f"shifts {f.source.basis[j].grading} to {f.target.basis[i].grading}, "
                   f"declared degree {f.degree}")
    if check_commutes:
        comm = f.target.differential @ f.matrix + f.matrix @ f.source.differential
        for i, j in comm.entries():
            out.append(f"chain: {f.name or 'map'} d f + f d nonzero at "
                       f"{f.source.basis[j].id}->{f.target.basis[i].id}")
    return out


@dataclass
class _Piece:
    indices: tuple[int, ...]
    boundaries: BitMatrix   # local coordinates, columns span the boundaries
    reps: BitMatrix         # local coordinates, one column per class
    span: BitMatrix         # [boundaries | reps]


class Homology:
    """Homology of a finite complex, graded, with cycle representatives."""

    def __init__(self, c: GradedComplex):
        self.complex = c
        d = c.differential
        by = c.basis.by_grading
        self.pieces: dict[Fraction, _Piece] = {}
        for q, idx in by.items():
            below = by.get(q - 1, ())
            above = by.get(q + 1, ())
            dq = d.submatrix(below, idx) if below else BitMatrix(0, len(idx))
            cycles = rank_kernel_image(dq).kernel
            b = d.submatrix(idx, above) if above else BitMatrix(len(idx), 0)
            both = hstack([b, cycles])
            prof = rank_kernel_image(both)
            rep_cols = [j - b.cols for j in prof.pivots if j >= b.cols]
            reps = cycles.submatrix(range(cycles.rows), rep_cols) if rep_cols else BitMatrix(len(idx), 0)
            self.pieces[q] = _Piece(tuple(idx), b, reps, hstack([b, reps]))

    def dim(self, q) -> int:
        piece = self.pieces.get(as_fraction(q))
        return piece.reps.cols if piece is not None else 0

    @property
    def dims(self) -> dict[Fraction, int]:
        return {q: p.reps.cols for q, p in self.pieces.items()}

    def interior_dims(self) -> dict[Fraction, int]:
        return {q: p.reps.cols for q, p in self.pieces.items() if self.complex.is_interior(q)}

    def total(self, interior: bool = True) -> int:
        return sum((self.interior_dims() if interior else self.dims).values())

    def representatives(self, q) -> list[list[str]]:
        piece = self.pieces.get(as_fraction(q))
        if piece is None:
            return []
        ids = self.complex.basis.ids
        return [[ids[piece.indices[i]] for i in col] for col in piece.reps.columns()]

    def coordinates(self, q, local: BitMatrix) -> BitMatrix:
        """Class coordinates of cycles given in the local basis at grading ``q``."""
        q = as_fraction(q)
        piece = self.pieces.get(q)
        if piece is None:
            if local.rows:
                raise ValueError(f"no generators at grading {q}")
            return BitMatrix(0, local.cols)
        x = solve(piece.span, local)
        if x is None:
            raise ValueError(f"vector at grading {q} is not a cycle")
        return x.submatrix(range(piece.boundaries.cols, x.rows), range(x.cols))

    def is_boundary(self, q, local: BitMatrix) -> bool:
        piece = self.pieces.get(as_fraction(q))
        if piece is None:
            return local.is_zero()
        return solve(piece.boundaries, local) is not None


def homology(c: GradedComplex) -> Homology:
    rep = verify_complex(c)
    if not rep.ok:
        raise RefusalError(f"complex {c.name or ''} failed verification: {rep.violations[0]}")
    return Homology(c)


@dataclass
class InducedMap:
    """Matrices of a map on homology, one block per interior source grading."""

    source: Homology
    target: Homology
    degree: Fraction
    blocks: dict[Fraction, BitMatrix]

    def rank(self, q) -> int:
        blk = self.blocks.get(as_fraction(q))
        return rank_kernel_image(blk).rank if blk is not None and blk.rows and blk.cols else 0

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def is_isomorphism(self) -> bool:
        for blk in self.blocks.values():
            if blk.rows != blk.cols or rank_kernel_image(blk).rank != blk.cols:
                return False
        return True

    def failures(self) -> list[Fraction]:
        return [q for q, blk in self.blocks.items()
                if blk.rows != blk.cols or rank_kernel_image(blk).rank != blk.cols]

    @property
    def matrix(self) -> BitMatrix:
        """Block-diagonal matrix over classes ordered by (grading, index)."""
        qs = sorted(self.blocks)
        rows = [self.blocks[q].rows for q in qs]
        cols = [self.blocks[q].cols for q in qs]
        grid = [[self.blocks[q] if a == b else None for b, _ in enumerate(qs)] for a, q in enumerate(qs)]
        return block_assemble(grid, rows, cols) if qs else BitMatrix(0, 0)


def _local(f: ChainMap, tgt_idx, src_idx) -> BitMatrix:
    if not tgt_idx or not src_idx:
        return BitMatrix(len(tgt_idx), len(src_idx))
    return f.matrix.submatrix(tgt_idx, src_idx)


def induced_map_on_homology(f: ChainMap, source_h: Homology | None = None,
                            target_h: Homology | None = None) -> InducedMap:
    bad = chain_map_violations(f)
    if bad:
        raise RefusalError(f"not a chain map: {bad[0]}")
    hs = source_h if source_h is not None else homology(f.source)
    ht = target_h if target_h is not None else homology(f.target)
    blocks: dict[Fraction, BitMatrix] = {}
    for q, piece in hs.pieces.items():
        tq = q + f.degree
        if not (f.source.is_interior(q) and f.target.is_interior(tq)):
            continue
        tpiece = ht.pieces.get(tq)
        tidx = tpiece.indices if tpiece is not None else ()
        local = _local(f, tidx, piece.indices)
        if piece.boundaries.cols and tidx:
            if not ht.is_boundary(tq, local @ piece.boundaries):
                raise RefusalError(f"map sends a boundary at grading {q} to a non-boundary")
        images = local @ piece.reps
        blocks[q] = ht.coordinates(tq, images) if tidx else BitMatrix(0, piece.reps.cols)
    return InducedMap(hs, ht, f.degree, blocks)


def mapping_cone(f: ChainMap, name: str = "") -> GradedComplex:
    """Cone of ``f``: target plus source shifted up by ``degree + 1``."""
    bad = chain_map_violations(f)
    if bad:
        raise RefusalError(f"cannot cone a non-chain map: {bad[0]}")
    shift = f.degree + 1
    gens = [Generator(f"T|{g.id}", g.grading, f"T|{g.spinc}") for g in f.target.basis]
    gens += [Generator(f"S|{g.id}", g.grading + shift, f"S|{g.spinc}") for g in f.source.basis]
    nt, ns = len(f.target), len(f.source)
    d = block_assemble([[f.target.differential, f.matrix], [None, f.source.differential]], [nt, ns], [nt, ns])
    sw = f.source.window.shifted(shift) if f.source.window is not None else None
    return GradedComplex(GradedBasis(gens), d, _intersect(f.target.window, sw), name or "cone")


def verify_homotopy_identity(f: ChainMap, g: ChainMap, h: ChainMap) -> Report:
    """Check ``d h + h d + g f = 0`` for ``f: C -> C'``, ``g: C' -> C''``, ``h: C -> C''``."""
    if len(f.target) != len(g.source) or len(h.source) != len(f.source) or len(h.target) != len(g.target):
        raise ValueError(f"shapes not composable: f {f.matrix.shape}, g {g.matrix.shape}, h {h.matrix.shape}")
    violations = []
    expected = f.degree + g.degree + 1
    if h.degree != expected:
        violations.append(f"degree: homotopy has degree {h.degree}, expected {expected}")
    violations += [v for v in chain_map_violations(h, check_commutes=False)]
    total = h.target.differential @ h.matrix + h.matrix @ h.source.differential + g.matrix @ f.matrix
    for i, j in total.entries():
        violations.append(f"identity: dH + Hd + gf nonzero at {h.source.basis[j].id}->{h.target.basis[i].id}")
    return Report(not violations, violations)


def exactness(incoming: InducedMap, outgoing: InducedMap) -> dict[Fraction, bool]:
    """Exactness of ``U -> V -> W`` on homology at each checkable grading of ``V``."""
    mid = outgoing.source
    res: dict[Fraction, bool] = {}
    for q, piece in mid.pieces.items():
        if not mid.complex.is_interior(q):
            continue
        qs = q - incoming.degree
        if not incoming.source.complex.is_interior(qs):
            continue
        if not outgoing.target.complex.is_interior(q + outgoing.degree):
            continue
        b = outgoing.blocks[q]
        a = incoming.blocks.get(qs)
        ra = incoming.rank(qs) if a is not None else 0
        rb = outgoing.rank(q)
        composite_zero = a is None or not b.rows or not a.cols or (b @ a).is_zero()
        res[q] = composite_zero and ra == piece.reps.cols - rb
    return res
