"""Homology as graded modules over the upsilon algebra.

Towers are read off the barcode of the persistence module
``H_q -> H_{q-1}`` given by upsilon on the interior of a truncation window.
A bar that reaches both interior edges is bi-infinite; one that reaches only
the low edge is a polynomial tower (infinite downward); one that reaches only
the high edge is the quotient tower (infinite upward).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .complexes import (ChainMap, GradedComplex, Homology, RefusalError, Report, chain_map_violations,
                        induced_map_on_homology)
from .gf2 import BitMatrix, rank_kernel_image

__all__ = [
    "BOUNDED_BELOW",
    "BOUNDED_ABOVE",
    "BI_INFINITE",
    "TowerSummand",
    "UnrecognizedModule",
    "recognize_towers",
    "verify_Rn_relations",
]

BOUNDED_BELOW = "bounded-below"    # F2[v]: infinite downward, anchored at its top
BOUNDED_ABOVE = "bounded-above"    # F2[v^-1, v]] / F2[v]: infinite upward, anchored at its bottom
BI_INFINITE = "bi-infinite"        # F2[v^-1, v]]: anchored at its grading mod 1

_KIND_ORDER = {BI_INFINITE: 0, BOUNDED_ABOVE: 1, BOUNDED_BELOW: 2}


class UnrecognizedModule(RefusalError):
    def __init__(self, spinc: str, gradings: Sequence[Fraction]):
        self.spinc = spinc
        self.gradings = list(gradings)
        shown = ", ".join(str(q) for q in self.gradings)
        super().__init__(f"unrecognized module in spin-c {spinc!r} at gradings {shown}")


@dataclass(frozen=True)
class TowerSummand:
    kind: str
    anchor_grading: Fraction
    spinc: str
    support: tuple[Fraction, Fraction]   # observed (low, high) inside the interior window


def _frac_part(q: Fraction) -> Fraction:
    return q - math.floor(q)


def _edges(c: GradedComplex, gradings: list[Fraction]) -> tuple[Fraction, Fraction] | None:
    if not gradings:
        return None
    base = gradings[0]
    if c.window is None:
        return min(gradings), max(gradings)
    lo = c.window.lo + c.window.margin
    hi = c.window.hi - c.window.margin
    qlo = base + math.ceil(lo - base)
    qhi = base + math.floor(hi - base)
    if qlo > qhi:
        return None
    return qlo, qhi


def _rank(m: BitMatrix | None) -> int:
    if m is None or not m.rows or not m.cols:
        return 0
    return rank_kernel_image(m).rank


def _label_towers(part: GradedComplex, ups: ChainMap, label: str) -> list[TowerSummand]:
    h = Homology(part)
    edges = _edges(part, sorted(h.pieces))
    if edges is None:
        return []
    qlo, qhi = edges
    induced = induced_map_on_homology(ups, h, h)
    n = int(qhi - qlo) + 1
    grades = [qlo + k for k in range(n)]
    dims = [h.dim(q) for q in grades]
    # r[s][t] = rank of v^(s-t): H_s -> H_t, indices into grades
    r = [[0] * n for _ in range(n)]
    for s in range(n):
        if not dims[s]:
            continue
        m = BitMatrix.identity(dims[s])
        for t in range(s, -1, -1):
            r[s][t] = _rank(m) if m.rows else 0
            if t == 0:
                break
            blk = induced.blocks.get(grades[t])
            if blk is None or not m.cols:
                break
            m = blk @ m if blk.cols == m.rows else BitMatrix(blk.rows, m.cols)
            if m.is_zero():
                break

    def rr(s: int, t: int) -> int:
        if s >= n or t < 0 or t > s:
            return 0
        return r[s][t]

    out = []
    for s in range(n):
        for t in range(s + 1):
            count = rr(s, t) - rr(s + 1, t) - rr(s, t - 1) + rr(s + 1, t - 1)
            if count <= 0:
                continue
            low_edge, high_edge = t == 0, s == n - 1
            if low_edge and high_edge:
                kind, anchor = BI_INFINITE, _frac_part(grades[t])
            elif low_edge:
                kind, anchor = BOUNDED_BELOW, grades[s]
            elif high_edge:
                kind, anchor = BOUNDED_ABOVE, grades[t]
            else:
                raise UnrecognizedModule(label, grades[t:s + 1])
            out += [TowerSummand(kind, anchor, label, (grades[t], grades[s]))] * count
    return out


def recognize_towers(h: Homology, upsilon: ChainMap) -> list[TowerSummand]:
    """Decompose the interior homology into towers, one spin-c label at a time."""
    c = h.complex
    if upsilon.source is not c and upsilon.source != c:
        raise ValueError("upsilon does not act on this complex")
    bad = chain_map_violations(upsilon)
    if bad:
        raise RefusalError(f"upsilon is not a chain map: {bad[0]}")
    out: list[TowerSummand] = []
    for label in c.basis.spinc_labels():
        idx = [k for k, g in enumerate(c.basis) if g.spinc == label]
        rest = [k for k, g in enumerate(c.basis) if g.spinc != label]
        if rest and not (upsilon.matrix.submatrix(rest, idx).is_zero()
                         and upsilon.matrix.submatrix(idx, rest).is_zero()):
            raise RefusalError(f"upsilon mixes spin-c label {label!r} with others")
        part = c.spinc_part(label)
        ups = ChainMap(part, part, upsilon.matrix.submatrix(idx, idx), upsilon.degree, upsilon.name)
        towers = _label_towers(part, ups, label)
        towers.sort(key=lambda t: (_KIND_ORDER[t.kind], t.anchor_grading))
        out += towers
    return out


def verify_Rn_relations(actions: Sequence[ChainMap], h: Homology | None = None) -> Report:
    """Each action is a degree -1 chain map and all squares agree on homology."""
    if not actions:
        raise ValueError("need at least one component action")
    violations = []
    for k, a in enumerate(actions):
        if a.degree != -1:
            violations.append(f"upsilon{k + 1}: declared degree {a.degree}, expected -1")
        violations += [f"upsilon{k + 1}: {v}" for v in chain_map_violations(a)]
    if violations or len(actions) == 1:
        return Report(not violations, violations)
    hh = h if h is not None else Homology(actions[0].source)
    squares = [induced_map_on_homology(a @ a, hh, hh) for a in actions]
    ref = squares[0]
    for k, sq in enumerate(squares[1:], start=2):
        for q, blk in ref.blocks.items():
            if sq.blocks.get(q) != blk:
                violations.append(f"upsilon{k}^2 differs from upsilon1^2 on homology at grading {q}")
    return Report(not violations, violations)
