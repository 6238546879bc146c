"""Absolute gradings, the real Froyshov invariant and its monotonicity.

``h_R`` of a spin-c label is minus the lowest grading at which the image of
``i_*: bar -> check`` is nonzero, read off inside the interior of the
truncation window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .complexes import RefusalError, Report, Window, as_fraction, homology, induced_map_on_homology, verify_complex
from .floer import FLAVORS, FloerPackage, GradingAnchor, PackageGenerator, assemble, assemble_ijp
from .link import CobordismData, cobordism_iota, cobordism_numerics, map_degree

__all__ = [
    "FroyshovResult",
    "lens_d",
    "lens_h",
    "anchor_value",
    "assign_gradings",
    "compute_hR",
    "compute_hR_all",
    "negative_definite_defect",
    "monotonicity_check",
]


@dataclass(frozen=True)
class FroyshovResult:
    h_R: Fraction
    witness: str          # generators of a cycle representing the lowest class in the image of i_*
    spinc: str
    grading: Fraction     # = -h_R


def lens_d(p: int, q: int, i: int) -> Fraction:
    """Correction term of L(p, q) in spin-c ``i`` by the two-term recursion."""
    if p < 1:
        raise ValueError("p must be positive")
    if not 0 <= i < p:
        raise ValueError(f"spin-c index {i} out of range for p = {p}")
    if p == 1:
        return Fraction(0)
    q %= p
    if math.gcd(p, q) != 1:
        raise ValueError(f"p = {p} and q = {q} are not coprime")
    head = Fraction(-1, 4) + Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q)
    return head - lens_d(q, p % q, i % q)


def lens_h(p: int, q: int, i: int) -> Fraction:
    return -lens_d(p, q, i) / 2


def anchor_value(c: CobordismData) -> Fraction:
    """Grading shift ``1/8 (c1^2 - sigma(W)) - iota`` of a path from the unknot."""
    nums = cobordism_numerics(c)
    return map_degree(c.c1_square, nums["sigma_W"], cobordism_iota(c), c)


def assign_gradings(p: FloerPackage, relative: Mapping[str, object],
                    shifts: Mapping[str, object]) -> FloerPackage:
    """Absolute gradings ``-relative[a] + shift[spinc]``.

    ``relative[a]`` is the index from the unknot's base generator to ``a``;
    ``shifts`` maps each spin-c label to a rational or to the cobordism data
    of the path.  Boundary-unstable generators get the same value here; the
    bar complex places them one lower.
    """
    values: dict[str, Fraction] = {}
    for label in p.spinc_labels():
        if label not in shifts:
            raise KeyError(f"anchor missing for spin-c {label!r}")
        s = shifts[label]
        values[label] = anchor_value(s) if isinstance(s, CobordismData) else as_fraction(s)
    gens = []
    anchors: dict[str, GradingAnchor] = {}
    # prefer a generator that keeps its grading in every flavour as the anchor
    for g in sorted(p.generators, key=lambda g: g.sector == "u"):
        if g.id not in relative:
            raise KeyError(f"no relative grading for generator {g.id!r}")
        if as_fraction(relative[g.id]) == 0 and g.spinc not in anchors:
            anchors[g.spinc] = GradingAnchor(g.spinc, g.id, values[g.spinc])
    for g in p.generators:
        gens.append(PackageGenerator(g.id, g.sector, values[g.spinc] - as_fraction(relative[g.id]), g.spinc))
    return p.replace(generators=gens, anchors=list(anchors.values()))


def _interior_range(c, gradings) -> list[Fraction]:
    if not gradings:
        return []
    base = gradings[0]
    if c.window is None:
        lo, hi = min(gradings), max(gradings)
    else:
        lo = base + math.ceil(c.window.lo + c.window.margin - base)
        hi = base + math.floor(c.window.hi - c.window.margin - base)
    return [lo + k for k in range(int(hi - lo) + 1)] if hi >= lo else []


def compute_hR(p: FloerPackage, spinc: str | None = None, window: Window | None = None) -> FroyshovResult:
    if window is not None:
        p = p.replace(window=window)
    if p.determinant == 0:
        raise RefusalError("h_R needs a link of nonzero determinant; this package has determinant 0")
    labels = p.spinc_labels()
    if spinc is None:
        if len(labels) != 1:
            raise ValueError(f"package has spin-c labels {labels}; name one")
        spinc = labels[0]
    part = p.spinc_part(spinc)
    cx = {f: assemble(part, f) for f in FLAVORS}
    for f in FLAVORS:
        rep = verify_complex(cx[f])
        if not rep.ok:
            raise RefusalError(f"{f} complex fails verification: {rep.violations[0]}")
    hbar, hcheck = homology(cx["bar"]), homology(cx["check"])
    grid = _interior_range(cx["bar"], sorted(hbar.pieces))
    bad = [q for q in grid if hbar.dim(q) != 1]
    if not grid or bad:
        raise RefusalError(f"spin-c {spinc!r}: bar homology is not a single bi-infinite tower "
                           f"(dimension not 1 at gradings {', '.join(str(q) for q in bad) or 'all'})")
    i_map = assemble_ijp(part, cx)[0]
    induced = induced_map_on_homology(i_map, hbar, hcheck)
    hits = sorted(q for q in induced.blocks if induced.rank(q) > 0)
    if not hits:
        raise RefusalError(f"spin-c {spinc!r}: image of i_* is zero in the window; window too small")
    q = hits[0]
    check_grid = _interior_range(cx["check"], sorted(hcheck.pieces))
    if cx["check"].window is not None and q - 1 not in check_grid:
        raise RefusalError(f"spin-c {spinc!r}: lowest image class sits at the window edge ({q}); "
                           "window too small")
    piece = hbar.pieces[q]
    local = piece.reps.to_dense()[:, 0]
    vec = [piece.indices[k] for k in range(len(local)) if local[k]]
    image = i_map.matrix.to_dense()[:, vec].sum(axis=1) % 2
    ids = cx["check"].basis.ids
    support = [ids[r] for r in range(len(image)) if image[r]]
    return FroyshovResult(-q, "+".join(support), spinc, q)


def compute_hR_all(p: FloerPackage, window: Window | None = None) -> dict[str, FroyshovResult]:
    return {label: compute_hR(p, label, window) for label in p.spinc_labels()}


def negative_definite_defect(c: CobordismData) -> Fraction:
    """``b1 - b0 + sigma(K+) - sigma(K-) - Sigma^2/2``; zero for a negative-definite cover."""
    c.validate()
    return (Fraction(c.b1_sigma - c.b0_sigma + c.target_inv.signature - c.source_inv.signature)
            - Fraction(c.self_intersection, 2))


def monotonicity_check(h_minus, h_plus, c: CobordismData) -> Report:
    """``h(K-) >= h(K+) + 1/8 (c1^2 - sigma(W))`` for negative-definite data."""
    defect = negative_definite_defect(c)
    if defect != 0:
        raise RefusalError(f"cobordism is not negative-definite: b1 - b0 + sigma(K+) - sigma(K-) "
                           f"- Sigma^2/2 = {defect}")
    sigma_w = cobordism_numerics(c)["sigma_W"]
    h_minus, h_plus = as_fraction(h_minus), as_fraction(h_plus)
    bound = h_plus + Fraction(1, 8) * (c.c1_square - sigma_w)
    ok = h_minus >= bound
    violations = [] if ok else [f"h(K-) = {h_minus} is below the bound {bound} by {bound - h_minus}"]
    return Report(ok, violations, {"lhs": h_minus, "bound": bound, "deficit": max(bound - h_minus, Fraction(0)),
                                   "sigma_W": sigma_w})
