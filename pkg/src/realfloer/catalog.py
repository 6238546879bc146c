"""Canned examples: unknot and unlink packages, lens-space packages, the three
skein triples, link diagrams and cobordism data.

Tower generators are named ``<prefix><i>`` with ``i`` the eigenvalue index:
``i >= 0`` is boundary-stable, ``i < 0`` boundary-unstable, and the bar
grading of index ``i`` is ``offset + i``.  Packages carry two gradings of
slack beyond the window on either side.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import Window
from .floer import (COBORDISM_BLOCKS, CobordismPackage, FloerPackage, GradingAnchor, PackageGenerator,
                    _blocks_from_pairs)
from .froyshov import lens_d
from .link import CobordismData, GoeritzPresentation, LinkInvariants, pd_to_goeritz
from .triangle import CORRECTION_BLOCKS, HOMOTOPY_BLOCKS, ConjugationPairing, SkeinTriple

__all__ = [
    "DEFAULT_WINDOW",
    "PlanarDiagram",
    "CobordismRecord",
    "catalog_names",
    "load_catalog",
    "unknot",
    "unlink",
    "lens_package",
    "kpq",
    "hopf",
    "trefoil",
    "triple_unknots",
    "triple_hopf",
    "triple_trefoil",
    "LINK_INVARIANTS",
]

DEFAULT_WINDOW = Window(Fraction(-8), Fraction(8))
SLACK = 2

# (signature, nullity, determinant) of the links named in the catalog
LINK_INVARIANTS = {
    "U1": LinkInvariants(0, 0, 1),
    "U2": LinkInvariants(0, 1, 0),
    "Hopf": LinkInvariants(-1, 0, 2),
    "RHT": LinkInvariants(-2, 0, 3),
}


@dataclass(frozen=True)
class PlanarDiagram:
    """PD code of an alternating diagram; ``shade`` picks the spanning colour."""

    name: str
    crossings: tuple[tuple[int, int, int, int], ...]
    shade: int = 0

    def goeritz(self) -> GoeritzPresentation:
        return pd_to_goeritz(self.crossings, self.shade)


@dataclass(frozen=True)
class CobordismRecord:
    """Numerics of one surface cobordism plus optional package references.

    ``spinc`` lists ``(label on K-, label on K+, c1^2)`` for the spin-c
    structures used in monotonicity checks.
    """

    name: str
    data: CobordismData
    source: str | None = None
    target: str | None = None
    spinc: tuple[tuple[str, str, Fraction], ...] = field(default_factory=tuple)


def _index_range(offset: Fraction, window: Window) -> range:
    lo = math.floor(window.lo - SLACK - offset)
    hi = math.ceil(window.hi + SLACK - offset)
    return range(lo, hi + 1)


def _tower(prefix: str, spinc: str, offset: Fraction, window: Window):
    gens = []
    for i in _index_range(offset, window):
        if i >= 0:
            gens.append(PackageGenerator(f"{prefix}{i}", "s", offset + i, spinc))
        else:
            gens.append(PackageGenerator(f"{prefix}{i}", "u", offset + i + 1, spinc))
    return gens


def _shift_pairs(gens):
    ids = {g.id for g in gens}
    out = []
    for g in gens:
        prefix, i = _split(g.id)
        lower = f"{prefix}{i - 1}"
        if lower in ids:
            out.append((g.id, lower))
    return out


_ID = re.compile(r"^(.*?)(-?\d+)$")


def _split(gid: str) -> tuple[str, int]:
    m = _ID.match(gid)
    return m.group(1), int(m.group(2))


def _package(name, towers, window, determinant, components, anchors=()):
    gens = [g for t in towers for g in t]
    ups = FloerPackage.upsilon_from_pairs(gens, _shift_pairs(gens))
    return FloerPackage.from_pairs(name, gens, {}, [ups] * components, window=window,
                                   determinant=determinant, components=components, anchors=anchors)


def unknot(window: Window = DEFAULT_WINDOW, name: str = "U1") -> FloerPackage:
    """One tower, all differentials zero, base generator ``a0`` at grading 0."""
    return _package(name, [_tower("a", "s0", Fraction(0), window)], window, 1, 1,
                    [GradingAnchor("s0", "a0", 0)])


def unlink(window: Window = DEFAULT_WINDOW) -> FloerPackage:
    """Two towers over the circle of flat connections, one grading apart.

    ``e1`` sits over the index-1 critical point, ``e0`` one lower; both
    components act by the same shift.
    """
    towers = [_tower("e1_", "s0", Fraction(0), window), _tower("e0_", "s0", Fraction(-1), window)]
    return _package("U2", towers, window, 0, 2, [GradingAnchor("s0", "e1_0", 0)])


def lens_package(name: str, p: int, q: int, labels=None, window: Window = DEFAULT_WINDOW,
                 components: int | None = None) -> FloerPackage:
    """One tower per spin-c label, bottom of the check tower at ``d(L(p,q), i)/2``."""
    labels = list(labels) if labels is not None else [f"s{i}" for i in range(p)]
    if len(labels) != p:
        raise ValueError(f"need {p} spin-c labels")
    towers, anchors = [], []
    for i, label in enumerate(labels):
        off = lens_d(p, q, i) / 2
        towers.append(_tower(f"{label}.a", label, off, window))
        anchors.append(GradingAnchor(label, f"{label}.a0", off))
    if components is None:
        components = 1 if p % 2 else 2
    return _package(name, towers, window, p, components, anchors)


def kpq(p: int, q: int, window: Window = DEFAULT_WINDOW) -> FloerPackage:
    if not (p > 2 and 0 < q < p and math.gcd(p, q) == 1):
        raise ValueError(f"K(p,q) needs p > 2 and 0 < q < p coprime, got ({p},{q})")
    return lens_package(f"Kpq({p},{q})", p, q, window=window)


def hopf(window: Window = DEFAULT_WINDOW) -> FloerPackage:
    """``s+`` is the label with d = -1/4, ``s-`` the one with d = +1/4."""
    return lens_package("Hopf", 2, 1, ["s-", "s+"], window, 2)


def trefoil(window: Window = DEFAULT_WINDOW) -> FloerPackage:
    return lens_package("RHT", 3, 1, ["s0", "s1", "s2"], window, 1)


def synthetic_mixed(window: Window = DEFAULT_WINDOW) -> FloerPackage:
    """The unknot tower plus an acyclic interior pair and an interior generator killing ``a0``."""
    gens = list(_tower("a", "s0", Fraction(0), window))
    gens += [PackageGenerator("x", "o", 1), PackageGenerator("y", "o", 0),
             PackageGenerator("z", "o", 1)]
    blocks = {"d_oo": [("x", "y")], "d_os": [("z", "a0")]}
    ups = FloerPackage.upsilon_from_pairs(gens, _shift_pairs([g for g in gens if g.sector != "o"]))
    return FloerPackage.from_pairs("synthetic-mixed", gens, blocks, [ups], window=window, components=1)


# --- triples -----------------------------------------------------------------


def _sorted_pairs(src: FloerPackage, tgt: FloerPackage, pairs, spec) -> dict[str, list]:
    name_of = {v: k for k, v in spec.items()}
    out: dict[str, list] = {}
    for a, b in pairs:
        key = (src.generator(a).sector, tgt.generator(b).sector)
        if key not in name_of:
            raise ValueError(f"no block carries {key[0]}->{key[1]} ({a} -> {b})")
        out.setdefault(name_of[key], []).append((a, b))
    return out


def _tower_pairs(src: FloerPackage, tgt: FloerPackage, mapping: dict[str, list[str]]):
    """Index-preserving pairs ``src_prefix + i -> tgt_prefix + i`` where both exist."""
    tgt_ids = {g.id for g in tgt.generators}
    out = []
    for g in src.generators:
        prefix, i = _split(g.id)
        for tp in mapping.get(prefix, ()):
            if f"{tp}{i}" in tgt_ids:
                out.append((g.id, f"{tp}{i}"))
    return out


def _cob(src, tgt, mapping, degree, name):
    pairs = _sorted_pairs(src, tgt, _tower_pairs(src, tgt, mapping), COBORDISM_BLOCKS)
    return CobordismPackage.from_pairs(src, tgt, pairs, degree=degree, name=name)


def _hom(src, tgt, mapping):
    pairs = _sorted_pairs(src, tgt, _tower_pairs(src, tgt, mapping), HOMOTOPY_BLOCKS)
    return _blocks_from_pairs(HOMOTOPY_BLOCKS, pairs, src.index, tgt.index, "homotopy")


def _data(b0, b1, sq, src, tgt, c1sq=0) -> CobordismData:
    return CobordismData(b0, b1, sq, LINK_INVARIANTS[src], LINK_INVARIANTS[tgt], Fraction(c1sq))


def triple_unknots(window: Window = DEFAULT_WINDOW) -> SkeinTriple:
    """U1 -> U2 -> U1.

    The first map carries the unknot tower onto the lower unlink tower, the
    second sends the upper tower isomorphically back and kills the lower
    one, and the third is zero.  The correction term on the base vertex is
    the identity and the second homotopy vanishes.
    """
    k2, k1, k0 = unknot(window), unlink(window), unknot(window, "U1")
    f2 = _cob(k2, k1, {"a": ["e0_"]}, -1, "Sigma21")
    f1 = _cob(k1, k0, {"e1_": ["a"]}, 0, "Sigma10")
    f0 = _cob(k0, k2, {}, 0, "Sigma0-1")
    h2 = {}
    h1 = _hom(k1, k2, {"e0_": ["a"]})
    h0 = _hom(k0, k1, {"a": ["e1_"]})
    ident = [(g.id, g.id) for g in k0.sector["s"]]
    corr = _blocks_from_pairs(CORRECTION_BLOCKS, {"barL_ss": ident}, k0.index, k0.index, "correction")
    ks = range(-4, 4)
    pairing = ConjugationPairing({k: 1 if k >= 0 else 0 for k in ks}, {k: 0 for k in ks})
    numerics = (_data(1, 2, 2, "U1", "U1", -1), _data(1, 2, 0, "U2", "U1"), _data(1, 2, 0, "U1", "U2"))
    return SkeinTriple("triple-unknots", (k0, k1, k2), (f0, f1, f2), (h0, h1, h2), ({}, {}, {}), numerics,
                       {}, corr, pairing)


def triple_hopf(window: Window = DEFAULT_WINDOW) -> SkeinTriple:
    """Hopf -> U1 -> U1.

    The first map carries the ``s+`` tower onto the unknot and kills ``s-``;
    the middle map is zero; the third carries the unknot onto ``s-``.
    """
    k2, k1, k0 = hopf(window), unknot(window), unknot(window)
    f2 = _cob(k2, k1, {"s+.a": ["a"]}, Fraction(1, 8), "Sigma21")
    f1 = _cob(k1, k0, {}, Fraction(-5, 4), "Sigma10")
    f0 = _cob(k0, k2, {"a": ["s-.a"]}, Fraction(1, 8), "Sigma32")
    h2 = _hom(k2, k0, {"s-.a": ["a"]})
    h1 = _hom(k1, k2, {"a": ["s+.a"]})
    h0 = {}
    numerics = (_data(1, 2, 0, "U1", "Hopf"), None, _data(1, 2, 4, "Hopf", "U1"))
    return SkeinTriple("triple-hopf", (k0, k1, k2), (f0, f1, f2), (h0, h1, h2), ({}, {}, {}), numerics)


def triple_trefoil(window: Window = DEFAULT_WINDOW) -> SkeinTriple:
    """RHT -> U1 -> Hopf.

    The first map kills the self-conjugate tower ``s0`` and carries ``s1``
    and ``s2`` onto the unknot; the middle map is zero; the third carries
    ``s-`` onto ``s0`` and ``s+`` onto the symmetric sum of ``s1`` and ``s2``.
    The ``s+`` tower of the Hopf vertex is moved by -1/12 so each map has a
    single degree.
    """
    k2, k1, k0 = trefoil(window), unknot(window), hopf(window)
    f2 = _cob(k2, k1, {"s1.a": ["a"], "s2.a": ["a"]}, Fraction(1, 12), "Sigma21")
    f1 = _cob(k1, k0, {}, Fraction(-29, 24), "Sigma10")
    f0 = _cob(k0, k2, {"s-.a": ["s0.a"], "s+.a": ["s1.a", "s2.a"]}, Fraction(1, 8), "Sigma32")
    h2 = _hom(k2, k0, {"s0.a": ["s-.a"], "s2.a": ["s+.a"]})
    h1 = _hom(k1, k2, {"a": ["s1.a"]})
    h0 = {}
    offsets = ({"s+": Fraction(-1, 12)}, {}, {})
    numerics = (_data(1, 2, 0, "Hopf", "RHT"), _data(1, 2, -4, "U1", "Hopf", Fraction(-2, 3)),
                _data(1, 2, 6, "RHT", "U1", Fraction(-1, 3)))
    return SkeinTriple("triple-trefoil", (k0, k1, k2), (f0, f1, f2), (h0, h1, h2), offsets, numerics)


# --- links and cobordisms ----------------------------------------------------

_DIAGRAMS = {
    "hopf": ((1, 3, 2, 4), (3, 1, 4, 2)),
    "rht": ((4, 2, 5, 1), (6, 4, 1, 3), (2, 6, 3, 5)),
    (3, 1): ((4, 2, 5, 1), (6, 4, 1, 3), (2, 6, 3, 5)),
    (5, 1): ((6, 2, 7, 1), (8, 4, 9, 3), (10, 6, 1, 5), (2, 8, 3, 7), (4, 10, 5, 9)),
    (5, 2): ((4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)),
    (7, 2): ((1, 4, 2, 5), (3, 8, 4, 9), (5, 10, 6, 1), (9, 6, 10, 7), (7, 2, 8, 3)),
}


def chain_lens(p: int) -> CobordismRecord:
    """Negative-definite band cobordism from K(p,1) to the unknot.

    The cover has intersection form (-p); the spin-c structure with
    ``c1 = p - 2i`` restricts to label ``i``.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    src = "Hopf" if p == 2 else f"Kpq({p},1)"
    sig = -(p - 1)
    inv = LinkInvariants(sig, 0, p)
    data = CobordismData(1, 2, 2 * p, inv, LINK_INVARIANTS["U1"], Fraction(-p))
    labels = ["s-", "s+"] if p == 2 else [f"s{i}" for i in range(p)]
    spinc = tuple((labels[i], "s0", Fraction(-(p - 2 * i) ** 2, p)) for i in range(p))
    return CobordismRecord(f"chain-lens({p})", data, src, "U1", spinc)


_FIXED = {
    "U1": unknot,
    "U2": unlink,
    "Hopf": hopf,
    "RHT": trefoil,
    "synthetic-mixed": synthetic_mixed,
    "triple-unknots": triple_unknots,
    "triple-hopf": triple_hopf,
    "triple-trefoil": triple_trefoil,
}

_KPQ = re.compile(r"^K(?:pq)?\(\s*(\d+)\s*,\s*(\d+)\s*\)$")
_LINK_KPQ = re.compile(r"^link-K(?:pq)?\(\s*(\d+)\s*,\s*(\d+)\s*\)$")
_CHAIN = re.compile(r"^chain-lens\(\s*(\d+)\s*\)$")


def catalog_names() -> list[str]:
    return (list(_FIXED) + ["Kpq(p,q)", "link-unknot", "link-hopf", "link-rht"]
            + [f"link-Kpq({k[0]},{k[1]})" for k in _DIAGRAMS if isinstance(k, tuple)]
            + ["chain-lens(p)", "trefoil-W10"])


def load_catalog(name: str, window: Window | None = None):
    """Package, triple, diagram, Goeritz form or cobordism record by name."""
    w = window or DEFAULT_WINDOW
    if name in _FIXED:
        return _FIXED[name](w)
    m = _KPQ.match(name)
    if m:
        return kpq(int(m.group(1)), int(m.group(2)), w)
    if name == "link-unknot":
        return GoeritzPresentation((), 0, 1)
    if name in ("link-hopf", "link-rht"):
        return PlanarDiagram(name, _DIAGRAMS[name[5:]])
    m = _LINK_KPQ.match(name)
    if m:
        key = (int(m.group(1)), int(m.group(2)))
        if key not in _DIAGRAMS:
            raise KeyError(f"no diagram stored for K{key}")
        return PlanarDiagram(f"link-Kpq({key[0]},{key[1]})", _DIAGRAMS[key])
    m = _CHAIN.match(name)
    if m:
        return chain_lens(int(m.group(1)))
    if name == "trefoil-W10":
        return CobordismRecord("trefoil-W10", triple_trefoil(w).numerics[1], "U1", "Hopf")
    raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(catalog_names())}")
