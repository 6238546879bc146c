"""Floer packages: generators sorted into interior, boundary-stable and
boundary-unstable sectors, eight differential blocks, and the assembly of the
bar, check and hat complexes, the maps i, j, p, and cobordism maps.

All signs are dropped (coefficients are mod 2).  Boundary-unstable generators
store the grading they carry in the hat complex; in the bar complex they sit
one lower.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .complexes import (ChainMap, Generator, GradedBasis, GradedComplex, Homology, Report, Window, as_fraction,
                        chain_map_violations, exactness, homology, induced_map_on_homology, verify_complex)
from .gf2 import BitMatrix, block_assemble

__all__ = [
    "SECTORS",
    "DIFFERENTIAL_BLOCKS",
    "COBORDISM_BLOCKS",
    "FLAVORS",
    "PackageGenerator",
    "GradingAnchor",
    "FloerPackage",
    "CobordismPackage",
    "assemble_bar",
    "assemble_check",
    "assemble_hat",
    "assemble",
    "assemble_ijp",
    "assemble_cobordism",
    "upsilon_maps",
    "exactness",
    "verify_les",
    "verify_package",
]

SECTORS = ("o", "s", "u")
FLAVORS = ("bar", "check", "hat")

# block name -> (source sector, target sector)
DIFFERENTIAL_BLOCKS: dict[str, tuple[str, str]] = {
    "d_oo": ("o", "o"),
    "d_os": ("o", "s"),
    "d_uo": ("u", "o"),
    "d_us": ("u", "s"),
    "bar_ss": ("s", "s"),
    "bar_us": ("u", "s"),
    "bar_su": ("s", "u"),
    "bar_uu": ("u", "u"),
}

COBORDISM_BLOCKS: dict[str, tuple[str, str]] = {
    "m_oo": ("o", "o"),
    "m_os": ("o", "s"),
    "m_uo": ("u", "o"),
    "m_us": ("u", "s"),
    "bar_m_ss": ("s", "s"),
    "bar_m_su": ("s", "u"),
    "bar_m_uu": ("u", "u"),
    "bar_m_us": ("u", "s"),
}


@dataclass(frozen=True)
class PackageGenerator:
    id: str
    sector: str
    grading: Fraction
    spinc: str = "s0"

    def __post_init__(self):
        if self.sector not in SECTORS:
            raise ValueError(f"generator {self.id!r}: unknown sector {self.sector!r}")
        object.__setattr__(self, "grading", as_fraction(self.grading))


@dataclass(frozen=True)
class GradingAnchor:
    spinc: str
    anchor_generator: str
    anchor_value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "anchor_value", as_fraction(self.anchor_value))


def _blocks_from_pairs(names: Mapping[str, tuple[str, str]], pairs: Mapping[str, Iterable[tuple[str, str]]],
                       src_index: Mapping[str, dict[str, int]], tgt_index: Mapping[str, dict[str, int]],
                       what: str) -> dict[str, BitMatrix]:
    out = {}
    for name, plist in pairs.items():
        if name not in names:
            raise ValueError(f"{what}: unknown block {name!r}")
        ssec, tsec = names[name]
        entries = set()
        for a, b in plist:
            if a not in src_index[ssec]:
                raise ValueError(f"{what}: block {name} source {a!r} is not a {ssec}-generator")
            if b not in tgt_index[tsec]:
                raise ValueError(f"{what}: block {name} target {b!r} is not a {tsec}-generator")
            entries ^= {(tgt_index[tsec][b], src_index[ssec][a])}
        out[name] = BitMatrix.from_entries(len(tgt_index[tsec]), len(src_index[ssec]), sorted(entries))
    return out


class FloerPackage:
    """Generators in three sectors plus the eight differential blocks.

    Blocks are stored as matrices ``target x source`` in sector order.
    ``upsilon`` holds one self-map per link component, each given in the
    eight-block cobordism form.
    """

    def __init__(self, name: str, generators: Iterable[PackageGenerator],
                 blocks: Mapping[str, BitMatrix] | None = None,
                 upsilon: Iterable[Mapping[str, BitMatrix]] = (),
                 window: Window | None = None, determinant: int | None = None,
                 components: int = 1, anchors: Iterable[GradingAnchor] = ()):
        self.name = name
        self.generators = tuple(generators)
        seen = set()
        for g in self.generators:
            if g.id in seen:
                raise ValueError(f"duplicate generator id {g.id!r}")
            seen.add(g.id)
        self.sector = {s: tuple(g for g in self.generators if g.sector == s) for s in SECTORS}
        self.index = {s: {g.id: k for k, g in enumerate(self.sector[s])} for s in SECTORS}
        self.sizes = {s: len(self.sector[s]) for s in SECTORS}
        self.blocks: dict[str, BitMatrix] = {}
        blocks = dict(blocks or {})
        for name_, (src, tgt) in DIFFERENTIAL_BLOCKS.items():
            m = blocks.pop(name_, None)
            shape = (self.sizes[tgt], self.sizes[src])
            if m is None:
                m = BitMatrix(*shape)
            if m.shape != shape:
                raise ValueError(f"block {name_} is {m.rows}x{m.cols}, expected {shape[0]}x{shape[1]}")
            self.blocks[name_] = m
        if blocks:
            raise ValueError(f"unknown blocks {sorted(blocks)}")
        self.upsilon = tuple(self._cob_blocks(u, "upsilon") for u in upsilon)
        self.window = window
        self.determinant = determinant
        self.components = components
        self.anchors = tuple(anchors)
        for a in self.anchors:
            if a.anchor_generator not in seen:
                raise ValueError(f"anchor generator {a.anchor_generator!r} not in package")

    def _cob_blocks(self, blocks: Mapping[str, BitMatrix], what: str) -> dict[str, BitMatrix]:
        out = {}
        extra = set(blocks) - set(COBORDISM_BLOCKS)
        if extra:
            raise ValueError(f"{what}: unknown blocks {sorted(extra)}")
        for name_, (src, tgt) in COBORDISM_BLOCKS.items():
            m = blocks.get(name_)
            shape = (self.sizes[tgt], self.sizes[src])
            if m is None:
                m = BitMatrix(*shape)
            if m.shape != shape:
                raise ValueError(f"{what}: block {name_} is {m.rows}x{m.cols}, expected {shape[0]}x{shape[1]}")
            out[name_] = m
        return out

    @classmethod
    def from_pairs(cls, name: str, generators: Iterable[PackageGenerator],
                   blocks: Mapping[str, Iterable[tuple[str, str]]] | None = None,
                   upsilon: Iterable[Mapping[str, Iterable[tuple[str, str]]]] = (), **kw) -> FloerPackage:
        gens = tuple(generators)
        index = {s: {g.id: k for k, g in enumerate([x for x in gens if x.sector == s])} for s in SECTORS}
        mats = _blocks_from_pairs(DIFFERENTIAL_BLOCKS, blocks or {}, index, index, name)
        ups = [_blocks_from_pairs(COBORDISM_BLOCKS, u, index, index, f"{name} upsilon") for u in upsilon]
        return cls(name, gens, mats, ups, **kw)

    @classmethod
    def upsilon_from_pairs(cls, gens: Iterable[PackageGenerator], pairs: Iterable[tuple[str, str]]) -> dict:
        """Sort ``source -> target`` pairs of a self-map into the eight blocks."""
        sector = {g.id: g.sector for g in gens}
        name_of = {v: k for k, v in COBORDISM_BLOCKS.items()}
        out: dict[str, list[tuple[str, str]]] = {}
        for a, b in pairs:
            key = (sector[a], sector[b])
            if key not in name_of:
                raise ValueError(f"no block carries {sector[a]}->{sector[b]} ({a} -> {b})")
            out.setdefault(name_of[key], []).append((a, b))
        return out

    def pairs(self, name: str) -> list[tuple[str, str]]:
        src, tgt = DIFFERENTIAL_BLOCKS[name]
        return [(self.sector[src][j].id, self.sector[tgt][i].id) for i, j in self.blocks[name].entries()]

    def upsilon_pairs(self, k: int) -> list[tuple[str, str]]:
        out = []
        for name_, (src, tgt) in COBORDISM_BLOCKS.items():
            out += [(self.sector[src][j].id, self.sector[tgt][i].id) for i, j in self.upsilon[k][name_].entries()]
        return out

    def generator(self, gid: str) -> PackageGenerator:
        for s in SECTORS:
            if gid in self.index[s]:
                return self.sector[s][self.index[s][gid]]
        raise KeyError(gid)

    def spinc_labels(self) -> list[str]:
        seen: dict[str, None] = {}
        for g in self.generators:
            seen.setdefault(g.spinc, None)
        return list(seen)

    def basis(self, sector: str, flavor: str = "hat") -> list[Generator]:
        # boundary-unstable generators sit one lower in the bar complex
        drop = 1 if (sector == "u" and flavor == "bar") else 0
        return [Generator(g.id, g.grading - drop, g.spinc) for g in self.sector[sector]]

    def replace(self, **changes) -> FloerPackage:
        kw = dict(name=self.name, generators=self.generators, blocks=self.blocks, upsilon=self.upsilon,
                  window=self.window, determinant=self.determinant, components=self.components,
                  anchors=self.anchors)
        kw.update(changes)
        return FloerPackage(**kw)

    def shifted(self, delta) -> FloerPackage:
        """Every grading (and the window) moved by ``delta``."""
        delta = as_fraction(delta)
        gens = [PackageGenerator(g.id, g.sector, g.grading + delta, g.spinc) for g in self.generators]
        anchors = [GradingAnchor(a.spinc, a.anchor_generator, a.anchor_value + delta) for a in self.anchors]
        window = self.window.shifted(delta) if self.window is not None else None
        return self.replace(generators=gens, anchors=anchors, window=window)

    def regraded(self, offsets: Mapping[str, Fraction]) -> FloerPackage:
        """Shift gradings per spin-c label (labels not listed stay put)."""
        gens = [PackageGenerator(g.id, g.sector, g.grading + as_fraction(offsets.get(g.spinc, 0)), g.spinc)
                for g in self.generators]
        return self.replace(generators=gens, anchors=())

    def spinc_part(self, label: str) -> FloerPackage:
        """Sub-package on one spin-c label; refuses if any block or upsilon mixes labels."""
        keep = {s: [k for k, g in enumerate(self.sector[s]) if g.spinc == label] for s in SECTORS}
        drop = {s: [k for k, g in enumerate(self.sector[s]) if g.spinc != label] for s in SECTORS}
        if not any(keep.values()):
            raise KeyError(f"no generators in spin-c {label!r}")

        def cut(mats, spec, what):
            out = {}
            for name_, (src, tgt) in spec.items():
                m = mats[name_]
                if not (m.submatrix(drop[tgt], keep[src]).is_zero() and m.submatrix(keep[tgt], drop[src]).is_zero()):
                    raise ValueError(f"{what} block {name_} mixes spin-c {label!r} with other labels")
                out[name_] = m.submatrix(keep[tgt], keep[src])
            return out

        blocks = cut(self.blocks, DIFFERENTIAL_BLOCKS, "differential")
        ups = [cut(u, COBORDISM_BLOCKS, "upsilon") for u in self.upsilon]
        gens = [g for g in self.generators if g.spinc == label]
        return FloerPackage(f"{self.name}[{label}]", gens, blocks, ups, self.window, self.determinant,
                            self.components, [a for a in self.anchors if a.spinc == label])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FloerPackage) and self.name == other.name
                and self.generators == other.generators and self.blocks == other.blocks
                and self.upsilon == other.upsilon and self.window == other.window
                and self.determinant == other.determinant and self.components == other.components
                and self.anchors == other.anchors)

    def __repr__(self) -> str:
        return f"FloerPackage({self.name}, o={self.sizes['o']}, s={self.sizes['s']}, u={self.sizes['u']})"


def _complex(p: FloerPackage, sectors: tuple[str, str], flavor: str, grid) -> GradedComplex:
    a, b = sectors
    basis = GradedBasis(p.basis(a, flavor) + p.basis(b, flavor))
    sizes = [p.sizes[a], p.sizes[b]]
    return GradedComplex(basis, block_assemble(grid, sizes, sizes), p.window, f"{p.name}:{flavor}")


def assemble_bar(p: FloerPackage) -> GradedComplex:
    B = p.blocks
    return _complex(p, ("s", "u"), "bar", [[B["bar_ss"], B["bar_us"]], [B["bar_su"], B["bar_uu"]]])


def assemble_check(p: FloerPackage) -> GradedComplex:
    B = p.blocks
    return _complex(p, ("o", "s"), "check", [
        [B["d_oo"], B["d_uo"] @ B["bar_su"]],
        [B["d_os"], B["bar_ss"] + B["d_us"] @ B["bar_su"]],
    ])


def assemble_hat(p: FloerPackage) -> GradedComplex:
    B = p.blocks
    return _complex(p, ("o", "u"), "hat", [
        [B["d_oo"], B["d_uo"]],
        [B["bar_su"] @ B["d_os"], B["bar_uu"] + B["bar_su"] @ B["d_us"]],
    ])


_ASSEMBLERS = {"bar": assemble_bar, "check": assemble_check, "hat": assemble_hat}
_LAYOUT = {"bar": ("s", "u"), "check": ("o", "s"), "hat": ("o", "u")}


def assemble(p: FloerPackage, flavor: str) -> GradedComplex:
    try:
        return _ASSEMBLERS[flavor](p)
    except KeyError:
        raise ValueError(f"unknown flavour {flavor!r}; expected one of {', '.join(FLAVORS)}") from None


def _eye(n: int) -> BitMatrix:
    return BitMatrix.identity(n)


def assemble_ijp(p: FloerPackage, complexes: Mapping[str, GradedComplex] | None = None
                 ) -> tuple[ChainMap, ChainMap, ChainMap]:
    """The maps i: bar -> check, j: check -> hat, p: hat -> bar."""
    cx = complexes or {f: assemble(p, f) for f in FLAVORS}
    B = p.blocks
    no, ns, nu = p.sizes["o"], p.sizes["s"], p.sizes["u"]
    i = block_assemble([[None, B["d_uo"]], [_eye(ns), B["d_us"]]], [no, ns], [ns, nu])
    j = block_assemble([[_eye(no), None], [None, B["bar_su"]]], [no, nu], [no, ns])
    pm = block_assemble([[B["d_os"], B["d_us"]], [None, _eye(nu)]], [ns, nu], [no, nu])
    return (ChainMap(cx["bar"], cx["check"], i, Fraction(0), "i"),
            ChainMap(cx["check"], cx["hat"], j, Fraction(0), "j"),
            ChainMap(cx["hat"], cx["bar"], pm, Fraction(-1), "p"))


class CobordismPackage:
    """The eight cobordism blocks between two packages plus the declared degree."""

    def __init__(self, source: FloerPackage, target: FloerPackage, blocks: Mapping[str, BitMatrix] | None = None,
                 spinc_label: str = "", degree=0, name: str = ""):
        self.source = source
        self.target = target
        self.spinc_label = spinc_label
        self.degree = as_fraction(degree)
        self.name = name
        blocks = dict(blocks or {})
        extra = set(blocks) - set(COBORDISM_BLOCKS)
        if extra:
            raise ValueError(f"cobordism {name}: unknown blocks {sorted(extra)}")
        self.blocks: dict[str, BitMatrix] = {}
        for name_, (src, tgt) in COBORDISM_BLOCKS.items():
            shape = (target.sizes[tgt], source.sizes[src])
            m = blocks.get(name_)
            if m is None:
                m = BitMatrix(*shape)
            if m.shape != shape:
                raise ValueError(f"cobordism {name}: block {name_} is {m.rows}x{m.cols}, "
                                 f"expected {shape[0]}x{shape[1]}")
            self.blocks[name_] = m

    @classmethod
    def from_pairs(cls, source: FloerPackage, target: FloerPackage,
                   pairs: Mapping[str, Iterable[tuple[str, str]]], **kw) -> CobordismPackage:
        mats = _blocks_from_pairs(COBORDISM_BLOCKS, pairs, source.index, target.index,
                                  f"cobordism {kw.get('name', '')}")
        return cls(source, target, mats, **kw)

    def pairs(self, name: str) -> list[tuple[str, str]]:
        src, tgt = COBORDISM_BLOCKS[name]
        return [(self.source.sector[src][j].id, self.target.sector[tgt][i].id)
                for i, j in self.blocks[name].entries()]


def _cobordism_matrices(M: Mapping[str, BitMatrix], minus: FloerPackage, plus: FloerPackage) -> dict[str, BitMatrix]:
    Bm, Bp = minus.blocks, plus.blocks
    so, ss, su = minus.sizes["o"], minus.sizes["s"], minus.sizes["u"]
    to, ts, tu = plus.sizes["o"], plus.sizes["s"], plus.sizes["u"]
    bar = block_assemble([[M["bar_m_ss"], M["bar_m_us"]], [M["bar_m_su"], M["bar_m_uu"]]], [ts, tu], [ss, su])
    check = block_assemble([
        [M["m_oo"], M["m_uo"] @ Bm["bar_su"] + Bp["d_uo"] @ M["bar_m_su"]],
        [M["m_os"], M["bar_m_ss"] + M["m_us"] @ Bm["bar_su"] + Bp["d_us"] @ M["bar_m_su"]],
    ], [to, ts], [so, ss])
    hat = block_assemble([
        [M["m_oo"], M["m_uo"]],
        [M["bar_m_su"] @ Bm["d_os"] + Bp["bar_su"] @ M["m_os"],
         M["bar_m_uu"] + M["bar_m_su"] @ Bm["d_us"] + Bp["bar_su"] @ M["m_us"]],
    ], [to, tu], [so, su])
    return {"bar": bar, "check": check, "hat": hat}


def assemble_cobordism(c: CobordismPackage, source_complexes: Mapping[str, GradedComplex] | None = None,
                       target_complexes: Mapping[str, GradedComplex] | None = None) -> dict[str, ChainMap]:
    """Bar, check and hat maps of a cobordism (the sign-type involution is the identity mod 2)."""
    sc = source_complexes or {f: assemble(c.source, f) for f in FLAVORS}
    tc = target_complexes or {f: assemble(c.target, f) for f in FLAVORS}
    mats = _cobordism_matrices(c.blocks, c.source, c.target)
    return {f: ChainMap(sc[f], tc[f], mats[f], c.degree, f"{c.name}:{f}") for f in FLAVORS}


def upsilon_maps(p: FloerPackage, flavor: str, complex_: GradedComplex | None = None) -> list[ChainMap]:
    cx = complex_ if complex_ is not None else assemble(p, flavor)
    out = []
    for k, blocks in enumerate(p.upsilon):
        mats = _cobordism_matrices(blocks, p, p)
        out.append(ChainMap(cx, cx, mats[flavor], Fraction(-1), f"upsilon{k + 1}:{flavor}"))
    return out


def _homologies(p: FloerPackage, cx: Mapping[str, GradedComplex]) -> dict[str, Homology]:
    return {f: homology(cx[f]) for f in FLAVORS}


def verify_les(p: FloerPackage, window: Window | None = None) -> Report:
    """Exactness of bar -> check -> hat -> bar at interior gradings."""
    if window is not None:
        p = p.replace(window=window)
    cx = {f: assemble(p, f) for f in FLAVORS}
    violations = []
    for f in FLAVORS:
        rep = verify_complex(cx[f])
        violations += [f"{f}: {v}" for v in rep.violations]
    if violations:
        return Report(False, violations)
    maps = assemble_ijp(p, cx)
    for m in maps:
        violations += chain_map_violations(m)
    if violations:
        return Report(False, violations)
    hs = _homologies(p, cx)
    i_, j_, p_ = (induced_map_on_homology(m, hs[src], hs[tgt])
                  for m, (src, tgt) in zip(maps, [("bar", "check"), ("check", "hat"), ("hat", "bar")]))
    details: dict = {}
    for vertex, inc, out in (("check", i_, j_), ("hat", j_, p_), ("bar", p_, i_)):
        ex = exactness(inc, out)
        details[vertex] = ex
        for q, ok in ex.items():
            if not ok:
                violations.append(f"exactness fails at {vertex} grading {q}")
    details["i_rank"] = sum(i_.rank(q) for q in i_.blocks)
    details["j_zero"] = j_.is_zero()
    details["p_rank"] = sum(p_.rank(q) for q in p_.blocks)
    details["induced"] = {"i": i_, "j": j_, "p": p_}
    details["homology"] = hs
    return Report(not violations, violations, details)


def verify_package(p: FloerPackage) -> Report:
    """Differentials, i/j/p, upsilon and cobordism-free checks plus exactness."""
    violations = []
    cx = {f: assemble(p, f) for f in FLAVORS}
    for f in FLAVORS:
        violations += [f"{f}: {v}" for v in verify_complex(cx[f]).violations]
    if not violations:
        for m in assemble_ijp(p, cx):
            violations += chain_map_violations(m)
        for f in FLAVORS:
            for u in upsilon_maps(p, f, cx[f]):
                violations += chain_map_violations(u)
    for a in p.anchors:
        g = p.generator(a.anchor_generator)
        if g.spinc != a.spinc:
            violations.append(f"anchor {a.anchor_generator} is in spin-c {g.spinc}, not {a.spinc}")
        if g.grading != a.anchor_value:
            violations.append(f"anchor {a.anchor_generator} has grading {g.grading}, anchor says {a.anchor_value}")
    details: dict = {"generators": {s: p.sizes[s] for s in SECTORS}}
    if not violations:
        les = verify_les(p)
        violations += les.violations
        details.update({k: v for k, v in les.details.items() if k in ("j_zero",)})
        details["homology"] = les.details.get("homology")
    return Report(not violations, violations, details)
