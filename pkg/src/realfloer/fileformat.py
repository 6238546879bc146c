"""Versioned text format for packages, triples, link data and cobordism data.

A document starts with ``format: 1``, then ``key: value`` header lines, then
sections opened by ``[name arg ...]``.  Section bodies are whitespace
separated tokens or ``key: value`` lines.  ``#`` starts a comment.
Rationals are written ``a`` or ``a/b``; floats are rejected.

Packages::

    format: 1
    kind: package
    name: U1
    window: -8..8
    [generators]
    a0 s 0 s0
    [block d_oo]
    x y
    [upsilon 1]
    a0 a-1
    [anchors]
    s0 a0 0

Triples tag package sections with a vertex (``[generators K2]``,
``[block K2 d_oo]``) and add ``[edge i]``, ``[map i BLOCK]``,
``[homotopy i BLOCK]``, ``[offsets Ki]``, ``[second BLOCK]``,
``[correction BLOCK]`` and ``[pairing]``.
"""
from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .catalog import CobordismRecord, PlanarDiagram
from .complexes import Window
from .floer import (COBORDISM_BLOCKS, DIFFERENTIAL_BLOCKS, SECTORS, CobordismPackage, FloerPackage, GradingAnchor,
                    PackageGenerator, _blocks_from_pairs)
from .link import CobordismData, GoeritzPresentation, LinkInvariants
from .triangle import (CORRECTION_BLOCKS, HOMOTOPY_BLOCKS, SECOND_HOMOTOPY_BLOCKS, ConjugationPairing,
                       SkeinTriple)

__all__ = [
    "FORMAT_VERSION",
    "FormatError",
    "Document",
    "Section",
    "parse_document",
    "parse_rational",
    "loads",
    "load",
    "dumps",
    "dump",
]

FORMAT_VERSION = 1
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_SECTION = re.compile(r"^\[([^\[\]]+)\]$")
_KEY = re.compile(r"^([A-Za-z_][A-Za-z0-9_ ]*):\s*(.*)$")


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class Section:
    name: str
    args: list[str]
    line: int
    body: list[tuple[int, list[str]]] = field(default_factory=list)

    def keys(self) -> dict[str, tuple[int, str]]:
        out = {}
        for ln, toks in self.body:
            m = _KEY.match(" ".join(toks))
            if not m:
                raise FormatError(f"expected 'key: value' in [{self.name}]", ln)
            out[m.group(1).strip()] = (ln, m.group(2).strip())
        return out


@dataclass
class Document:
    header: dict[str, tuple[int, str]]
    sections: list[Section]

    def get(self, key: str, default=None):
        return self.header[key][1] if key in self.header else default

    def require(self, key: str) -> str:
        if key not in self.header:
            raise FormatError(f"missing header key {key!r}")
        return self.header[key][1]


def parse_rational(tok: str, line: int | None = None) -> Fraction:
    if not _RATIONAL.match(tok):
        raise FormatError(f"expected a rational 'a' or 'a/b', got {tok!r}", line)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {tok!r}", line) from None


def _int(tok: str, line: int) -> int:
    if not re.match(r"^[+-]?\d+$", tok):
        raise FormatError(f"expected an integer, got {tok!r}", line)
    return int(tok)


def parse_document(text: str) -> Document:
    header: dict[str, tuple[int, str]] = {}
    sections: list[Section] = []
    seen_format = False
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if not seen_format:
            m = _KEY.match(stripped)
            if not m or m.group(1) != "format":
                raise FormatError("document must start with 'format: 1'", ln)
            if m.group(2).strip() != str(FORMAT_VERSION):
                raise FormatError(f"unsupported format version {m.group(2).strip()!r}", ln)
            seen_format = True
            continue
        m = _SECTION.match(stripped)
        if m:
            toks = m.group(1).split()
            if not toks:
                raise FormatError("empty section name", ln)
            sections.append(Section(toks[0], toks[1:], ln))
            continue
        if stripped.startswith("["):
            raise FormatError(f"malformed section header {stripped!r}", ln)
        if sections:
            sections[-1].body.append((ln, stripped.split()))
            continue
        m = _KEY.match(stripped)
        if not m:
            raise FormatError(f"expected 'key: value' header line, got {stripped!r}", ln)
        key = m.group(1).strip()
        if key in header:
            raise FormatError(f"duplicate header key {key!r}", ln)
        header[key] = (ln, m.group(2).strip())
    if not seen_format:
        raise FormatError("empty document; expected 'format: 1'")
    return Document(header, sections)


# --- loading -------------------------------------------------------------------


def _window(value: str, line: int, margin: str | None = None) -> Window:
    parts = value.split("..")
    if len(parts) != 2:
        raise FormatError(f"window must look like LO..HI, got {value!r}", line)
    lo, hi = parse_rational(parts[0].strip(), line), parse_rational(parts[1].strip(), line)
    try:
        w = Window.checked(lo, hi)
    except ValueError as e:
        raise FormatError(str(e), line) from None
    if margin is not None:
        m = _int(margin, line)
        if m < 0:
            raise FormatError("margin must be non-negative", line)
        w = dataclasses.replace(w, margin=m)
    return w


class _Pairs(list):
    """``(source, target)`` pairs remembering the line each came from."""

    def __init__(self, items=(), lines=()):
        super().__init__(items)
        self.lines = list(lines)

    def located(self, default: int):
        lines = self.lines or [default] * len(self)
        return zip(lines, self)


def _pairs(sec: Section) -> _Pairs:
    out = _Pairs()
    for ln, toks in sec.body:
        if len(toks) != 2:
            raise FormatError(f"expected 'source target' in [{sec.name} {' '.join(sec.args)}]", ln)
        out.append((toks[0], toks[1]))
        out.lines.append(ln)
    return out


def _package_from(name_default: str, keys: dict[str, tuple[int, str]], sections: list[Section]) -> FloerPackage:
    def key(k, default=None):
        return keys[k][1] if k in keys else default

    def line(k):
        return keys[k][0] if k in keys else None

    name = key("name", name_default)
    window = None
    if "window" in keys:
        window = _window(key("window"), line("window"), key("margin"))
    determinant = _int(key("determinant"), line("determinant")) if "determinant" in keys else None
    components = _int(key("components", "1"), line("components") or 0)
    gens: list[PackageGenerator] = []
    blocks: dict[str, list] = {}
    upsilon: dict[int, list] = {}
    anchors = []
    gen_lines: dict[str, int] = {}
    for sec in sections:
        if sec.name == "generators":
            for ln, toks in sec.body:
                if len(toks) not in (3, 4):
                    raise FormatError("generator line needs 'id sector grading [spinc]'", ln)
                gid, sector, q = toks[0], toks[1], toks[2]
                if sector not in SECTORS:
                    raise FormatError(f"unknown sector {sector!r}; expected o, s or u", ln)
                if gid in gen_lines:
                    raise FormatError(f"duplicate generator {gid!r} (first on line {gen_lines[gid]})", ln)
                gen_lines[gid] = ln
                gens.append(PackageGenerator(gid, sector, parse_rational(q, ln), toks[3] if len(toks) == 4 else "s0"))
        elif sec.name == "block":
            if len(sec.args) != 1 or sec.args[0] not in DIFFERENTIAL_BLOCKS:
                raise FormatError(f"[block NAME] needs one of {', '.join(DIFFERENTIAL_BLOCKS)}", sec.line)
            if sec.args[0] in blocks:
                raise FormatError(f"block {sec.args[0]} given twice", sec.line)
            blocks[sec.args[0]] = (sec.line, _pairs(sec))
        elif sec.name == "upsilon":
            if len(sec.args) != 1:
                raise FormatError("[upsilon K] needs a component number", sec.line)
            k = _int(sec.args[0], sec.line)
            if k in upsilon:
                raise FormatError(f"upsilon {k} given twice", sec.line)
            upsilon[k] = (sec.line, _pairs(sec))
        elif sec.name == "anchors":
            for ln, toks in sec.body:
                if len(toks) != 3:
                    raise FormatError("anchor line needs 'spinc generator value'", ln)
                anchors.append((ln, GradingAnchor(toks[0], toks[1], parse_rational(toks[2], ln))))
        else:
            raise FormatError(f"unexpected section [{sec.name}] in a package", sec.line)
    if sorted(upsilon) != list(range(1, len(upsilon) + 1)):
        raise FormatError(f"upsilon components must be numbered 1..n, got {sorted(upsilon)}")
    sector = {g.id: g.sector for g in gens}
    index = {s: {g.id: k for k, g in enumerate([x for x in gens if x.sector == s])} for s in SECTORS}
    mats = {}
    for bname, (ln, plist) in blocks.items():
        src, tgt = DIFFERENTIAL_BLOCKS[bname]
        _check_pairs(plist, sector, src, tgt, bname, ln)
        mats.update(_blocks_from_pairs(DIFFERENTIAL_BLOCKS, {bname: plist}, index, index, name))
    ups = []
    name_of = {v: k for k, v in COBORDISM_BLOCKS.items()}
    for k in sorted(upsilon):
        ln, plist = upsilon[k]
        grouped: dict[str, list] = {}
        for ln, (a, b) in plist.located(ln):
            for g in (a, b):
                if g not in sector:
                    raise FormatError(f"upsilon {k}: unknown generator {g!r}", ln)
            key_ = (sector[a], sector[b])
            if key_ not in name_of:
                raise FormatError(f"upsilon {k}: no block carries {key_[0]}->{key_[1]} ({a} -> {b})", ln)
            grouped.setdefault(name_of[key_], []).append((a, b))
        ups.append(_blocks_from_pairs(COBORDISM_BLOCKS, grouped, index, index, f"{name} upsilon"))
    for ln, a in anchors:
        if a.anchor_generator not in sector:
            raise FormatError(f"anchor generator {a.anchor_generator!r} not in package", ln)
    return FloerPackage(name, gens, mats, ups, window, determinant, components, [a for _, a in anchors])


def _check_pairs(plist, sector, src, tgt, what, ln):
    for ln, (a, b) in plist.located(ln):
        if a not in sector:
            raise FormatError(f"{what}: unknown generator {a!r}", ln)
        if b not in sector:
            raise FormatError(f"{what}: unknown generator {b!r}", ln)
        if sector[a] != src or sector[b] != tgt:
            raise FormatError(f"{what} carries {src}->{tgt} but {a} -> {b} is "
                              f"{sector[a]}->{sector[b]}", ln)


def _load_package(doc: Document) -> FloerPackage:
    return _package_from("package", doc.header, doc.sections)


def _inv(value: str, line: int) -> LinkInvariants:
    toks = value.split()
    if len(toks) != 3:
        raise FormatError("link invariants are 'signature nullity determinant'", line)
    return LinkInvariants(*(_int(t, line) for t in toks))


def _cobordism_data(keys: dict[str, tuple[int, str]], where: str) -> CobordismData:
    need = ("b0", "b1", "self_intersection", "source_inv", "target_inv")
    for k in need:
        if k not in keys:
            raise FormatError(f"{where}: missing key {k!r}")
    data = CobordismData(_int(keys["b0"][1], keys["b0"][0]), _int(keys["b1"][1], keys["b1"][0]),
                         _int(keys["self_intersection"][1], keys["self_intersection"][0]),
                         _inv(keys["source_inv"][1], keys["source_inv"][0]),
                         _inv(keys["target_inv"][1], keys["target_inv"][0]),
                         parse_rational(keys["c1_square"][1], keys["c1_square"][0]) if "c1_square" in keys
                         else Fraction(0))
    return data


def _vertex(tok: str, line: int) -> int:
    m = re.match(r"^K([012])$", tok)
    if not m:
        raise FormatError(f"expected a vertex K0, K1 or K2, got {tok!r}", line)
    return int(m.group(1))


def _edge(tok: str, line: int) -> int:
    if tok not in ("0", "1", "2"):
        raise FormatError(f"expected an edge index 0, 1 or 2, got {tok!r}", line)
    return int(tok)


def _load_triple(doc: Document) -> SkeinTriple:
    name = doc.require("name")
    per_vertex: dict[int, list[Section]] = {0: [], 1: [], 2: []}
    vertex_keys: dict[int, dict] = {0: {}, 1: {}, 2: {}}
    edges: dict[int, dict] = {}
    maps: dict[int, dict[str, tuple[int, list]]] = {0: {}, 1: {}, 2: {}}
    homs: dict[int, dict[str, tuple[int, list]]] = {0: {}, 1: {}, 2: {}}
    offsets: list[dict] = [{}, {}, {}]
    second: dict[str, tuple[int, list]] = {}
    corr: dict[str, tuple[int, list]] = {}
    pairing = None
    for sec in doc.sections:
        if sec.name in ("generators", "block", "upsilon", "anchors"):
            if not sec.args:
                raise FormatError(f"[{sec.name}] in a triple needs a vertex K0, K1 or K2", sec.line)
            v = _vertex(sec.args[0], sec.line)
            per_vertex[v].append(Section(sec.name, sec.args[1:], sec.line, sec.body))
        elif sec.name == "package":
            if len(sec.args) != 1:
                raise FormatError("[package Ki] needs a vertex", sec.line)
            vertex_keys[_vertex(sec.args[0], sec.line)] = sec.keys()
        elif sec.name == "edge":
            if len(sec.args) != 1:
                raise FormatError("[edge i] needs an edge index", sec.line)
            edges[_edge(sec.args[0], sec.line)] = sec.keys()
        elif sec.name in ("map", "homotopy"):
            spec = COBORDISM_BLOCKS if sec.name == "map" else HOMOTOPY_BLOCKS
            if len(sec.args) != 2 or sec.args[1] not in spec:
                raise FormatError(f"[{sec.name} i BLOCK] needs an edge and one of {', '.join(spec)}", sec.line)
            target = (maps if sec.name == "map" else homs)[_edge(sec.args[0], sec.line)]
            if sec.args[1] in target:
                raise FormatError(f"{sec.name} block {sec.args[1]} given twice", sec.line)
            target[sec.args[1]] = (sec.line, _pairs(sec))
        elif sec.name == "offsets":
            if len(sec.args) != 1:
                raise FormatError("[offsets Ki] needs a vertex", sec.line)
            v = _vertex(sec.args[0], sec.line)
            for ln, toks in sec.body:
                if len(toks) != 2:
                    raise FormatError("offset line needs 'spinc value'", ln)
                offsets[v][toks[0]] = parse_rational(toks[1], ln)
        elif sec.name in ("second", "correction"):
            spec = SECOND_HOMOTOPY_BLOCKS if sec.name == "second" else CORRECTION_BLOCKS
            if len(sec.args) != 1 or sec.args[0] not in spec:
                raise FormatError(f"[{sec.name} BLOCK] needs one of {', '.join(spec)}", sec.line)
            (second if sec.name == "second" else corr)[sec.args[0]] = (sec.line, _pairs(sec))
        elif sec.name == "pairing":
            a1, a0 = {}, {}
            for ln, toks in sec.body:
                if len(toks) != 3 or toks[0] not in ("a1", "a0"):
                    raise FormatError("pairing line needs 'a1|a0 k value'", ln)
                (a1 if toks[0] == "a1" else a0)[_int(toks[1], ln)] = _int(toks[2], ln)
            pairing = ConjugationPairing(a1, a0)
        else:
            raise FormatError(f"unexpected section [{sec.name}] in a triple", sec.line)
    pkgs = tuple(_package_from(f"K{v}", vertex_keys[v], per_vertex[v]) for v in range(3))
    cobs = []
    numerics = []
    for i in range(3):
        src, tgt = pkgs[i], pkgs[(i - 1) % 3]
        keys = edges.get(i, {})
        deg = parse_rational(keys["degree"][1], keys["degree"][0]) if "degree" in keys else Fraction(0)
        cobs.append(CobordismPackage(src, tgt, _mats(COBORDISM_BLOCKS, maps[i], src, tgt, f"map {i}"),
                                     keys["spinc"][1] if "spinc" in keys else "", deg,
                                     keys["name"][1] if "name" in keys else f"f{i}"))
        numerics.append(_cobordism_data(keys, f"edge {i}") if "b0" in keys else None)
    hs = tuple(_mats(HOMOTOPY_BLOCKS, homs[i], pkgs[i], pkgs[(i - 2) % 3], f"homotopy {i}") for i in range(3))
    g = _mats(SECOND_HOMOTOPY_BLOCKS, second, pkgs[0], pkgs[0], "second") if second else None
    l_ = _mats(CORRECTION_BLOCKS, corr, pkgs[0], pkgs[0], "correction") if corr else None
    try:
        return SkeinTriple(name, pkgs, tuple(cobs), hs, tuple(offsets), tuple(numerics), g, l_, pairing)
    except ValueError as e:
        raise FormatError(str(e)) from None


def _mats(spec, given, src: FloerPackage, tgt: FloerPackage, what: str) -> dict:
    out = {}
    ssec = {g.id: g.sector for g in src.generators}
    tsec = {g.id: g.sector for g in tgt.generators}
    for bname, (ln, plist) in given.items():
        a_sec, b_sec = spec[bname]
        for ln, (a, b) in plist.located(ln):
            if a not in ssec or b not in tsec:
                raise FormatError(f"{what} {bname}: unknown generator in {a} -> {b}", ln)
            if ssec[a] != a_sec or tsec[b] != b_sec:
                raise FormatError(f"{what} {bname} carries {a_sec}->{b_sec} but {a} -> {b} is "
                                  f"{ssec[a]}->{tsec[b]}", ln)
        out.update(_blocks_from_pairs(spec, {bname: plist}, src.index, tgt.index, what))
    return out


def _load_goeritz(doc: Document) -> GoeritzPresentation:
    rows = []
    for sec in doc.sections:
        if sec.name != "matrix":
            raise FormatError(f"unexpected section [{sec.name}] in a goeritz document", sec.line)
        for ln, toks in sec.body:
            rows.append([_int(t, ln) for t in toks])
    try:
        return GoeritzPresentation(tuple(tuple(r) for r in rows), _int(doc.get("correction", "0"), 0),
                                   _int(doc.get("components", "1"), 0))
    except ValueError as e:
        raise FormatError(str(e)) from None


def _load_pd(doc: Document) -> PlanarDiagram:
    crossings = []
    for sec in doc.sections:
        if sec.name != "crossings":
            raise FormatError(f"unexpected section [{sec.name}] in a pd document", sec.line)
        for ln, toks in sec.body:
            if len(toks) != 4:
                raise FormatError("a crossing has four edge labels", ln)
            crossings.append(tuple(_int(t, ln) for t in toks))
    shade = _int(doc.get("shade", "0"), 0)
    if shade not in (0, 1):
        raise FormatError("shade must be 0 or 1")
    return PlanarDiagram(doc.get("name", "diagram"), tuple(crossings), shade)


def _load_cobordism(doc: Document) -> CobordismRecord:
    data = _cobordism_data(doc.header, "cobordism")
    spinc = []
    for sec in doc.sections:
        if sec.name != "spinc":
            raise FormatError(f"unexpected section [{sec.name}] in a cobordism document", sec.line)
        for ln, toks in sec.body:
            if len(toks) != 3:
                raise FormatError("spinc line needs 'label_minus label_plus c1_square'", ln)
            spinc.append((toks[0], toks[1], parse_rational(toks[2], ln)))
    return CobordismRecord(doc.get("name", "cobordism"), data, doc.get("source"), doc.get("target"), tuple(spinc))


_LOADERS = {
    "package": _load_package,
    "triple": _load_triple,
    "goeritz": _load_goeritz,
    "pd": _load_pd,
    "cobordism": _load_cobordism,
}


def loads(text: str):
    doc = parse_document(text)
    kind = doc.require("kind")
    if kind not in _LOADERS:
        raise FormatError(f"unknown kind {kind!r}; expected one of {', '.join(_LOADERS)}", doc.header["kind"][0])
    try:
        return _LOADERS[kind](doc)
    except FormatError:
        raise
    except (ValueError, KeyError) as e:
        raise FormatError(str(e)) from None


def load(path) -> object:
    return loads(Path(path).read_text())


# --- emitting ------------------------------------------------------------------


def _q(x) -> str:
    return str(Fraction(x))


def _package_lines(p: FloerPackage, tag: str = "") -> list[str]:
    t = f" {tag}" if tag else ""
    out = []
    out.append(f"[generators{t}]")
    out += [f"{g.id} {g.sector} {_q(g.grading)} {g.spinc}" for g in p.generators]
    for bname in DIFFERENTIAL_BLOCKS:
        pairs = p.pairs(bname)
        if pairs:
            out.append(f"[block{t} {bname}]")
            out += [f"{a} {b}" for a, b in pairs]
    for k in range(len(p.upsilon)):
        out.append(f"[upsilon{t} {k + 1}]")
        out += [f"{a} {b}" for a, b in p.upsilon_pairs(k)]
    if p.anchors:
        out.append(f"[anchors{t}]")
        out += [f"{a.spinc} {a.anchor_generator} {_q(a.anchor_value)}" for a in p.anchors]
    return out


def _package_keys(p: FloerPackage) -> list[str]:
    out = [f"name: {p.name}"]
    if p.window is not None:
        out.append(f"window: {_q(p.window.lo)}..{_q(p.window.hi)}")
        if p.window.margin != 1:
            out.append(f"margin: {_q(p.window.margin)}")
    if p.determinant is not None:
        out.append(f"determinant: {p.determinant}")
    out.append(f"components: {p.components}")
    return out


def _block_pairs(mats: dict, spec: dict, src: FloerPackage, tgt: FloerPackage):
    for bname, (a_sec, b_sec) in spec.items():
        m = mats.get(bname)
        if m is None or m.is_zero():
            continue
        yield bname, [(src.sector[a_sec][j].id, tgt.sector[b_sec][i].id) for i, j in m.entries()]


def _inv_str(v: LinkInvariants) -> str:
    return f"{v.signature} {v.nullity} {v.determinant}"


def _data_lines(c: CobordismData) -> list[str]:
    return [f"b0: {c.b0_sigma}", f"b1: {c.b1_sigma}", f"self_intersection: {c.self_intersection}",
            f"source_inv: {_inv_str(c.source_inv)}", f"target_inv: {_inv_str(c.target_inv)}",
            f"c1_square: {_q(c.c1_square)}"]


def dumps(obj) -> str:
    out = [f"format: {FORMAT_VERSION}"]
    if isinstance(obj, FloerPackage):
        out.append("kind: package")
        out += _package_keys(obj)
        out += _package_lines(obj)
    elif isinstance(obj, SkeinTriple):
        out.append("kind: triple")
        out.append(f"name: {obj.name}")
        for v, p in enumerate(obj.packages):
            out.append(f"[package K{v}]")
            out += _package_keys(p)
            out += _package_lines(p, f"K{v}")
            if obj.offsets[v]:
                out.append(f"[offsets K{v}]")
                out += [f"{k} {_q(x)}" for k, x in obj.offsets[v].items()]
        for i, f in enumerate(obj.maps):
            out.append(f"[edge {i}]")
            out.append(f"name: {f.name}")
            out.append(f"degree: {_q(f.degree)}")
            if f.spinc_label:
                out.append(f"spinc: {f.spinc_label}")
            if obj.numerics[i] is not None:
                out += _data_lines(obj.numerics[i])
            for bname, pairs in _block_pairs(f.blocks, COBORDISM_BLOCKS, f.source, f.target):
                out.append(f"[map {i} {bname}]")
                out += [f"{a} {b}" for a, b in pairs]
        for i, h in enumerate(obj.homotopies):
            for bname, pairs in _block_pairs(h, HOMOTOPY_BLOCKS, obj.packages[i], obj.packages[(i - 2) % 3]):
                out.append(f"[homotopy {i} {bname}]")
                out += [f"{a} {b}" for a, b in pairs]
        base = obj.packages[0]
        for tag, mats, spec in (("second", obj.second, SECOND_HOMOTOPY_BLOCKS),
                                ("correction", obj.correction, CORRECTION_BLOCKS)):
            if mats is None:
                continue
            for bname, pairs in _block_pairs(mats, spec, base, base):
                out.append(f"[{tag} {bname}]")
                out += [f"{a} {b}" for a, b in pairs]
        if obj.pairing is not None:
            out.append("[pairing]")
            out += [f"a1 {k} {v}" for k, v in sorted(obj.pairing.a1.items())]
            out += [f"a0 {k} {v}" for k, v in sorted(obj.pairing.a0.items())]
    elif isinstance(obj, GoeritzPresentation):
        out += ["kind: goeritz", f"correction: {obj.correction_term}", f"components: {obj.components}", "[matrix]"]
        out += [" ".join(str(x) for x in row) for row in obj.goeritz_matrix]
    elif isinstance(obj, PlanarDiagram):
        out += ["kind: pd", f"name: {obj.name}", f"shade: {obj.shade}", "[crossings]"]
        out += [" ".join(str(x) for x in c) for c in obj.crossings]
    elif isinstance(obj, CobordismRecord):
        out += ["kind: cobordism", f"name: {obj.name}"]
        if obj.source:
            out.append(f"source: {obj.source}")
        if obj.target:
            out.append(f"target: {obj.target}")
        out += _data_lines(obj.data)
        if obj.spinc:
            out.append("[spinc]")
            out += [f"{a} {b} {_q(c)}" for a, b, c in obj.spinc]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(out) + "\n"


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj))
