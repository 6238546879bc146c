"""Exact-triangle detection and the homotopy bookkeeping around it.

Vertices are indexed mod 3.  ``f_i: C_i -> C_{i-1}`` are chain maps and
``H_i: C_i -> C_{i-2}`` homotopies.  The two hypotheses checked are

* ``d H_i + H_i d + f_{i-1} f_i = 0`` for every ``i``;
* ``psi_i = H_{i-1} f_i + f_{i-2} H_i`` induces an isomorphism on homology.

When both hold the conclusion is re-derived by rank counts rather than
assumed: the sequence of induced maps is exact at every vertex, and
``s -> (H_i s, f_i s)`` is a quasi-isomorphism ``C_i -> Cone(f_{i-1})``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .complexes import (ChainHomotopy, ChainMap, Generator, GradedBasis, GradedComplex, Homology, Report,
                        as_fraction, chain_map_violations, exactness, induced_map_on_homology, mapping_cone,
                        verify_complex)
from .floer import CobordismPackage, FloerPackage, _cobordism_matrices, assemble
from .gf2 import BitMatrix, block_assemble, rank_kernel_image, vstack

__all__ = [
    "HOMOTOPY_BLOCKS",
    "SECOND_HOMOTOPY_BLOCKS",
    "CORRECTION_BLOCKS",
    "TriangleInstance",
    "TriangleReport",
    "ConjugationPairing",
    "verify_triangle",
    "assemble_H",
    "assemble_G_and_L",
    "verify_key_identity",
    "conjugation_pairing_check",
    "pairing_index",
    "unstable_zero_dim_index",
    "SkeinTriple",
    "homotopy_matrix",
    "generate_instance",
    "random_complex",
    "random_chain_map",
]

HOMOTOPY_BLOCKS: dict[str, tuple[str, str]] = {
    "H_oo": ("o", "o"),
    "H_os": ("o", "s"),
    "H_uo": ("u", "o"),
    "H_us": ("u", "s"),
    "barH_ss": ("s", "s"),
    "barH_su": ("s", "u"),
    "barH_uu": ("u", "u"),
    "barH_us": ("u", "s"),
}

# the s->u and s->s blocks named n_su, n_ss are the insertion terms
SECOND_HOMOTOPY_BLOCKS: dict[str, tuple[str, str]] = {
    "G_oo": ("o", "o"),
    "G_os": ("o", "s"),
    "G_uo": ("u", "o"),
    "G_us": ("u", "s"),
    "barG_ss": ("s", "s"),
    "barG_su": ("s", "u"),
    "n_su": ("s", "u"),
    "n_ss": ("s", "s"),
}

CORRECTION_BLOCKS: dict[str, tuple[str, str]] = {
    "L_oo": ("o", "o"),
    "L_os": ("o", "s"),
    "L_uo": ("u", "o"),
    "L_us": ("u", "s"),
    "barL_ss": ("s", "s"),
    "barL_su": ("s", "u"),
}


@dataclass
class TriangleInstance:
    """Three complexes with maps ``f_i`` and homotopies ``H_i``, indices mod 3."""

    complexes: tuple[GradedComplex, GradedComplex, GradedComplex]
    maps: tuple[BitMatrix, BitMatrix, BitMatrix]
    map_degrees: tuple[Fraction, Fraction, Fraction]
    homotopies: tuple[BitMatrix, BitMatrix, BitMatrix]
    name: str = ""

    def __post_init__(self):
        self.complexes = tuple(self.complexes)
        self.maps = tuple(self.maps)
        self.homotopies = tuple(self.homotopies)
        self.map_degrees = tuple(as_fraction(d) for d in self.map_degrees)
        if not (len(self.complexes) == len(self.maps) == len(self.homotopies) == len(self.map_degrees) == 3):
            raise ValueError("a triangle has three vertices, maps, degrees and homotopies")
        for i in range(3):
            n_i = len(self.complexes[i])
            f, h = self.maps[i], self.homotopies[i]
            if f.shape != (len(self.complexes[(i - 1) % 3]), n_i):
                raise ValueError(f"f_{i} is {f.rows}x{f.cols}, expected "
                                 f"{len(self.complexes[(i - 1) % 3])}x{n_i}")
            if h.shape != (len(self.complexes[(i - 2) % 3]), n_i):
                raise ValueError(f"H_{i} is {h.rows}x{h.cols}, expected "
                                 f"{len(self.complexes[(i - 2) % 3])}x{n_i}")

    def C(self, i: int) -> GradedComplex:
        return self.complexes[i % 3]

    def f(self, i: int) -> ChainMap:
        i %= 3
        return ChainMap(self.C(i), self.C(i - 1), self.maps[i], self.map_degrees[i], f"f_{i}")

    def homotopy_degree(self, i: int) -> Fraction:
        return self.map_degrees[i % 3] + self.map_degrees[(i - 1) % 3] + 1

    def H(self, i: int) -> ChainHomotopy:
        i %= 3
        return ChainHomotopy(self.C(i), self.C(i - 2), self.homotopies[i], self.homotopy_degree(i), f"H_{i}")

    @property
    def total_degree(self) -> Fraction:
        return sum(self.map_degrees, Fraction(0)) + 1

    def psi(self, i: int) -> ChainMap:
        i %= 3
        m = self.homotopies[(i - 1) % 3] @ self.maps[i] + self.maps[(i - 2) % 3] @ self.homotopies[i]
        return ChainMap(self.C(i), self.C(i), m, self.total_degree, f"psi_{i}")

    def rotated(self, r: int) -> TriangleInstance:
        order = [(i + r) % 3 for i in range(3)]
        return TriangleInstance(tuple(self.complexes[k] for k in order), tuple(self.maps[k] for k in order),
                                tuple(self.map_degrees[k] for k in order),
                                tuple(self.homotopies[k] for k in order), self.name)


@dataclass
class TriangleReport:
    complexes: bool = True
    chain_maps: bool = True
    hypothesis1: bool = False
    hypothesis2: bool = False
    conclusion: bool | None = None
    exact: dict[int, bool] = field(default_factory=dict)
    cone: dict[int, bool] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.complexes and self.chain_maps and self.hypothesis1 and self.hypothesis2 and bool(self.conclusion)


def verify_triangle(t: TriangleInstance) -> TriangleReport:
    rep = TriangleReport()
    for i in range(3):
        bad = verify_complex(t.C(i)).violations
        if bad:
            rep.complexes = False
            rep.violations += [f"C_{i}: {v}" for v in bad]
    for i in range(3):
        bad = chain_map_violations(t.f(i)) + chain_map_violations(t.H(i), check_commutes=False)
        if bad:
            rep.chain_maps = False
            rep.violations += bad
    if not rep.complexes:
        return rep
    h1 = True
    for i in range(3):
        total = (t.C(i - 2).differential @ t.homotopies[i] + t.homotopies[i] @ t.C(i).differential
                 + t.maps[(i - 1) % 3] @ t.maps[i])
        for a, b in total.entries():
            h1 = False
            rep.violations.append(f"hypothesis 1 fails at i={i}: dH + Hd + ff nonzero at "
                                  f"{t.C(i).basis[b].id}->{t.C(i - 2).basis[a].id}")
    rep.hypothesis1 = h1
    if not rep.chain_maps:
        return rep
    hs = [Homology(t.C(i)) for i in range(3)]
    h2 = True
    for i in range(3):
        psi = t.psi(i)
        if chain_map_violations(psi):
            h2 = False
            rep.violations.append(f"hypothesis 2 fails at i={i}: psi is not a chain map")
            continue
        bad = induced_map_on_homology(psi, hs[i], hs[i]).failures()
        if bad:
            h2 = False
            rep.violations.append(f"hypothesis 2 fails at i={i}: psi not an isomorphism at gradings "
                                  + ", ".join(str(q) for q in bad))
    rep.hypothesis2 = h2
    if not (h1 and h2):
        return rep
    induced = [induced_map_on_homology(t.f(i), hs[i], hs[(i - 1) % 3]) for i in range(3)]
    for i in range(3):
        ex = exactness(induced[(i + 1) % 3], induced[i])
        rep.exact[i] = all(ex.values())
        for q, ok in ex.items():
            if not ok:
                rep.violations.append(f"not exact at C_{i}, grading {q}")
    for i in range(3):
        f_prev = t.f(i - 1)
        cone = mapping_cone(f_prev, f"Cone(f_{(i - 1) % 3})")
        phi = ChainMap(t.C(i), cone, vstack([t.homotopies[i], t.maps[i]]),
                       t.map_degrees[i] + t.map_degrees[(i - 1) % 3] + 1, f"Phi_{i}")
        bad = chain_map_violations(phi)
        if bad:
            rep.cone[i] = False
            rep.violations.append(f"Phi_{i} is not a chain map: {bad[0]}")
            continue
        fails = induced_map_on_homology(phi, hs[i], Homology(cone)).failures()
        rep.cone[i] = not fails
        if fails:
            rep.violations.append(f"Phi_{i} not a quasi-isomorphism at gradings "
                                  + ", ".join(str(q) for q in fails))
    rep.conclusion = all(rep.exact.values()) and all(rep.cone.values())
    return rep


# --- package-level assembly -------------------------------------------------


def _blocks(spec: Mapping[str, tuple[str, str]], given: Mapping[str, BitMatrix], src: FloerPackage,
            tgt: FloerPackage, what: str) -> dict[str, BitMatrix]:
    extra = set(given) - set(spec)
    if extra:
        raise ValueError(f"{what}: unknown blocks {sorted(extra)}")
    out = {}
    for name, (a, b) in spec.items():
        shape = (tgt.sizes[b], src.sizes[a])
        m = given.get(name)
        if m is None:
            m = BitMatrix(*shape)
        if m.shape != shape:
            raise ValueError(f"{what}: block {name} is {m.rows}x{m.cols}, expected {shape[0]}x{shape[1]}")
        out[name] = m
    return out


def homotopy_matrix(blocks: Mapping[str, BitMatrix], source: FloerPackage, target: FloerPackage,
                    first: CobordismPackage, second: CobordismPackage, flavor: str = "check") -> BitMatrix:
    """Matrix of a homotopy ``source -> target`` null-homotoping ``second o first``."""
    H = _blocks(HOMOTOPY_BLOCKS, blocks, source, target, "homotopy")
    if flavor == "bar":
        return block_assemble([[H["barH_ss"], H["barH_us"]], [H["barH_su"], H["barH_uu"]]],
                              [target.sizes["s"], target.sizes["u"]], [source.sizes["s"], source.sizes["u"]])
    if flavor != "check":
        raise ValueError(f"homotopies are assembled for the bar and check flavours only, not {flavor!r}")
    if first.source is not source or second.target is not target or first.target is not second.source:
        raise ValueError("cobordisms do not run source -> middle -> target")
    Bs, Bt = source.blocks, target.blocks
    M1, M2 = first.blocks, second.blocks
    return block_assemble([
        [H["H_oo"], H["H_uo"] @ Bs["bar_su"] + M2["m_uo"] @ M1["bar_m_su"] + Bt["d_uo"] @ H["barH_su"]],
        [H["H_os"], H["barH_ss"] + H["H_us"] @ Bs["bar_su"] + M2["m_us"] @ M1["bar_m_su"]
         + Bt["d_us"] @ H["barH_su"]],
    ], [target.sizes["o"], target.sizes["s"]], [source.sizes["o"], source.sizes["s"]])


def assemble_H(blocks: Mapping[str, BitMatrix], first: CobordismPackage, second: CobordismPackage,
               source_complex: GradedComplex, target_complex: GradedComplex, flavor: str = "check") -> ChainHomotopy:
    m = homotopy_matrix(blocks, first.source, second.target, first, second, flavor)
    return ChainHomotopy(source_complex, target_complex, m, first.degree + second.degree + 1,
                         f"H({first.name},{second.name})")


def assemble_G_and_L(G: Mapping[str, BitMatrix], L: Mapping[str, BitMatrix], base: FloerPackage,
                     f1: CobordismPackage, H0: Mapping[str, BitMatrix], H2: Mapping[str, BitMatrix],
                     f0: CobordismPackage) -> tuple[BitMatrix, BitMatrix]:
    """Check-flavour second homotopy and correction term on the base vertex.

    ``f1`` ends at ``base``, ``f0`` starts there; ``H0`` starts at ``base``
    and ``H2`` ends there.
    """
    Gb = _blocks(SECOND_HOMOTOPY_BLOCKS, G, base, base, "second homotopy")
    Lb = _blocks(CORRECTION_BLOCKS, L, base, base, "correction")
    H0b = _blocks(HOMOTOPY_BLOCKS, H0, base, f1.source, "H0")
    H2b = _blocks(HOMOTOPY_BLOCKS, H2, f0.target, base, "H2")
    B = base.blocks
    M1, M0 = f1.blocks, f0.blocks
    a = Gb["G_oo"]
    b = (B["d_uo"] @ Gb["barG_su"] + Gb["G_uo"] @ B["bar_su"] + M1["m_uo"] @ H0b["barH_su"]
         + H2b["H_uo"] @ M0["bar_m_su"] + B["d_uo"] @ Gb["n_su"])
    c = Gb["G_os"]
    d = (Gb["barG_ss"] + B["d_us"] @ Gb["barG_su"] + Gb["G_us"] @ B["bar_su"] + M1["m_us"] @ H0b["barH_su"]
         + H2b["H_us"] @ M0["bar_m_su"] + B["d_us"] @ Gb["n_su"] + Gb["n_ss"])
    sizes = [base.sizes["o"], base.sizes["s"]]
    g_check = block_assemble([[a, b], [c, d]], sizes, sizes)
    l_check = block_assemble([
        [Lb["L_oo"], Lb["L_uo"] @ B["bar_su"] + B["d_uo"] @ Lb["barL_su"]],
        [Lb["L_os"], Lb["barL_ss"] + Lb["L_us"] @ B["bar_su"] + B["d_us"] @ Lb["barL_su"]],
    ], sizes, sizes)
    return g_check, l_check


def verify_key_identity(G: BitMatrix, d: BitMatrix, f1: BitMatrix, H0: BitMatrix, H2: BitMatrix,
                        f0: BitMatrix, L: BitMatrix, basis: GradedBasis | None = None) -> Report:
    """``d G + G d = f1 H0 + H2 f0 + L`` on the base vertex."""
    lhs = d @ G + G @ d
    rhs = f1 @ H0 + H2 @ f0 + L
    diff = lhs + rhs
    violations = []
    for i, j in diff.entries():
        where = f"{basis[j].id}->{basis[i].id}" if basis is not None else f"({i}, {j})"
        violations.append(f"key identity fails at {where}")
    return Report(not violations, violations)


# --- conjugation pairing ------------------------------------------------------


def pairing_index(k: int) -> int:
    """Tower index of the zero-dimensional unstable moduli space for class ``k``."""
    return -1 - k * (k + 1) // 2


def unstable_zero_dim_index(k: int, mu: int) -> int | None:
    """Negative tower index ``i`` where the second blow-up family has dimension zero."""
    i = -mu - k * (k + 1) // 2
    return i if i < 0 else None


@dataclass
class ConjugationPairing:
    a1: dict[int, int]
    a0: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.a1 = {int(k): int(v) % 2 for k, v in self.a1.items()}
        self.a0 = {int(k): int(v) % 2 for k, v in self.a0.items()}


def conjugation_pairing_check(c: ConjugationPairing) -> Report:
    ks = set(c.a1)
    for k in sorted(ks):
        if -1 - k not in ks:
            raise ValueError(f"window not symmetric: {k} present but {-1 - k} missing")
    if c.a0 and set(c.a0) != ks:
        raise ValueError("the two coefficient families must share a window")
    violations = []
    for k in sorted(x for x in ks if x >= 0):
        if (c.a1[k] + c.a1[-1 - k]) % 2 != 1:
            violations.append(f"pair ({k}, {-1 - k}) sums to 0")
    lowest = (c.a1.get(0, 0) + c.a1.get(-1, 0)) % 2 if ks else None
    return Report(not violations, violations, {"lowest_order": lowest})


# --- constructive instance generator -----------------------------------------


def _dense(m: BitMatrix) -> np.ndarray:
    return m.to_dense()


def _automorphism(rng: np.random.Generator, basis: GradedBasis, ops: int) -> tuple[np.ndarray, np.ndarray]:
    n = len(basis)
    p = np.eye(n, dtype=np.uint8)
    pinv = np.eye(n, dtype=np.uint8)
    groups = [g for g in basis.by_grading.values() if len(g) > 1]
    moves = []
    for _ in range(ops if groups else 0):
        grp = groups[rng.integers(len(groups))]
        i, j = rng.choice(grp, size=2, replace=False)
        moves.append((int(i), int(j)))
    for i, j in moves:
        p[i] ^= p[j]
    for i, j in reversed(moves):
        pinv[i] ^= pinv[j]
    return p, pinv


def _mul(*mats: np.ndarray) -> np.ndarray:
    out = mats[0].astype(np.int64)
    for m in mats[1:]:
        out = (out @ m.astype(np.int64)) % 2
    return out.astype(np.uint8)


def random_complex(rng: np.random.Generator, prefix: str, pairs: int, singles: int, spread: int = 3,
                   scramble: int = 6) -> GradedComplex:
    """Direct sum of acyclic pairs and single generators, then a random change of basis."""
    gens = []
    entries = []
    for k in range(pairs):
        q = int(rng.integers(-spread, spread + 1))
        gens.append(Generator(f"{prefix}{len(gens)}", q + 1))
        gens.append(Generator(f"{prefix}{len(gens)}", q))
        entries.append((len(gens) - 1, len(gens) - 2))
    for k in range(singles):
        gens.append(Generator(f"{prefix}{len(gens)}", int(rng.integers(-spread, spread + 1))))
    order = rng.permutation(len(gens))
    where = {int(old): new for new, old in enumerate(order)}
    basis = GradedBasis(Generator(f"{prefix}{k}", gens[int(old)].grading) for k, old in enumerate(order))
    d = BitMatrix.from_entries(len(gens), len(gens), [(where[i], where[j]) for i, j in entries])
    p, pinv = _automorphism(rng, basis, scramble)
    d = BitMatrix.from_dense(_mul(p, _dense(d), pinv))
    return GradedComplex(basis, d, None, prefix)


def random_chain_map(rng: np.random.Generator, source: GradedComplex, target: GradedComplex,
                     degree) -> BitMatrix:
    """A uniformly random chain map of the given degree (from the solution space)."""
    degree = as_fraction(degree)
    ns, nt = len(source), len(target)
    slots = [(i, j) for j in range(ns) for i in range(nt)
             if target.basis[i].grading == source.basis[j].grading + degree]
    if not slots:
        return BitMatrix(nt, ns)
    ds, dt = _dense(source.differential), _dense(target.differential)
    cols = []
    for i, j in slots:
        e = np.zeros((nt, ns), dtype=np.uint8)
        e[i, j] = 1
        cols.append(((dt.astype(np.int64) @ e + e @ ds.astype(np.int64)) % 2).reshape(-1))
    constraint = BitMatrix.from_dense(np.array(cols, dtype=np.uint8).T)
    kernel = rank_kernel_image(constraint).kernel
    if kernel.cols == 0:
        return BitMatrix(nt, ns)
    coeffs = rng.integers(0, 2, size=kernel.cols).astype(np.int64)
    x = (kernel.to_dense().astype(np.int64) @ coeffs) % 2
    f = np.zeros((nt, ns), dtype=np.uint8)
    for (i, j), bit in zip(slots, x):
        f[i, j] = bit
    return BitMatrix.from_dense(f)


def generate_instance(seed: int, max_pairs: int = 3, max_singles: int = 3) -> TriangleInstance:
    """A triangle satisfying both hypotheses by construction.

    Two random complexes ``A``, ``B`` and a random chain map ``f: A -> B``
    give the vertices ``A``, ``B`` and ``Cone(f)``; inclusion and projection
    close the triangle and the homotopies are the canonical ones, so every
    ``psi_i`` is the identity.  Bases are then scrambled and the vertex
    labels rotated.
    """
    rng = np.random.default_rng(seed)
    A = random_complex(rng, "a", int(rng.integers(0, max_pairs + 1)), int(rng.integers(1, max_singles + 1)))
    B = random_complex(rng, "b", int(rng.integers(0, max_pairs + 1)), int(rng.integers(1, max_singles + 1)))
    delta = Fraction(int(rng.integers(-1, 2)))
    f = random_chain_map(rng, A, B, delta)
    C0 = mapping_cone(ChainMap(A, B, f, delta), "c")
    na, nb = len(A), len(B)
    incl = block_assemble([[BitMatrix.identity(nb)], [None]], [nb, na], [nb])
    proj = block_assemble([[None, BitMatrix.identity(na)]], [na], [nb, na])
    h2 = block_assemble([[None], [BitMatrix.identity(na)]], [nb, na], [na])   # a -> (0, a)
    h0 = block_assemble([[BitMatrix.identity(nb), None]], [nb], [nb, na])     # (t, s) -> t
    C = [C0, B, A]
    maps = [proj, incl, f]
    degrees = [-delta - 1, Fraction(0), delta]
    homs = [h0, BitMatrix(na, nb), h2]
    # scramble each vertex by a grading-preserving change of basis
    P, Pinv = [], []
    for c in C:
        p, pinv = _automorphism(rng, c.basis, 8)
        P.append(p)
        Pinv.append(pinv)
    C = [GradedComplex(c.basis, BitMatrix.from_dense(_mul(P[i], _dense(c.differential), Pinv[i])), None,
                       c.name) for i, c in enumerate(C)]
    maps = [BitMatrix.from_dense(_mul(P[(i - 1) % 3], _dense(maps[i]), Pinv[i])) for i in range(3)]
    homs = [BitMatrix.from_dense(_mul(P[(i - 2) % 3], _dense(homs[i]), Pinv[i])) for i in range(3)]
    inst = TriangleInstance(tuple(C), tuple(maps), tuple(degrees), tuple(homs), f"generated-{seed}")
    return inst.rotated(int(rng.integers(0, 3)))


# --- skein triples at the package level --------------------------------------


@dataclass
class SkeinTriple:
    """Three packages ``K_0, K_1, K_2`` with cobordism maps ``f_i: K_i -> K_{i-1}``.

    ``homotopies[i]`` holds the blocks of ``H_i: K_i -> K_{i-2}``.
    ``offsets[i]`` realigns the towers of ``K_i`` per spin-c label so that
    every map has a single degree; the second homotopy, the correction term
    and the pairing coefficients live on the base vertex ``K_0``.
    """

    name: str
    packages: tuple[FloerPackage, FloerPackage, FloerPackage]
    maps: tuple[CobordismPackage, CobordismPackage, CobordismPackage]
    homotopies: tuple[dict, dict, dict]
    offsets: tuple[dict, dict, dict] = ({}, {}, {})
    numerics: tuple = (None, None, None)
    second: dict | None = None
    correction: dict | None = None
    pairing: ConjugationPairing | None = None

    def __post_init__(self):
        self.packages = tuple(self.packages)
        self.maps = tuple(self.maps)
        self.homotopies = tuple(dict(h) for h in self.homotopies)
        self.offsets = tuple({k: as_fraction(v) for k, v in o.items()} for o in self.offsets)
        self.numerics = tuple(self.numerics)
        for i in range(3):
            f = self.maps[i]
            if f.source is not self.packages[i] or f.target is not self.packages[(i - 1) % 3]:
                raise ValueError(f"map f_{i} must run K{i} -> K{(i - 1) % 3}")
            _blocks(HOMOTOPY_BLOCKS, self.homotopies[i], self.packages[i], self.packages[(i - 2) % 3],
                    f"H_{i}")

    def vertex(self, i: int) -> FloerPackage:
        i %= 3
        return self.packages[i].regraded(self.offsets[i]) if self.offsets[i] else self.packages[i]

    def complexes(self, flavor: str) -> tuple[GradedComplex, GradedComplex, GradedComplex]:
        return tuple(assemble(self.vertex(i), flavor) for i in range(3))

    def map_matrix(self, i: int, flavor: str) -> BitMatrix:
        f = self.maps[i % 3]
        return _cobordism_matrices(f.blocks, f.source, f.target)[flavor]

    def homotopy(self, i: int, flavor: str) -> BitMatrix:
        i %= 3
        return homotopy_matrix(self.homotopies[i], self.packages[i], self.packages[(i - 2) % 3],
                               self.maps[i], self.maps[(i - 1) % 3], flavor)

    def instance(self, flavor: str) -> TriangleInstance:
        return TriangleInstance(self.complexes(flavor), tuple(self.map_matrix(i, flavor) for i in range(3)),
                                tuple(f.degree for f in self.maps),
                                tuple(self.homotopy(i, flavor) for i in range(3)), f"{self.name}:{flavor}")

    def key_identity(self) -> tuple[Report, BitMatrix, BitMatrix]:
        """Check-flavour key identity on ``K_0``; also returns the assembled G and L."""
        if self.second is None and self.correction is None:
            raise ValueError(f"triple {self.name} carries no second homotopy or correction data")
        base = self.packages[0]
        G, L = assemble_G_and_L(self.second or {}, self.correction or {}, base, self.maps[1],
                                self.homotopies[0], self.homotopies[2], self.maps[0])
        d = self.complexes("check")[0]
        rep = verify_key_identity(G, d.differential, self.map_matrix(1, "check"), self.homotopy(0, "check"),
                                  self.homotopy(2, "check"), self.map_matrix(0, "check"), L, d.basis)
        return rep, G, L

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkeinTriple):
            return NotImplemented
        same_maps = all(a.blocks == b.blocks and a.degree == b.degree and a.name == b.name
                        and a.spinc_label == b.spinc_label for a, b in zip(self.maps, other.maps))

        def nz(d):
            return {k: v for k, v in (d or {}).items() if not v.is_zero()}

        return (self.name == other.name and self.packages == other.packages and same_maps
                and [nz(h) for h in self.homotopies] == [nz(h) for h in other.homotopies]
                and self.offsets == other.offsets and self.numerics == other.numerics
                and nz(self.second) == nz(other.second) and nz(self.correction) == nz(other.correction)
                and self.pairing == other.pairing)
