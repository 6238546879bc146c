"""Slow, independent reference computations used only by the tests.

Nothing here calls the library's elimination, homology or link code, so a
bug in those routines cannot hide behind a matching bug in its oracle.
"""
from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction

import numpy as np


# --- GF(2) linear algebra ---------------------------------------------------------


def rank_xor_basis(dense) -> int:
    """Rank by inserting rows (as Python ints) into a leading-bit basis."""
    basis: dict[int, int] = {}
    for row in np.asarray(dense, dtype=np.uint8):
        v = int("".join(str(int(b)) for b in row) or "0", 2)
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def rank_sets(rows: int, cols: int, entries) -> int:
    """Rank by column elimination on a dict of sets (sparse, pivot = max row)."""
    columns: dict[int, set[int]] = {}
    for i, j in entries:
        columns.setdefault(j, set()).symmetric_difference_update({i})
    pivots: dict[int, set[int]] = {}
    r = 0
    for j in sorted(columns):
        col = set(columns[j])
        while col:
            top = max(col)
            if top not in pivots:
                pivots[top] = col
                r += 1
                break
            col ^= pivots[top]
    return r


def matmul_loops(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    n, k = a.shape
    k2, m = b.shape
    assert k == k2
    out = np.zeros((n, m), dtype=np.uint8)
    for i in range(n):
        for j in range(m):
            s = 0
            for t in range(k):
                s ^= int(a[i, t]) & int(b[t, j])
            out[i, j] = s
    return out


def in_span(vectors, target) -> bool:
    vs = [np.asarray(v, dtype=np.uint8) % 2 for v in vectors]
    t = np.asarray(target, dtype=np.uint8) % 2
    if not vs:
        return not t.any()
    return rank_xor_basis(np.vstack(vs)) == rank_xor_basis(np.vstack(vs + [t]))


def mod2(m) -> np.ndarray:
    return (np.asarray(m, dtype=np.int64) % 2).astype(np.uint8)


def mul(*mats) -> np.ndarray:
    out = np.asarray(mats[0], dtype=np.int64)
    for m in mats[1:]:
        out = (out @ np.asarray(m, dtype=np.int64)) % 2
    return out.astype(np.uint8)


# --- homology ranks -------------------------------------------------------------------


def homology_dims(gradings, d) -> dict[Fraction, int]:
    """dim H_q = (#gens at q - rank d|_q) - rank d|_{q+1} from the whole matrix."""
    d = np.asarray(d, dtype=np.uint8)
    out = {}
    for q in sorted(set(gradings)):
        cols = [k for k, g in enumerate(gradings) if g == q]
        above = [k for k, g in enumerate(gradings) if g == q + 1]
        r_here = rank_xor_basis(d[:, cols].T) if cols else 0
        r_above = rank_xor_basis(d[:, above].T) if above else 0
        out[q] = len(cols) - r_here - r_above
    return out


def total_homology(d) -> int:
    d = np.asarray(d, dtype=np.uint8)
    return d.shape[0] - 2 * rank_xor_basis(d)


def induced_rank(f, d_src, d_tgt, cols=None) -> int:
    """Rank of f_* as rank[f Z | B] - rank[B] with Z the cycles of the source.

    ``cols`` restricts the source to the span of those generators (one grading).
    """
    f, d_src, d_tgt = (np.asarray(x, dtype=np.uint8) for x in (f, d_src, d_tgt))
    if cols is None:
        cols = list(range(d_src.shape[1]))
    local = _nullspace(d_src[:, cols]) if cols else []
    if not local:
        return 0
    cycles = np.zeros((len(local), d_src.shape[1]), dtype=np.uint8)
    for k, v in enumerate(local):
        cycles[k, cols] = v
    fz = mul(f, cycles.T)
    both = np.hstack([fz, d_tgt]) if d_tgt.size else fz
    return rank_xor_basis(both.T) - (rank_xor_basis(d_tgt.T) if d_tgt.size else 0)


def _nullspace(m) -> list[np.ndarray]:
    """Kernel basis by brute Gauss-Jordan on a copy."""
    m = np.asarray(m, dtype=np.uint8).copy() % 2
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        hit = [i for i in range(r, rows) if m[i, c]]
        if not hit:
            continue
        m[[r, hit[0]]] = m[[hit[0], r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for fc in free:
        v = np.zeros(cols, dtype=np.uint8)
        v[fc] = 1
        for k, pc in enumerate(pivots):
            v[pc] = m[k, fc]
        out.append(v)
    return out


def acyclic(d) -> bool:
    return total_homology(d) == 0


def cone_dense(f, d_src, d_tgt) -> np.ndarray:
    """Cone differential on target + source: [[d_tgt, f], [0, d_src]]."""
    nt, ns = d_tgt.shape[0], d_src.shape[0]
    out = np.zeros((nt + ns, nt + ns), dtype=np.uint8)
    out[:nt, :nt] = d_tgt
    out[:nt, nt:] = f
    out[nt:, nt:] = d_src
    return out


def quasi_iso(f, d_src, d_tgt) -> bool:
    """A chain map is a quasi-isomorphism iff its cone is acyclic."""
    return acyclic(cone_dense(f, d_src, d_tgt))


# --- triangles ---------------------------------------------------------------------------


def triangle_dense(inst):
    d = [inst.complexes[i].differential.to_dense() for i in range(3)]
    f = [m.to_dense() for m in inst.maps]
    h = [m.to_dense() for m in inst.homotopies]
    g = [np.array(inst.complexes[i].basis.gradings, dtype=object) for i in range(3)]
    return d, f, h, g


def _respects(m, g_tgt, g_src, shift) -> bool:
    rows, cols = np.nonzero(m)
    return all(g_tgt[i] == g_src[j] + shift for i, j in zip(rows, cols))


def triangle_checks(inst) -> dict[str, bool]:
    """Every hypothesis and conclusion of the triangle detection criterion, recomputed densely."""
    d, f, h, g = triangle_dense(inst)
    deg = list(inst.map_degrees)
    out = {}
    out["complexes"] = all(not mul(d[i], d[i]).any() and _respects(d[i], g[i], g[i], -1) for i in range(3))
    out["chain_maps"] = all(
        not (mul(d[(i - 1) % 3], f[i]) ^ mul(f[i], d[i])).any()
        and _respects(f[i], g[(i - 1) % 3], g[i], deg[i])
        and _respects(h[i], g[(i - 2) % 3], g[i], deg[i] + deg[(i - 1) % 3] + 1)
        for i in range(3))
    out["hypothesis1"] = all(
        not (mul(d[(i - 2) % 3], h[i]) ^ mul(h[i], d[i]) ^ mul(f[(i - 1) % 3], f[i])).any() for i in range(3))
    psi = [mul(h[(i - 1) % 3], f[i]) ^ mul(f[(i - 2) % 3], h[i]) for i in range(3)]
    out["hypothesis2"] = all(
        not (mul(d[i], psi[i]) ^ mul(psi[i], d[i])).any() and quasi_iso(psi[i], d[i], d[i]) for i in range(3))
    exact = {}
    for i in range(3):
        # exact at C_i for C_{i+1} -> C_i -> C_{i-1}
        a = induced_rank(f[(i + 1) % 3], d[(i + 1) % 3], d[i])
        b = induced_rank(f[i], d[i], d[(i - 1) % 3])
        comp = induced_rank(mul(f[i], f[(i + 1) % 3]), d[(i + 1) % 3], d[(i - 1) % 3])
        exact[i] = comp == 0 and a == total_homology(d[i]) - b
    out["exact"] = exact
    cone = {}
    for i in range(3):
        prev = (i - 1) % 3
        cd = cone_dense(f[prev], d[prev], d[(prev - 1) % 3])
        phi = np.vstack([h[i], f[i]])
        cone[i] = (not (mul(cd, phi) ^ mul(phi, d[i])).any()) and quasi_iso(phi, d[i], cd)
    out["cone"] = cone
    return out


# --- link invariants from Kauffman states --------------------------------------------------


def _strand_orientation(pd):
    """For each crossing, (in_edge, out_edge) of the over strand.

    The under strand of ``(a, b, c, d)`` runs a -> c.  Over-strand directions
    are propagated along components: each edge starts at exactly one of its
    two occurrences and ends at the other.
    """
    occ: dict[int, list[tuple[int, int]]] = {}
    for x, cr in enumerate(pd):
        for slot, e in enumerate(cr):
            occ.setdefault(e, []).append((x, slot))
    ends: dict[tuple[int, int], str] = {}   # (crossing, slot) -> "in" | "out"
    for x, cr in enumerate(pd):
        ends[(x, 0)] = "in"
        ends[(x, 2)] = "out"
    changed = True
    while changed:
        changed = False
        for e, places in occ.items():
            if len(places) != 2:
                raise ValueError(f"edge {e} does not appear exactly twice")
            p, q = places
            for u, v in ((p, q), (q, p)):
                if u in ends and v not in ends:
                    ends[v] = "out" if ends[u] == "in" else "in"
                    changed = True
        for x in range(len(pd)):
            for s, t in ((1, 3), (3, 1)):
                if (x, s) in ends and (x, t) not in ends:
                    ends[(x, t)] = "out" if ends[(x, s)] == "in" else "in"
                    changed = True
    return ends


def crossing_signs(pd) -> list[int]:
    """+1 when the over strand runs d -> b (right-handed), -1 when b -> d."""
    ends = _strand_orientation(pd)
    return [1 if ends[(x, 3)] == "in" else -1 for x in range(len(pd))]


def _circles(pd, choice) -> int:
    parent: dict[int, int] = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def join(a, b):
        parent[find(a)] = find(b)

    for (a, b, c, d), s in zip(pd, choice):
        if s == "A":
            join(a, b)
            join(c, d)
        else:
            join(a, d)
            join(b, c)
    return len({find(e) for cr in pd for e in cr})


def kauffman_determinant(pd) -> int:
    """|<D>| at A = exp(i pi / 4); there the loop value vanishes, so only one-circle states count."""
    A = cmath.exp(1j * math.pi / 4)
    total = 0j
    for choice in itertools.product("AB", repeat=len(pd)):
        if _circles(pd, choice) == 1:
            total += A ** (choice.count("A") - choice.count("B"))
    value = abs(total)
    assert abs(value - round(value)) < 1e-9
    return int(round(value))


def traczyk_signature(pd) -> int:
    """sigma = s_A - n_+ - 1 for reduced alternating diagrams."""
    s_a = _circles(pd, "A" * len(pd))
    n_plus = sum(1 for s in crossing_signs(pd) if s > 0)
    return s_a - n_plus - 1


def link_oracle(pd) -> tuple[int, int, int]:
    det = kauffman_determinant(pd)
    # a nonzero determinant means a nondegenerate form
    assert det != 0
    return traczyk_signature(pd), 0, det


# --- lens space correction terms from plumbings ----------------------------------------------


def hirzebruch_jung(p: int, q: int) -> list[int]:
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return out


def plumbing_d(p: int, q: int) -> list[Fraction]:
    """max (K^2 + n) / 4 over characteristic K, per class, on the negative linear plumbing of p/q.

    The plumbing bounds the lens space with the orientation opposite to the
    one used by the recursive formula, so this multiset is minus the other.
    """
    weights = hirzebruch_jung(p, q)
    n = len(weights)
    Q = [[0] * n for _ in range(n)]
    for i, a in enumerate(weights):
        Q[i][i] = -a
        if i + 1 < n:
            Q[i][i + 1] = Q[i + 1][i] = 1
    Qinv = _inverse(Q)
    best: dict[tuple, Fraction] = {}
    ranges = [range(-a - 2, a + 3) for a in weights]
    for K in itertools.product(*ranges):
        if any((k - a) % 2 for k, a in zip(K, weights)):
            continue
        x = [sum(Qinv[i][j] * K[j] for j in range(n)) for i in range(n)]
        sq = sum(K[i] * x[i] for i in range(n))
        key = tuple(v % 2 for v in x)
        val = (sq + n) / 4
        if key not in best or val > best[key]:
            best[key] = val
    assert len(best) == p
    return sorted(best.values())


def _inverse(Q):
    n = len(Q)
    m = [[Fraction(Q[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                fac = m[r][c]
                m[r] = [a - fac * b for a, b in zip(m[r], m[c])]
    return [row[n:] for row in m]


# --- random valid packages ------------------------------------------------------------------


# each piece: list of (sector, grading offset) and list of (block, src index, tgt index)
PIECES = {
    "o": ([("o", 0)], []),
    "s": ([("s", 0)], []),
    "u": ([("u", 0)], []),
    "oo": ([("o", 1), ("o", 0)], [("d_oo", 0, 1)]),
    "os": ([("o", 1), ("s", 0)], [("d_os", 0, 1)]),
    "uo": ([("u", 1), ("o", 0)], [("d_uo", 0, 1)]),
    "us": ([("u", 1), ("s", 0)], [("d_us", 0, 1)]),
    "ss": ([("s", 1), ("s", 0)], [("bar_ss", 0, 1)]),
    "su": ([("s", 0), ("u", 0)], [("bar_su", 0, 1)]),
    "uu": ([("u", 1), ("u", 0)], [("bar_uu", 0, 1)]),
}


def random_package(rng: np.random.Generator, n_pieces: int, spread: int = 3, scramble: int = 6):
    """Direct sum of small valid pieces, then a random sector- and grading-preserving change of basis."""
    from realfloer.floer import DIFFERENTIAL_BLOCKS, SECTORS, FloerPackage, PackageGenerator
    from realfloer.gf2 import BitMatrix

    gens = []
    pairs = []
    names = sorted(PIECES)
    for k in range(n_pieces):
        kind = names[int(rng.integers(len(names)))]
        base = int(rng.integers(-spread, spread + 1))
        layout, blocks = PIECES[kind]
        ids = []
        for sector, off in layout:
            gid = f"{sector}{len(gens)}"
            gens.append(PackageGenerator(gid, sector, base + off))
            ids.append(gid)
        pairs += [(b, ids[s], ids[t]) for b, s, t in blocks]
    pkg = FloerPackage.from_pairs("random", gens, _group(pairs))
    # change of basis within each (sector, grading) class
    mats = {}
    P = {}
    Pinv = {}
    for s in SECTORS:
        n = pkg.sizes[s]
        p, pinv = np.eye(n, dtype=np.uint8), np.eye(n, dtype=np.uint8)
        groups: dict[Fraction, list[int]] = {}
        for k, g in enumerate(pkg.sector[s]):
            groups.setdefault(g.grading, []).append(k)
        big = [v for v in groups.values() if len(v) > 1]
        moves = []
        for _ in range(scramble if big else 0):
            grp = big[int(rng.integers(len(big)))]
            i, j = rng.choice(grp, size=2, replace=False)
            moves.append((int(i), int(j)))
        for i, j in moves:
            p[i] ^= p[j]
        for i, j in reversed(moves):
            pinv[i] ^= pinv[j]
        P[s], Pinv[s] = p, pinv
    for name, (src, tgt) in DIFFERENTIAL_BLOCKS.items():
        m = pkg.blocks[name].to_dense()
        mats[name] = BitMatrix.from_dense(mul(P[tgt], m, Pinv[src])) if m.size else pkg.blocks[name]
    return FloerPackage("random", pkg.generators, mats)


def _group(pairs):
    out: dict[str, list] = {}
    for b, s, t in pairs:
        out.setdefault(b, []).append((s, t))
    return out
