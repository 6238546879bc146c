"""Link signature, nullity and determinant from a Goeritz form, and the
branched-double-cover numerics of surface cobordisms.

All arithmetic is exact (integers and fractions).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "GoeritzPresentation",
    "LinkInvariants",
    "CobordismData",
    "link_invariants",
    "pd_to_goeritz",
    "crossing_signs",
    "inertia",
    "integer_determinant",
    "cobordism_numerics",
    "iota",
    "iota_punctured",
    "cobordism_iota",
    "map_degree",
    "expanded_degree",
    "blowup_gradings",
]


@dataclass(frozen=True)
class GoeritzPresentation:
    goeritz_matrix: tuple[tuple[int, ...], ...]
    correction_term: int = 0
    components: int = 1

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.goeritz_matrix)
        object.__setattr__(self, "goeritz_matrix", m)
        n = len(m)
        for r, row in enumerate(m):
            if len(row) != n:
                raise ValueError(f"Goeritz matrix row {r} has {len(row)} entries, expected {n}")
        if self.components < 1:
            raise ValueError("a link has at least one component")


@dataclass(frozen=True)
class LinkInvariants:
    signature: int
    nullity: int
    determinant: int


def inertia(matrix: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix, by congruence."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # add row/col j to row/col i: the new diagonal entry is 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        row = a[piv][:]
        for i in active:
            if row[i] == 0:
                continue
            f = row[i] / d
            for k in active:
                a[i][k] -= f * row[k]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def integer_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def link_invariants(g: GoeritzPresentation) -> LinkInvariants:
    m = g.goeritz_matrix
    n = len(m)
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise ValueError(f"Goeritz matrix not symmetric at ({i}, {j})")
    pos, neg, zero = inertia(m)
    return LinkInvariants(pos - neg - g.correction_term, zero, abs(integer_determinant(m)))


# --- planar diagram codes -------------------------------------------------
# X[a, b, c, d]: slots counter-clockwise starting from the incoming
# under-strand, so the under-strand runs a -> c and the over-strand joins b, d.


def _occurrences(crossings):
    occ: dict[int, list[tuple[int, int]]] = {}
    for x, cr in enumerate(crossings):
        if len(cr) != 4:
            raise ValueError(f"crossing {x} has {len(cr)} labels, expected 4")
        for k, e in enumerate(cr):
            occ.setdefault(e, []).append((x, k))
    for e, where in occ.items():
        if len(where) != 2:
            raise ValueError(f"edge label {e} appears {len(where)} times, expected 2")
    return occ


def _over_entry(crossings, occ) -> list[int]:
    """Slot (1 or 3) where the over-strand enters, per crossing; alternating only."""
    entry: list[int | None] = [None] * len(crossings)
    for e, where in occ.items():
        under = [(x, k) for x, k in where if k in (0, 2)]
        over = [(x, k) for x, k in where if k in (1, 3)]
        if len(under) != 1 or len(over) != 1:
            raise ValueError(f"diagram is not alternating at edge {e}")
        (_, ku), (y, m) = under[0], over[0]
        # an edge entering one crossing as the under-strand leaves the other over it
        slot_in = (m + 2) % 4 if ku == 0 else m
        if entry[y] is not None and entry[y] != slot_in:
            raise ValueError(f"inconsistent orientation of the over-strand at crossing {y}")
        entry[y] = slot_in
    return [int(s) for s in entry]


def crossing_signs(crossings: Sequence[Sequence[int]]) -> list[int]:
    """+1 when the over-strand runs from slot 3 to slot 1."""
    crossings = [tuple(c) for c in crossings]
    occ = _occurrences(crossings)
    return [1 if s == 3 else -1 for s in _over_entry(crossings, occ)]


def _components(crossings) -> int:
    parent: dict[int, int] = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b, c, d in crossings:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    return len({find(e) for cr in crossings for e in cr})


def pd_to_goeritz(crossings: Sequence[Sequence[int]], shade: int = 0) -> GoeritzPresentation:
    """Goeritz form and correction term of an alternating diagram.

    ``shade`` picks which of the two checkerboard colours spans the surface.
    """
    crossings = [tuple(int(v) for v in c) for c in crossings]
    if not crossings:
        return GoeritzPresentation((), 0, 1)
    occ = _occurrences(crossings)
    over_in = _over_entry(crossings, occ)

    def other(x, k):
        a, b = occ[crossings[x][k]]
        return b if a == (x, k) else a

    # faces: from corner (x, k) leave along slot k+1 and arrive at corner (y, m)
    region: dict[tuple[int, int], int] = {}
    nreg = 0
    for x in range(len(crossings)):
        for k in range(4):
            if (x, k) in region:
                continue
            cur = (x, k)
            while cur not in region:
                region[cur] = nreg
                cur = other(cur[0], (cur[1] + 1) % 4)
            if cur != (x, k):
                raise ValueError("diagram faces do not close up")
            nreg += 1
    # checkerboard colouring: corners k and k+1 at a crossing differ
    adj: dict[int, set[int]] = {r: set() for r in range(nreg)}
    for x in range(len(crossings)):
        for k in range(4):
            a, b = region[(x, k)], region[(x, (k + 1) % 4)]
            adj[a].add(b)
            adj[b].add(a)
    colour = {0: 0}
    queue = [0]
    while queue:
        r = queue.pop()
        for s in adj[r]:
            if s not in colour:
                colour[s] = 1 - colour[r]
                queue.append(s)
            elif colour[s] == colour[r]:
                raise ValueError("diagram is not checkerboard colourable")
    if len(colour) != nreg:
        raise ValueError("diagram is split or disconnected")
    white = sorted(r for r in range(nreg) if colour[r] == shade)
    pos = {r: i for i, r in enumerate(white)}
    g = [[0] * len(white) for _ in white]
    mu = 0
    for x, cr in enumerate(crossings):
        corners = (1, 3) if colour[region[(x, 1)]] == shade else (0, 2)
        eta = -1 if corners == (1, 3) else 1
        ins = {0, over_in[x]}

        def both_same(k):
            return ((k in ins) == ((k + 1) % 4 in ins))

        if not both_same(corners[0]):
            mu += eta
        i, j = pos[region[(x, corners[0])]], pos[region[(x, corners[1])]]
        if i != j:
            g[i][j] -= eta
            g[j][i] -= eta
    for i in range(len(white)):
        g[i][i] = -sum(g[i][j] for j in range(len(white)) if j != i)
    reduced = tuple(tuple(row[1:]) for row in g[1:])
    return GoeritzPresentation(reduced, mu, _components(crossings))


# --- cobordism numerics ---------------------------------------------------


@dataclass(frozen=True)
class CobordismData:
    """Numerics of a surface cobordism from ``source`` (K-) to ``target`` (K+)."""

    b0_sigma: int
    b1_sigma: int
    self_intersection: int
    source_inv: LinkInvariants
    target_inv: LinkInvariants
    c1_square: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c1_square", Fraction(self.c1_square))

    def validate(self) -> None:
        if self.self_intersection % 2:
            raise ValueError(f"inconsistent orientation data: odd self-intersection {self.self_intersection}")
        if self.b0_sigma < 0 or self.b1_sigma < 0:
            raise ValueError("Betti numbers of the surface must be non-negative")


def _sigma_w(c: CobordismData) -> int:
    return c.target_inv.signature - c.source_inv.signature - c.self_intersection // 2


def cobordism_numerics(c: CobordismData) -> dict[str, int]:
    c.validate()
    sigma = _sigma_w(c)
    chi = c.b1_sigma - c.b0_sigma
    out = {"sigma_W": sigma, "chi_W": chi}
    # b1(W) = 0 and b+ = (chi + sigma)/2 need a connected surface between
    # links whose covers are rational homology spheres
    if c.b0_sigma == 1 and c.source_inv.nullity == 0 and c.target_inv.nullity == 0:
        twice = chi + sigma
        if twice % 2:
            raise ValueError(f"inconsistent cobordism data: chi + sigma = {twice} is odd")
        out["b1_W"] = 0
        out["b_plus_W"] = twice // 2
    return out


def iota(chi_W: int, sigma_W: int, b1_plus: int, b1_minus: int) -> Fraction:
    return Fraction(chi_W + sigma_W + b1_plus - b1_minus, 2)


def iota_punctured(iota_sigma, n: int) -> Fraction:
    """Index defect over an n-punctured sphere: minus (n - 1) - iota_sigma."""
    return Fraction(iota_sigma) - (n - 1)


def cobordism_iota(c: CobordismData) -> Fraction:
    nums = cobordism_numerics(c)
    return iota(nums["chi_W"], nums["sigma_W"], c.target_inv.nullity, c.source_inv.nullity)


def expanded_degree(c: CobordismData) -> Fraction:
    """Degree written directly in link quantities."""
    c.validate()
    s = c.target_inv.signature - c.source_inv.signature - Fraction(c.self_intersection, 2)
    return (Fraction(1, 8) * (c.c1_square - s)
            - Fraction(1, 2) * (c.b1_sigma - c.b0_sigma + s + c.target_inv.nullity - c.source_inv.nullity))


def map_degree(c1_square, sigma_W, iota_val, data: CobordismData | None = None) -> Fraction:
    deg = Fraction(1, 8) * (Fraction(c1_square) - sigma_W) - Fraction(iota_val)
    if data is not None:
        alt = expanded_degree(data)
        if alt != deg:
            raise ValueError(f"inconsistent cobordism data: degree {deg} from the compact form, "
                             f"{alt} from link quantities")
    return deg


def blowup_gradings(k: int, i: int, mu: int = 0) -> tuple[int, int]:
    """Expected dimensions for the two blow-up moduli families.

    Returns ``(first, second)`` where ``first`` is the family over the
    unlink-to-unknot end and ``second`` the family over the two-towered end
    (``mu`` picks the tower).
    """
    if mu not in (0, 1):
        raise ValueError("mu must be 0 or 1")
    first = -k * (k - 1) // 2 - i - (1 if i < 0 else 0)
    second = -mu - k * (k + 1) // 2 - i + (1 if i >= 0 else 0)
    return first, second
