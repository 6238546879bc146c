from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import homology_dims, induced_rank, mul, total_homology
from realfloer.catalog import load_catalog
from realfloer.complexes import (ChainMap, Generator, GradedBasis, GradedComplex, RefusalError, Window, homology,
                                 induced_map_on_homology, mapping_cone, verify_complex, verify_homotopy_identity)
from realfloer.floer import assemble
from realfloer.gf2 import BitMatrix
from realfloer.triangle import generate_instance, random_complex, random_chain_map

seeds = st.integers(0, 2 ** 32 - 1)


def basis(*gradings, prefix="g"):
    return GradedBasis(Generator(f"{prefix}{k}", q) for k, q in enumerate(gradings))


def rand_complex(seed, max_pairs=4, max_singles=4, prefix="c"):
    rng = np.random.default_rng(seed)
    return random_complex(rng, prefix, int(rng.integers(0, max_pairs + 1)), int(rng.integers(0, max_singles + 1)))


def test_basis_rejects_duplicates_and_non_integral_spread():
    with pytest.raises(ValueError):
        GradedBasis([Generator("a", 0), Generator("a", 1)])
    with pytest.raises(ValueError):
        GradedBasis([Generator("a", 0), Generator("b", Fraction(1, 2))])
    # different labels may sit in different cosets
    GradedBasis([Generator("a", 0, "x"), Generator("b", Fraction(1, 2), "y")])


def test_window_width_and_interior():
    with pytest.raises(ValueError):
        Window.checked(0, 2)
    w = Window.parse("-8..8")
    assert w.interior(-7) and w.interior(7) and not w.interior(8)


def test_zero_differential_passes():
    assert verify_complex(GradedComplex(basis(0, 1, 1))).ok


def test_identity_differential_reports_entry_00():
    c = GradedComplex(basis(0), BitMatrix.identity(1))
    rep = verify_complex(c)
    assert not rep.ok
    assert any("d^2: entry (0, 0)" in v for v in rep.violations)


def test_catalog_u1_check_complex_passes():
    assert verify_complex(assemble(load_catalog("U1"), "check")).ok


def test_homology_of_zero_differential_is_everything():
    h = homology(GradedComplex(basis(0, 0, 2)))
    assert h.dims == {Fraction(0): 2, Fraction(2): 1}


def test_homology_of_a_cancelling_pair_vanishes():
    c = GradedComplex(basis(1, 0), BitMatrix.from_entries(2, 2, [(1, 0)]))
    assert homology(c).total() == 0


def test_homology_refuses_invalid_complex():
    with pytest.raises(RefusalError):
        homology(GradedComplex(basis(0), BitMatrix.identity(1)))


@settings(max_examples=120, deadline=None)
@given(seeds)
def test_homology_matches_whole_matrix_oracle(seed):
    c = rand_complex(seed, 4, 4)
    assert len(c) <= 12
    h = homology(c)
    want = homology_dims(c.basis.gradings, c.differential.to_dense())
    assert {q: n for q, n in h.dims.items()} == want


def test_representatives_are_cycles_and_independent():
    c = rand_complex(99, 4, 4)
    h = homology(c)
    d = c.differential.to_dense()
    for q, piece in h.pieces.items():
        for col in piece.reps.columns():
            v = np.zeros(len(c), dtype=np.uint8)
            v[[piece.indices[i] for i in col]] = 1
            assert not mul(d, v.reshape(-1, 1)).any()


def test_cone_of_zero_and_identity():
    c = rand_complex(5)
    zero = ChainMap.zero(c, c)
    assert homology(mapping_cone(zero)).total() == 2 * homology(c).total()
    assert homology(mapping_cone(ChainMap.identity(c))).total() == 0


def test_cone_refuses_non_chain_map():
    c = GradedComplex(basis(1, 0), BitMatrix.from_entries(2, 2, [(1, 0)]))
    bad = ChainMap(c, c, BitMatrix.from_entries(2, 2, [(0, 0)]))
    with pytest.raises(RefusalError):
        mapping_cone(bad)


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(-1, 1))
def test_cone_is_a_complex_and_les_bookkeeping(seed, degree):
    rng = np.random.default_rng(seed)
    a = random_complex(rng, "a", int(rng.integers(0, 3)), int(rng.integers(0, 4)))
    b = random_complex(rng, "b", int(rng.integers(0, 3)), int(rng.integers(0, 4)))
    f = ChainMap(a, b, random_chain_map(rng, a, b, degree), degree)
    cone = mapping_cone(f)
    assert verify_complex(cone).ok
    hc = homology(cone)
    fa, da, db = f.matrix.to_dense(), a.differential.to_dense(), b.differential.to_dense()
    ha = homology_dims(a.basis.gradings, da)
    hb = homology_dims(b.basis.gradings, db)
    for q in set(hc.dims) | set(hb) | {g + degree + 1 for g in ha}:
        s_in = q - degree          # source grading mapping into target grading q
        s_out = q - degree - 1     # source classes that land in the cone at q
        r_in = induced_rank(fa, da, db, [k for k, g in enumerate(a.basis.gradings) if g == s_in])
        r_out = induced_rank(fa, da, db, [k for k, g in enumerate(a.basis.gradings) if g == s_out])
        coker = hb.get(q, 0) - r_in
        ker = ha.get(s_out, 0) - r_out
        assert hc.dim(q) == coker + ker


def test_induced_identity_and_null_homotopic_maps():
    c = rand_complex(17, 3, 4)
    h = homology(c)
    ind = induced_map_on_homology(ChainMap.identity(c), h, h)
    assert all(blk == BitMatrix.identity(blk.rows) for blk in ind.blocks.values())
    rng = np.random.default_rng(0)
    n = len(c)
    g = np.zeros((n, n), dtype=np.uint8)
    gr = c.basis.gradings
    for i in range(n):
        for j in range(n):
            if gr[i] == gr[j] + 1 and rng.integers(2):
                g[i, j] = 1
    d = c.differential.to_dense()
    f = BitMatrix.from_dense(mul(d, g) ^ mul(g, d))
    assert induced_map_on_homology(ChainMap(c, c, f), h, h).is_zero()


def test_homotopy_identity_examples():
    c = GradedComplex(basis(0))
    zero = ChainMap.zero(c, c)
    assert verify_homotopy_identity(zero, zero, ChainMap.zero(c, c, 1)).ok
    ident = ChainMap.identity(c)
    assert not verify_homotopy_identity(ident, ident, ChainMap.zero(c, c, 1)).ok
    t = generate_instance(3)
    for i in range(3):
        assert verify_homotopy_identity(t.f(i), t.f(i - 1), t.H(i)).ok


def test_homotopy_identity_shape_error():
    a, b = GradedComplex(basis(0)), GradedComplex(basis(0, 0))
    with pytest.raises(ValueError):
        verify_homotopy_identity(ChainMap.zero(a, a), ChainMap.zero(b, b), ChainMap.zero(a, a, 1))


def test_total_homology_oracle_agrees_on_cones():
    for seed in range(10):
        c = rand_complex(seed)
        assert homology(c).total() == total_homology(c.differential.to_dense())
