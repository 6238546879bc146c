from __future__ import annotations

from fractions import Fraction

import pytest

from realfloer.catalog import DEFAULT_WINDOW, load_catalog
from realfloer.complexes import ChainMap, Generator, GradedBasis, GradedComplex, Window, homology
from realfloer.floer import FLAVORS, assemble, upsilon_maps
from realfloer.gf2 import BitMatrix
from realfloer.towers import (BI_INFINITE, BOUNDED_ABOVE, BOUNDED_BELOW, UnrecognizedModule, recognize_towers,
                              verify_Rn_relations)

CATALOG = ["U1", "U2", "Hopf", "RHT", "synthetic-mixed", "Kpq(3,1)", "Kpq(5,2)"]


def towers(p, flavor):
    c = assemble(p, flavor)
    return recognize_towers(homology(c), upsilon_maps(p, flavor, c)[0])


def test_u1_three_shapes():
    p = load_catalog("U1")
    assert [(t.kind, t.anchor_grading) for t in towers(p, "bar")] == [(BI_INFINITE, 0)]
    assert [(t.kind, t.anchor_grading) for t in towers(p, "hat")] == [(BOUNDED_BELOW, 0)]
    assert [(t.kind, t.anchor_grading) for t in towers(p, "check")] == [(BOUNDED_ABOVE, 0)]


def test_u2_check_two_bounded_above_towers_one_apart():
    ts = towers(load_catalog("U2"), "check")
    assert [t.kind for t in ts] == [BOUNDED_ABOVE, BOUNDED_ABOVE]
    assert abs(ts[0].anchor_grading - ts[1].anchor_grading) == 1


def test_zero_homology_gives_no_towers():
    c = GradedComplex(GradedBasis([Generator("x", 1), Generator("y", 0)]), BitMatrix.from_entries(2, 2, [(1, 0)]),
                      Window(-4, 4))
    assert recognize_towers(homology(c), ChainMap.zero(c, c, -1)) == []


def test_isolated_class_is_unrecognized():
    c = GradedComplex(GradedBasis([Generator("x", 0)]), None, Window(-4, 4))
    with pytest.raises(UnrecognizedModule) as e:
        recognize_towers(homology(c), ChainMap.zero(c, c, -1))
    assert e.value.gradings == [Fraction(0)]


@pytest.mark.parametrize("name", CATALOG)
def test_upsilon_is_the_anchor_decrementing_shift(name):
    p = load_catalog(name)
    c = assemble(p, "bar")
    h = homology(c)
    ups = upsilon_maps(p, "bar", c)[0]
    ind = ups.matrix.to_dense()
    ids = c.basis.ids
    for q in c.interior_gradings():
        if not c.is_interior(q - 1):
            continue
        for rep in h.representatives(q):
            # the image of each tower generator is the tower generator one step down
            img = {ids[i] for i in range(len(ids)) if sum(ind[i, ids.index(g)] for g in rep) % 2}
            assert img and all(c.basis[ids.index(g)].grading == q - 1 for g in img)
            assert len(img) == len(rep)


@pytest.mark.parametrize("name", CATALOG)
@pytest.mark.parametrize("flavor", FLAVORS)
def test_window_stability(name, flavor):
    p = load_catalog(name)
    wide = p.replace(window=DEFAULT_WINDOW.widened(1))
    a = [(t.kind, t.anchor_grading, t.spinc) for t in towers(p, flavor)]
    b = [(t.kind, t.anchor_grading, t.spinc) for t in towers(wide, flavor)]
    assert a == b


@pytest.mark.parametrize("name", CATALOG)
@pytest.mark.parametrize("flavor", FLAVORS)
def test_dimension_bookkeeping(name, flavor):
    p = load_catalog(name)
    c = assemble(p, flavor)
    h = homology(c)
    ts = recognize_towers(h, upsilon_maps(p, flavor, c)[0])
    for q, n in h.interior_dims().items():
        # a tower lives only on its own coset of gradings
        assert n == sum(1 for t in ts if t.support[0] <= q <= t.support[1] and (q - t.support[0]).denominator == 1)


def test_rn_relations():
    p = load_catalog("U1")
    c = assemble(p, "bar")
    assert verify_Rn_relations(upsilon_maps(p, "bar", c)).ok
    u2 = load_catalog("U2")
    for flavor in FLAVORS:
        c = assemble(u2, flavor)
        acts = upsilon_maps(u2, flavor, c)
        assert len(acts) == 2 and verify_Rn_relations(acts).ok


def test_rn_relations_flag_degree_zero_entry():
    u2 = load_catalog("U2")
    c = assemble(u2, "bar")
    u1, u2m = upsilon_maps(u2, "bar", c)
    # add a degree-zero entry: a generator mapping to itself
    bad = ChainMap(c, c, u2m.matrix.flip(0, 0), Fraction(-1), "upsilon2")
    rep = verify_Rn_relations([u1, bad])
    assert not rep.ok
    assert any("grading" in v for v in rep.violations)


def test_rn_relations_need_an_action():
    with pytest.raises(ValueError):
        verify_Rn_relations([])
