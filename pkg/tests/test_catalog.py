from __future__ import annotations

from fractions import Fraction

import pytest

from realfloer.catalog import DEFAULT_WINDOW, catalog_names, load_catalog
from realfloer.complexes import homology
from realfloer.floer import assemble, upsilon_maps, verify_package
from realfloer.link import GoeritzPresentation, link_invariants
from realfloer.towers import recognize_towers
from realfloer.triangle import SkeinTriple
from skein_checks import hopf_claims, trefoil_claims, unknots_claims

PACKAGES = ["U1", "U2", "Hopf", "RHT", "synthetic-mixed", "Kpq(3,1)", "Kpq(5,2)", "Kpq(7,2)"]


def test_names_resolve():
    for name in catalog_names():
        name = name.replace("(p,q)", "(5,2)").replace("(p)", "(3)")
        assert load_catalog(name) is not None


def test_unknown_names():
    with pytest.raises(KeyError, match="unknown catalog entry"):
        load_catalog("nope")
    with pytest.raises(KeyError):
        load_catalog("link-Kpq(9,2)")
    with pytest.raises(ValueError):
        load_catalog("Kpq(4,2)")
    with pytest.raises(ValueError):
        load_catalog("chain-lens(1)")


@pytest.mark.parametrize("name", PACKAGES)
def test_packages_verify(name):
    assert verify_package(load_catalog(name)).ok


@pytest.mark.parametrize("name,p", [("Kpq(3,1)", 3), ("Kpq(5,2)", 5), ("Hopf", 2), ("RHT", 3)])
def test_lens_packages_have_one_tower_per_label(name, p):
    pkg = load_catalog(name)
    assert len(pkg.spinc_labels()) == p and pkg.determinant == p
    c = assemble(pkg, "bar")
    towers = recognize_towers(homology(c), upsilon_maps(pkg, "bar", c)[0])
    assert sorted(t.spinc for t in towers) == sorted(pkg.spinc_labels())
    assert all(t.kind == "bi-infinite" for t in towers)


def test_unlink_is_two_towers_with_determinant_zero():
    u2 = load_catalog("U2")
    assert u2.determinant == 0 and u2.components == 2
    c = assemble(u2, "check")
    towers = recognize_towers(homology(c), upsilon_maps(u2, "check", c)[0])
    assert len(towers) == 2
    assert abs(towers[0].anchor_grading - towers[1].anchor_grading) == 1


def test_triples_are_triples():
    for name in ("triple-unknots", "triple-hopf", "triple-trefoil"):
        t = load_catalog(name)
        assert isinstance(t, SkeinTriple)
        for i in range(3):
            assert t.maps[i].source is t.packages[i] or t.maps[i].source == t.packages[i]


def test_unknot_triple_claims():
    for flavor in ("bar", "check"):
        assert all(unknots_claims(flavor).values())


def test_hopf_triple_claims():
    for flavor in ("bar", "check"):
        assert all(hopf_claims(flavor).values())


def test_trefoil_triple_claims():
    for flavor in ("bar", "check"):
        assert all(trefoil_claims(flavor).values())


def test_unknot_triple_pairing_data():
    t = load_catalog("triple-unknots")
    assert t.pairing.a1[0] + t.pairing.a1[-1] == 1
    assert t.correction and not t.second


def test_link_entries():
    assert load_catalog("link-unknot") == GoeritzPresentation((), 0, 1)
    inv = link_invariants(load_catalog("link-Kpq(5,2)").goeritz())
    assert inv.determinant == 5


def test_chain_records():
    rec = load_catalog("chain-lens(5)")
    assert rec.source == "Kpq(5,1)" and rec.target == "U1"
    assert len(rec.spinc) == 5
    assert all(isinstance(c, Fraction) for _, _, c in rec.spinc)


def test_window_argument():
    w = DEFAULT_WINDOW.widened(2)
    assert load_catalog("U1", w).window == w
