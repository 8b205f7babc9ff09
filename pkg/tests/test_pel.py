import warnings
from fractions import Fraction

import pytest

from pelcrystal import (
    Embedding,
    PelDatum,
    assemble_global_polygon,
    build_embeddings,
    cartier_label,
    frobenius_chain,
    mass_formula,
    pullback_chain,
    summand_table,
)
from pelcrystal import pel
from pelcrystal.errors import DegreeZero, NotInDistinguishedOrbit, NotPrime


def test_datum_validation():
    with pytest.raises(DegreeZero):
        PelDatum(3, 2, (1,), 2)
    with pytest.raises(DegreeZero):
        PelDatum(3, 2, (1, 1), 1)
    with pytest.raises(NotPrime):
        PelDatum(6, 2, (1, 1), 2)


def test_build_embeddings_counts_and_orbits():
    datum = PelDatum(3, 2, (1, 1), 2)
    embs = build_embeddings(datum)
    assert len(embs) == 8  # 2n unbarred + 2n barred
    assert sum(1 for e in embs if not e.bar) == 4
    assert {e.orbit for e in embs} == {1, 2}
    for e in embs:
        assert e.sigma_pow(datum, datum.orbit_size(e.orbit)) == e


def test_star_is_shift_by_f():
    datum = PelDatum(3, 2, (2,), 2)
    e = Embedding(1, 0)
    assert e.star(datum) == Embedding(1, 2)
    assert e.star(datum).star(datum) == e
    assert e.conjugate().star(datum) == Embedding(1, 2, True)


def test_uniformizing_labels():
    datum = PelDatum(3, 2, (2,), 2)
    unif = [e for e in build_embeddings(datum) if e.is_uniformizing(datum)]
    assert {(e.pos, e.bar) for e in unif} == {(0, False), (2, False), (0, True), (2, True)}
    assert Embedding(1, 0).restricts_to_tau(datum)
    assert not Embedding(1, 0, True).restricts_to_tau(datum)
    assert Embedding(1, 2, True).restricts_to_tau_bar(datum)


def test_summand_table_ranks_degrees():
    datum = PelDatum(3, 2, (2,), 2)
    tbl = summand_table(datum)
    assert len(tbl) == 8  # 4n descriptors
    assert sum(s.rank_10 + s.rank_01 for s in tbl) == 16  # 8n
    both = [s for s in tbl if s.rank_10 and s.rank_01]
    assert len(both) == 4
    for s in both:
        assert (s.rank_10, s.rank_01) == (1, 1)
        assert (s.deg_10, s.deg_01) == (1, -1)
        assert s.higgs_type == pel.UNIFORMIZING
    for s in tbl:
        if s.higgs_type == pel.UNITARY:
            assert (s.deg_10, s.deg_01) == (0, 0)
            assert {s.rank_10, s.rank_01} == {0, 2}
            # unbarred unitary: rank sits on the (0,1) side; barred mirrors
            assert (s.rank_01 == 2) == (not s.embedding.bar)
    assert sum(s.deg_10 + s.deg_01 for s in tbl) == 0


def test_summand_table_split_into_four_and_twelve_at_n4():
    datum = PelDatum(5, 4, (2, 1, 1), 3)
    tbl = summand_table(datum)
    assert len(tbl) == 16
    assert sum(1 for s in tbl if s.higgs_type == pel.UNIFORMIZING) == 4
    assert sum(1 for s in tbl if s.higgs_type == pel.UNITARY) == 12
    assert sum(s.rank_10 + s.rank_01 for s in tbl) == 32


def test_frobenius_chain_d1():
    datum = PelDatum(3, 2, (1, 1), 2)
    edges = frobenius_chain(datum)
    orbit1 = [e for e in edges if e.source.orbit == 1]
    assert len(orbit1) == 4
    assert all(e.tag == pel.NONZERO_SHARED_ZERO_LOCUS for e in orbit1)
    rest = [e for e in edges if e.source.orbit != 1]
    assert all(e.tag == pel.ISO for e in rest)


def test_frobenius_chain_d2():
    datum = PelDatum(3, 2, (2,), 2)
    tags = {
        (e.source.pos, e.source.bar): e.tag
        for e in frobenius_chain(datum)
        if e.source.orbit == 1
    }
    assert tags[(0, False)] == pel.INJECTIVE
    assert tags[(1, False)] == pel.SURJECTIVE
    assert tags[(2, False)] == pel.INJECTIVE
    assert tags[(3, False)] == pel.SURJECTIVE
    assert all(tags[(k, True)] == pel.ZERO for k in range(4))


def test_frobenius_chain_d3_middle_iso():
    datum = PelDatum(3, 3, (3,), 2)
    tags = {
        (e.source.pos, e.source.bar): e.tag
        for e in frobenius_chain(datum)
        if e.source.orbit == 1 and not e.source.bar
    }
    assert tags[(1, False)] == pel.ISO  # position 2 in chain counting
    assert tags[(0, False)] == pel.INJECTIVE
    assert tags[(2, False)] == pel.SURJECTIVE


def test_frobenius_chain_edges_follow_sigma():
    datum = PelDatum(5, 3, (2, 1), 2)
    for e in frobenius_chain(datum):
        assert e.target == e.source.sigma(datum)


@pytest.mark.parametrize("n,d", [(2, 1), (2, 2), (3, 1), (3, 3), (4, 2), (6, 3)])
def test_global_polygons(n, d):
    f = (d,) + (1,) * (n - d)
    datum = PelDatum(3, n, f, 2)
    gen = assemble_global_polygon(datum, False)
    ss = assemble_global_polygon(datum, True)
    for np_ in (gen, ss):
        assert np_.height() == 8 * n
        assert np_.rise() == 4 * n
        assert np_.is_self_dual()
    assert ss.dominates(gen)
    assert not gen.dominates(ss) or gen == ss


def test_global_polygon_worked_case():
    datum = PelDatum(3, 2, (2,), 2)
    gen = assemble_global_polygon(datum, False)
    assert gen.slopes == ((Fraction(0), 4), (Fraction(1, 2), 8), (Fraction(1), 4))
    ss = assemble_global_polygon(datum, True)
    assert ss.slopes == ((Fraction(1, 4), 8), (Fraction(3, 4), 8))


def test_global_polygon_d1_merges_into_outer_slopes():
    datum = PelDatum(3, 2, (1, 1), 2)
    gen = assemble_global_polygon(datum, False)
    assert gen.slopes == ((Fraction(0), 8), (Fraction(1), 8))
    ss = assemble_global_polygon(datum, True)
    assert ss.slopes == ((Fraction(0), 4), (Fraction(1, 2), 8), (Fraction(1), 4))


def test_mass_formula_values():
    assert mass_formula(3, 1, 2).mass == 2
    assert mass_formula(5, 2, 3).mass == 48
    assert mass_formula(5, 2, 3).cycle_form == 48
    res = mass_formula(11, 3, 6)
    assert res.mass == (11**3 - 1) * 5 == res.cycle_form


def test_mass_formula_degenerate_genus_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = mass_formula(3, 1, 1)
    assert res.mass == 0 and res.degenerate
    assert any("degenerate" in str(w.message) for w in caught)


def test_mass_formula_cycle_degree_sweep():
    for p in (3, 5, 7):
        for d in (1, 2, 3):
            for g in range(2, 7):
                res = mass_formula(p, d, g)
                assert res.mass == res.cycle_form == (p**d - 1) * (g - 1)


def test_cartier_label_is_sigma():
    datum = PelDatum(3, 3, (3,), 2)
    e = Embedding(1, 0)
    assert cartier_label(datum, e) == Embedding(1, 1)
    cur = e
    for _ in range(datum.orbit_size(1)):
        cur = cartier_label(datum, cur)
    assert cur == e
    assert cartier_label(datum, e.conjugate()) == cartier_label(datum, e).conjugate()


def test_pullback_chain():
    datum = PelDatum(3, 3, (3,), 2)
    # i = d: one step to the starred uniformizing label
    res = pullback_chain(datum, Embedding(1, 2))
    assert res.steps == 1 and res.terminal == Embedding(1, 3)
    # i = 2, d = 3: two steps
    res = pullback_chain(datum, Embedding(1, 1))
    assert res.steps == 2 and res.terminal == Embedding(1, 3)
    # starred input lands on the unstarred uniformizing label
    res = pullback_chain(datum, Embedding(1, 4))
    assert res.steps == 2 and res.terminal == Embedding(1, 0)
    # barred inputs mirror with the bar kept
    res = pullback_chain(datum, Embedding(1, 1, True))
    assert res.terminal == Embedding(1, 3, True)


def test_pullback_chain_rejects_bad_labels():
    datum = PelDatum(3, 3, (3,), 2)
    for bad in (Embedding(2, 0), Embedding(1, 0), Embedding(1, 3)):
        with pytest.raises(NotInDistinguishedOrbit):
            pullback_chain(datum, bad)
    with pytest.raises(NotInDistinguishedOrbit):
        pullback_chain(PelDatum(3, 2, (1, 1), 2), Embedding(1, 1))
