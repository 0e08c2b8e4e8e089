"""Catalogue records: rings, flags, citations, ledgers."""

from __future__ import annotations

import pytest

from lscat.bounds import betti_sum, cup_length, cup_length_formula
from lscat.catalogue import (
    SO_KNOWN_CAT,
    SpaceRecord,
    UnknownSpaceError,
    get,
    names,
    surface_table,
)
from lscat.rings import MultiplicationTable, check_poincare_duality, expand_to_table


def test_get_so7():
    rec = get("SO7")
    assert rec.dimension == 21
    assert cup_length(rec.ring) == 11
    assert rec.known_cat == (11, rec.known_cat[1])
    assert rec.stably_parallelizable


def test_get_t3():
    rec = get("T3")
    assert cup_length(rec.ring) == 3
    assert rec.known_cat[0] == 3
    assert rec.morse.ranks == (1, 3, 3, 1)
    assert betti_sum(rec.morse.ranks) == 8


def test_get_genus0_is_sphere_table():
    rec = get("S_0")
    assert isinstance(rec.ring, MultiplicationTable)
    assert rec.ring.size == 2
    assert rec.known_cat[0] == 1
    assert rec.simply_connected


def test_get_sphere_vs_surface_names():
    sphere = get("S2")
    surface = get("S_2")
    assert sphere.dimension == 2 and surface.dimension == 2
    assert sphere.genus is None
    assert surface.genus == 2


def test_get_point():
    rec = get("point")
    assert rec.dimension == 0
    assert rec.known_cat[0] == 0
    assert cup_length(rec.ring) == 0


def test_get_g2_flags_only():
    rec = get("G2")
    assert rec.ring is None
    assert rec.dimension == 14
    assert rec.connectivity == 2
    assert rec.known_cat[0] == 4
    assert rec.stably_parallelizable
    assert rec.ledger() is None


def test_unknown_name():
    with pytest.raises(UnknownSpaceError):
        get("K3")
    with pytest.raises(UnknownSpaceError):
        get("T0")
    with pytest.raises(UnknownSpaceError):
        get("SO1")


def test_records_are_cached():
    assert get("SO5") is get("SO5")
    assert get("T4") is get("T4")


def test_surface_table_g0():
    t = surface_table(0)
    assert t.size == 2
    assert t.top_degree == 2


def test_surface_table_g1_cup_length():
    assert cup_length(surface_table(1)) == 2


def test_surface_table_g2_poincare():
    assert surface_table(2).poincare_polynomial() == [1, 4, 1]


def test_surface_tables_pass_duality():
    for g in range(5):
        assert check_poincare_duality(surface_table(g))


def test_so_n_cup_length_equals_known_cat():
    for n, cat in SO_KNOWN_CAT.items():
        rec = get(f"SO{n}")
        assert cup_length_formula(rec.ring) == cat == rec.known_cat[0]


def test_known_cat_between_cup_length_and_dimension():
    for name in names():
        rec = get(name)
        if rec.known_cat is None or rec.ring is None:
            continue
        assert cup_length(rec.ring) <= rec.known_cat[0] <= rec.dimension


def test_catalogue_rings_pass_duality():
    for name in ["SO3", "SO4", "S_0", "S_1", "S_2", "T1", "T2", "T3", "S2", "S5"]:
        rec = get(name)
        table = (
            rec.ring
            if isinstance(rec.ring, MultiplicationTable)
            else expand_to_table(rec.ring)
        )
        assert check_poincare_duality(table), name


def test_product_record_s3xs3():
    rec = get("S3xS3")
    assert rec.dimension == 6
    assert rec.morse.ranks == (1, 0, 0, 2, 0, 0, 1)
    assert rec.simply_connected
    assert rec.stably_parallelizable
    assert cup_length(rec.ring) == 2


def test_product_record_mixed_kinds():
    rec = get("S_1xS2")
    assert rec.dimension == 4
    assert isinstance(rec.ring, MultiplicationTable)
    assert cup_length(rec.ring) == 3


def test_product_with_g2_rejected():
    with pytest.raises(UnknownSpaceError):
        get("G2xS2")


def test_surface_crit_star_discrepancy_note():
    for g in (1, 2, 3):
        rec = get(f"S_{g}")
        assert any("crit*" in note for note in rec.notes)
        ledger = rec.ledger()
        # the ledger records the Morse-derived bound 2g+2, not the 2g value
        assert ledger.crit_star.lower == 2 * g + 2 == betti_sum(rec.morse.ranks)


def test_surface_genus1_cat_annotated_via_torus():
    rec = get("S_1")
    assert rec.known_cat[0] == 2
    assert "torus" in rec.known_cat[1]


def test_record_validates_ring_dimension():
    with pytest.raises(ValueError):
        SpaceRecord(
            name="bad",
            dimension=3,
            connectivity=0,
            orientable=True,
            stably_parallelizable=False,
            ring=surface_table(1),
        )


def test_record_validates_known_cat():
    with pytest.raises(ValueError):
        SpaceRecord(
            name="bad",
            dimension=2,
            connectivity=0,
            orientable=True,
            stably_parallelizable=False,
            ring=surface_table(1),
            known_cat=(1, "below the cup-length"),
        )


def test_names_listing():
    ns = names()
    for expected in ("point", "G2", "SO9", "T8", "S10", "S_4"):
        assert expected in ns


def test_ledger_for_so6():
    ledger = get("SO6").ledger()
    assert ledger.cup_length == 9
    assert (ledger.cat.lower, ledger.cat.upper) == (9, 9)
    assert (ledger.toomer_e.lower, ledger.toomer_e.upper) == (9, 9)


def test_catalogue_poincare_polynomials_palindromic():
    # dimension counts of a closed-manifold ring mirror around the middle
    for name in names():
        rec = get(name)
        if rec.ring is None:
            continue
        poly = rec.ring.poincare_polynomial()
        assert poly == poly[::-1], name


def test_so3_dimension_census():
    ring = get("SO3").ring
    assert ring.total_dimension == 4
    assert sum(ring.poincare_polynomial()) == 4


def test_tensor_poincare_multiplicative_on_catalogue_pairs():
    import warnings

    from lscat.rings import tensor_product

    def convolve(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    pairs = [("SO3", "T2"), ("SO4", "S3"), ("T3", "T2"), ("SO5", "S1")]
    for name_a, name_b in pairs:
        a, b = get(name_a).ring, get(name_b).ring
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            prod = tensor_product(a, b)
        expected = convolve(a.poincare_polynomial(), b.poincare_polynomial())
        assert prod.poincare_polynomial() == expected, (name_a, name_b)
