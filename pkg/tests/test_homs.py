"""Induced homomorphisms and the degree-one certification criteria."""

from __future__ import annotations

import pytest

from lscat.catalogue import get
from lscat.gf2 import BitMatrix
from lscat.homs import (
    CERTIFIED,
    INCONCLUSIVE,
    NOT_APPLICABLE,
    VIOLATED,
    DimensionMismatch,
    HomValidationError,
    RingHomSpec,
    check_cl_monotone,
    check_injectivity,
    check_top_class,
    compose,
    cor_cat_transfer,
    full_report,
    low_dim_check,
    morse_transfer_check,
    thm_main_check,
    thm_torus_check,
    torus_stabilization_k,
    validate_hom,
)
from lscat.rings import Element, GeneratorSpec, TruncatedPresentation


def identity_hom(presentation: TruncatedPresentation) -> RingHomSpec:
    images = {
        g.name: presentation.generator_element(g.name) for g in presentation.generators
    }
    return RingHomSpec(presentation, presentation, images, 1)


def collapse_hom() -> RingHomSpec:
    """Induced hom of the genus-2 -> torus collapse map: H*(T2) -> H*(S_2)."""
    t2 = get("T2").ring
    s2 = get("S_2").ring
    return RingHomSpec(t2, s2, {"t1": Element.of("a1"), "t2": Element.of("b1")}, 1)


# -- validation -----------------------------------------------------------------


def test_identity_hom_valid():
    s3 = get("SO3").ring
    vh = validate_hom(identity_hom(s3))
    per_degree, overall = check_injectivity(vh)
    assert overall and all(per_degree.values())
    assert check_top_class(vh)


def test_relation_not_preserved():
    src = TruncatedPresentation((GeneratorSpec("b1", 1),), (4,), 3)
    tgt = TruncatedPresentation((GeneratorSpec("a1", 1),), (8,), 7)
    spec = RingHomSpec(src, tgt, {"b1": tgt.generator_element("a1")}, 1)
    with pytest.raises(HomValidationError, match="relation"):
        validate_hom(spec)


def test_degree_mismatch_rejected():
    src = get("SO3").ring  # generator b1 in degree 1
    tgt = get("SO4").ring
    b3 = tgt.generator_element("b3")
    with pytest.raises(HomValidationError, match="degree mismatch"):
        validate_hom(RingHomSpec(src, tgt, {"b1": b3}, 1))


def test_unknown_generator_rejected():
    s3 = get("SO3").ring
    spec = RingHomSpec(
        s3, s3, {"b1": s3.generator_element("b1"), "zz": s3.unit()}, 1
    )
    with pytest.raises(HomValidationError, match="unknown generator"):
        validate_hom(spec)


def test_missing_image_rejected():
    s4 = get("SO4").ring
    with pytest.raises(HomValidationError, match="no image"):
        validate_hom(RingHomSpec(s4, s4, {"b1": s4.generator_element("b1")}, 1))


def test_table_source_multiplicativity_checked():
    s1 = get("S_1").ring  # torus surface table: a1*b1 = w
    images = {
        "a1": Element.of("a1"),
        "b1": Element.of("a1"),  # then a1*b1 -> a1*a1 = 0 but w -> w
        "w": Element.of("w"),
    }
    with pytest.raises(HomValidationError, match="multiplicativity"):
        validate_hom(RingHomSpec(s1, s1, images, 1))


def test_table_source_identity_valid():
    s2 = get("S_2").ring
    images = {l: Element.of(l) for l, d in s2.basis if d > 0}
    vh = validate_hom(RingHomSpec(s2, s2, images, 1))
    assert check_injectivity(vh)[1]
    assert check_top_class(vh)


def test_asserted_degree_must_be_unit():
    s3 = get("SO3").ring
    with pytest.raises(ValueError):
        RingHomSpec(s3, s3, {}, 2)


def test_zero_image_is_valid_but_not_injective():
    t2 = get("T2").ring
    images = {"t1": Element.zero(), "t2": t2.generator_element("t2")}
    vh = validate_hom(RingHomSpec(t2, t2, images, 1))
    per_degree, overall = check_injectivity(vh)
    assert not overall
    assert per_degree[0] and not per_degree[1]
    assert check_top_class(vh) is False  # t1*t2 -> 0


# -- collapse hom: the worked example ---------------------------------------------


def test_collapse_hom_injective_everywhere():
    vh = validate_hom(collapse_hom())
    per_degree, overall = check_injectivity(vh)
    assert per_degree == {0: True, 1: True, 2: True}
    assert overall
    # degree-1 matrix is 4x2 of rank 2
    assert vh.matrices[1].rows == 4 and vh.matrices[1].cols == 2


def test_collapse_hom_top_class():
    assert check_top_class(validate_hom(collapse_hom()))


def test_composition_matrices_multiply():
    t2 = get("T2").ring
    swap = RingHomSpec(
        t2,
        t2,
        {"t1": t2.generator_element("t2"), "t2": t2.generator_element("t1")},
        1,
    )
    inner = validate_hom(swap)
    outer = validate_hom(collapse_hom())
    composite = validate_hom(compose(outer, inner))
    for d in range(3):
        assert composite.matrices[d] == outer.matrices[d] @ inner.matrices[d]


# -- criteria ---------------------------------------------------------------------


def test_cl_monotone_certified_equal():
    verdict = check_cl_monotone(get("S_2").ring, get("T2").ring)
    assert verdict.status == CERTIFIED


def test_cl_monotone_violated():
    verdict = check_cl_monotone(get("S2").ring, get("T2").ring)
    assert verdict.status == VIOLATED
    assert "1" in verdict.reason and "2" in verdict.reason


def test_cl_monotone_identity():
    verdict = check_cl_monotone(get("SO5").ring, get("SO5").ring)
    assert verdict.status == CERTIFIED


def test_cor_cat_transfer_so5():
    m_ledger = get("SO5").ledger()
    verdict, tightened = cor_cat_transfer(m_ledger, get("SO5").ledger())
    assert verdict.status == CERTIFIED
    assert tightened.cat.lower == 8


def test_cor_cat_transfer_torus():
    # T^k has cl = cat = k without any known value: interval collapses
    from lscat.bounds import cat_bounds

    n_ledger = cat_bounds(get("T3").ring, 3)
    assert n_ledger.cat.is_exact()
    verdict, _ = cor_cat_transfer(None, n_ledger)
    assert verdict.status == CERTIFIED


def test_cor_cat_transfer_inconclusive_when_cl_lt_cat():
    from lscat.bounds import cat_bounds

    n_ledger = cat_bounds(get("S_0").ring, 2, known_cat=2)  # cl 1 < cat 2 (synthetic)
    verdict, _ = cor_cat_transfer(None, n_ledger)
    assert verdict.status == INCONCLUSIVE


def test_cor_cat_transfer_tightens_monotonically():
    m_ledger = get("S_2").ledger()
    before = m_ledger.cat.lower
    _, after = cor_cat_transfer(m_ledger, get("T2").ledger())
    assert after.cat.lower >= before


def test_thm_main_g2():
    x14 = _declared(dim=14, stably_parallelizable=True)
    verdict = thm_main_check(x14, get("G2"))
    assert verdict.status == CERTIFIED
    assert "14" in verdict.reason and "20" in verdict.reason


def test_thm_main_sphere_fails_dimension_condition():
    m = _declared(dim=2, stably_parallelizable=True)
    verdict = thm_main_check(m, get("S2"))
    assert verdict.status == INCONCLUSIVE
    assert "fails" in verdict.reason


def test_thm_main_needs_flags():
    m = _declared(dim=14, stably_parallelizable=False)
    verdict = thm_main_check(m, get("G2"))
    assert verdict.status == INCONCLUSIVE


def _declared(dim: int, stably_parallelizable: bool, name: str = "X"):
    from lscat.catalogue import SpaceRecord

    return SpaceRecord(
        name=name,
        dimension=dim,
        connectivity=0,
        orientable=True,
        stably_parallelizable=stably_parallelizable,
        ring=None,
    )


def test_torus_stabilization_values():
    st = torus_stabilization_k(14)
    assert (st.k, st.lhs, st.rhs) == (18, 32, 32)
    assert torus_stabilization_k(0).k == 4
    assert torus_stabilization_k(10).k == 14


def test_torus_stabilization_equality_exactly_at_n_plus_4():
    for n in range(0, 30):
        st = torus_stabilization_k(n)
        assert st.k == n + 4
        assert st.lhs == st.rhs  # 2(n+4) - 4 == (n+4) + n


def test_thm_torus_check():
    verdict = thm_torus_check(get("SO5"), get("SO5"))
    assert verdict.status == CERTIFIED
    assert "14" in verdict.reason  # k = dim + 4 = 14
    not_par = _declared(dim=10, stably_parallelizable=False)
    assert thm_torus_check(not_par, get("SO5")).status == INCONCLUSIVE


def test_low_dim_genus_monotone():
    verdict = low_dim_check(2, m_genus=2, n_genus=1)
    assert verdict.status == CERTIFIED
    assert "genus" in verdict.reason


def test_low_dim_genus_obstruction():
    verdict = low_dim_check(2, m_genus=0, n_genus=1)
    assert verdict.status == VIOLATED


def test_low_dim_three():
    verdict = low_dim_check(3)
    assert verdict.status == CERTIFIED


def test_low_dim_not_applicable_above_four():
    assert low_dim_check(5).status == NOT_APPLICABLE


def test_morse_transfer_certified():
    verdict = morse_transfer_check(get("S3xS3").morse, get("S6").morse)
    assert verdict.status == CERTIFIED
    assert "4" in verdict.reason and "2" in verdict.reason


def test_morse_transfer_violated():
    verdict = morse_transfer_check(get("S6").morse, get("S3xS3").morse)
    assert verdict.status == VIOLATED
    assert "3" in verdict.reason  # failing degree


def test_morse_transfer_identity():
    verdict = morse_transfer_check(get("S3xS3").morse, get("S3xS3").morse)
    assert verdict.status == CERTIFIED


def test_morse_transfer_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        morse_transfer_check(get("S2").morse, get("S3").morse)


def test_morse_transfer_inconclusive_low_dim():
    verdict = morse_transfer_check(get("S_2").morse, get("S_1").morse)
    assert verdict.status == INCONCLUSIVE


# -- full report --------------------------------------------------------------------


def test_full_report_violated_sphere_to_torus():
    report = full_report(get("S2"), get("T2"))
    assert report.overall == VIOLATED
    by_id = {v.criterion_id: v for v in report.verdicts}
    assert by_id["prop_cl_monotone"].status == VIOLATED


def test_full_report_collapse_certified():
    report = full_report(get("S_2"), get("T2"), hom=collapse_hom())
    assert report.overall == CERTIFIED
    by_id = {v.criterion_id: v for v in report.verdicts}
    assert by_id["low_dim"].status == CERTIFIED
    assert by_id["lemma_injectivity"].status == CERTIFIED
    assert by_id["prop_cl_monotone"].status == CERTIFIED


def test_full_report_g2_certified_via_thm_main():
    x14 = _declared(dim=14, stably_parallelizable=True, name="X14")
    report = full_report(x14, get("G2"))
    assert report.overall == CERTIFIED
    by_id = {v.criterion_id: v for v in report.verdicts}
    assert by_id["thm_main"].status == CERTIFIED
    assert by_id["prop_cl_monotone"].status == NOT_APPLICABLE


def test_full_report_identity_so5():
    report = full_report(get("SO5"), get("SO5"), hom=identity_hom(get("SO5").ring))
    assert report.overall == CERTIFIED
    by_id = {v.criterion_id: v for v in report.verdicts}
    assert by_id["cor_cat_transfer"].status == CERTIFIED
    assert by_id["lemma_injectivity"].status == CERTIFIED


def test_full_report_injectivity_failure_forces_violated():
    t2 = get("T2")
    images = {"t1": Element.zero(), "t2": t2.ring.generator_element("t2")}
    hom = RingHomSpec(t2.ring, t2.ring, images, 1)
    report = full_report(t2, t2, hom=hom)
    assert report.overall == VIOLATED
    by_id = {v.criterion_id: v for v in report.verdicts}
    assert by_id["lemma_injectivity"].status == VIOLATED


def test_full_report_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        full_report(get("S2"), get("T3"))


def test_full_report_deterministic_order():
    r1 = full_report(get("S_2"), get("T2"))
    r2 = full_report(get("S_2"), get("T2"))
    assert r1 == r2
    ids = [v.criterion_id for v in r1.verdicts]
    assert ids == [
        "low_dim",
        "prop_cl_monotone",
        "cor_cat_transfer",
        "thm_main",
        "morse_transfer",
        "thm_torus",
    ]


def test_full_report_mentions_open_question():
    report = full_report(get("S_2"), get("T2"))
    assert any("open question" in note for note in report.notes)


def test_report_to_dict_roundtrips_status():
    report = full_report(get("S_2"), get("T2"))
    d = report.to_dict()
    assert d["overall"] == report.overall
    assert [v["criterion_id"] for v in d["verdicts"]] == [
        v.criterion_id for v in report.verdicts
    ]


def test_matrices_expose_expected_shapes():
    vh = validate_hom(collapse_hom())
    assert isinstance(vh.matrices[0], BitMatrix)
    assert vh.matrices[0].rows == vh.matrices[0].cols == 1
