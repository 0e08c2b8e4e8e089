"""Space/map file parsing, serialization, and round-trips."""

from __future__ import annotations

import pytest

from lscat.bounds import cup_length
from lscat.catalogue import get, names
from lscat.homs import check_injectivity, check_top_class, validate_hom
from lscat.rings import Element, MultiplicationTable, TruncatedPresentation
from lscat.spacefile import (
    SpaceFileError,
    element_from_monomials,
    format_element,
    parse_expression,
    parse_map,
    parse_space,
    resolve_map,
    serialize_space,
)

SO5_FILE = """\
# special orthogonal group SO(5)
space SO5
dim 10
connectivity 0
stably-parallelizable true
generator b1 1
generator b3 3
truncate b1 8
truncate b3 2
"""

TORUS_TABLE_FILE = """\
space T2tab
dim 2
basis 1 0
basis a 1
basis b 1
basis w 2
product a b = w
"""

COLLAPSE_MAP = """\
map collapse
domain S_2
range T2
degree +1
send t1 -> a1
send t2 -> b1
"""


def test_parse_so5_file():
    record = parse_space(SO5_FILE)
    assert record.name == "SO5"
    assert record.dimension == 10
    assert isinstance(record.ring, TruncatedPresentation)
    assert record.ring.truncations == (8, 2)
    assert cup_length(record.ring) == 8
    assert record.stably_parallelizable


def test_parse_table_file():
    record = parse_space(TORUS_TABLE_FILE)
    assert isinstance(record.ring, MultiplicationTable)
    assert record.ring.product("a", "b") == frozenset({"w"})
    assert record.ring.product("a", "a") == frozenset()
    assert cup_length(record.ring) == 2


def test_parse_point_file():
    record = parse_space("space pt\ndim 0\n")
    assert record.dimension == 0
    assert isinstance(record.ring, TruncatedPresentation)
    assert record.ring.generators == ()


def test_parse_flags_only_record():
    record = parse_space("space X14\ndim 14\nstably-parallelizable true\n")
    assert record.ring is None
    assert record.stably_parallelizable
    assert record.dimension == 14


def test_parse_defaults():
    record = parse_space("space X\ndim 1\ngenerator t 1\ntruncate t 2\n")
    assert record.connectivity == 0
    assert not record.stably_parallelizable
    assert record.orientable


def test_known_cat_parsed():
    record = parse_space(
        'space X\ndim 2\nknown-cat 2 "some literature value"\n'
        "generator a 1\ngenerator b 1\ntruncate a 2\ntruncate b 2\n"
    )
    assert record.known_cat == (2, "some literature value")


# -- malformed inputs (error classes) ------------------------------------------


MALFORMED = [
    ("space X\ndim 2\ngenerator b1 1\ntruncate b1 0\n", "bad-exponent"),
    ("space X\ngenerator b1 1\ntruncate b1 2\n", "missing-dim"),
    ("space X\ndim 2\ngenerator b1 1\ngenerator b1 1\n", "duplicate-generator"),
    ("space X\ndim 2\ntruncate b1 2\n", "unknown-generator"),
    ("space X\ndim 2\ngenerator b1 1\nbasis w 2\n", "mixed-ring-kinds"),
    ("space X\ndim 2\nfrobnicate yes\n", "syntax"),
    ("space X\ndim two\n", "syntax"),
    ("space X\ndim 2\nbasis 1 0\nbasis a 1\nproduct a a = zz\n", "unknown-label"),
    ("space X\ndim 2\ngenerator b1 1\n", "missing-truncation"),
    ("space X\ndim 2\nbasis 1 0\nbasis a 1\nbasis a 1\n", "duplicate-basis"),
    ("space X\ndim 2\nknown-cat 2 nocitation\n", "syntax"),
    ("space X\ndim 2\nbasis 1 0\nbasis a 1\nproduct a a = ^2\n", "bad-expression"),
    ("dim 2\nspace X\n", "syntax"),
    (
        "space X\ndim 2\nknown-cat 1 \"too low\"\n"
        "generator a 1\ngenerator b 1\ntruncate a 2\ntruncate b 2\n",
        "inconsistent-known-cat",
    ),
]


@pytest.mark.parametrize("text,kind", MALFORMED)
def test_malformed_space_files(text, kind):
    with pytest.raises(SpaceFileError) as exc_info:
        parse_space(text)
    assert exc_info.value.kind == kind


def test_error_carries_line_number():
    with pytest.raises(SpaceFileError) as exc_info:
        parse_space("space X\ndim 2\ngenerator b1 1\ntruncate b1 0\n")
    assert exc_info.value.line == 4
    assert "line 4" in str(exc_info.value)


# -- round-trips ----------------------------------------------------------------


def test_round_trip_fixpoint_on_catalogue_exports():
    for name in names():
        record = get(name)
        first = serialize_space(record)
        reparsed = parse_space(first)
        second = serialize_space(reparsed)
        assert first == second, name
        assert parse_space(second) == reparsed


def test_round_trip_preserves_fields():
    record = parse_space(SO5_FILE)
    again = parse_space(serialize_space(record))
    assert again.name == record.name
    assert again.ring == record.ring
    assert again.stably_parallelizable == record.stably_parallelizable


def test_round_trip_table_products():
    record = parse_space(TORUS_TABLE_FILE)
    again = parse_space(serialize_space(record))
    assert again.ring.basis == record.ring.basis
    assert again.ring.product("a", "b") == frozenset({"w"})


def test_round_trip_flags_only():
    record = parse_space("space X14\ndim 14\nstably-parallelizable true\n")
    again = parse_space(serialize_space(record))
    assert again.ring is None
    assert again.stably_parallelizable


# -- expressions ------------------------------------------------------------------


def test_parse_expression_basic():
    assert parse_expression("0") == []
    assert parse_expression("1") == [{}]
    assert parse_expression("b1^2*b3") == [{"b1": 2, "b3": 1}]
    assert parse_expression("a + b") == [{"a": 1}, {"b": 1}]


def test_parse_expression_whitespace_insensitive():
    assert parse_expression("b1 ^ 2 * b3") == parse_expression("b1^2*b3")


def test_parse_expression_rejects_garbage():
    with pytest.raises(SpaceFileError):
        parse_expression("a + + b")
    with pytest.raises(SpaceFileError):
        parse_expression("")
    with pytest.raises(SpaceFileError):
        parse_expression("2a")


def test_element_from_monomials_presentation_reduces():
    s4 = get("SO4").ring
    elem = element_from_monomials(s4, parse_expression("b1^4"))
    assert elem.is_zero()
    elem = element_from_monomials(s4, parse_expression("b1^3*b3 + b1 + b1"))
    assert elem == Element.of((3, 1))


def test_element_from_monomials_table_evaluates_products():
    s1 = get("S_1").ring
    elem = element_from_monomials(s1, parse_expression("a1*b1"))
    assert elem == Element.of("w")
    assert element_from_monomials(s1, parse_expression("1")) == s1.unit()


def test_element_from_monomials_unknown_names():
    s4 = get("SO4").ring
    with pytest.raises(SpaceFileError):
        element_from_monomials(s4, parse_expression("zz"))
    s1 = get("S_1").ring
    with pytest.raises(SpaceFileError):
        element_from_monomials(s1, parse_expression("zz"))


def test_format_element():
    s4 = get("SO4").ring
    assert format_element(s4, Element.zero()) == "0"
    assert format_element(s4, s4.unit()) == "1"
    assert format_element(s4, Element.of((3, 1), (1, 0))) == "b1 + b1^3*b3"
    s1 = get("S_1").ring
    assert format_element(s1, Element.of("w", "a1")) == "a1 + w"


# -- map files ---------------------------------------------------------------------


def test_parse_map_file():
    spec = parse_map(COLLAPSE_MAP)
    assert spec.name == "collapse"
    assert spec.domain == "S_2"
    assert spec.range == "T2"
    assert spec.degree == 1
    assert spec.sends == (("t1", "a1"), ("t2", "b1"))


def test_parse_map_negative_degree():
    spec = parse_map("map m\ndomain S_2\nrange T2\ndegree -1\nsend t1 -> a1\n")
    assert spec.degree == -1


def test_parse_map_missing_field():
    with pytest.raises(SpaceFileError) as exc_info:
        parse_map("map m\ndomain S_2\nrange T2\nsend t1 -> a1\n")
    assert exc_info.value.kind == "missing-field"


def test_parse_map_bad_degree():
    with pytest.raises(SpaceFileError) as exc_info:
        parse_map("map m\ndomain A\nrange B\ndegree 2\n")
    assert exc_info.value.kind == "bad-degree"


def test_parse_map_duplicate_send():
    with pytest.raises(SpaceFileError):
        parse_map("map m\ndomain A\nrange B\ndegree 1\nsend t -> a\nsend t -> b\n")


def test_resolve_collapse_map_end_to_end():
    spec = parse_map(COLLAPSE_MAP)
    hom = resolve_map(spec, get("S_2"), get("T2"))
    vh = validate_hom(hom)
    per_degree, overall = check_injectivity(vh)
    assert overall and per_degree == {0: True, 1: True, 2: True}
    assert check_top_class(vh)


def test_resolve_map_needs_ring_data():
    spec = parse_map("map m\ndomain G2\nrange G2\ndegree 1\n")
    with pytest.raises(SpaceFileError) as exc_info:
        resolve_map(spec, get("G2"), get("G2"))
    assert exc_info.value.kind == "no-ring-data"
