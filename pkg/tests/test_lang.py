import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import by_role, catalog, entry
from mmph.exact import ExactScalar, vector
from mmph.lang import (
    ALPHABET,
    DUPLICATE_EDGE,
    EDGE_SIZE,
    INTERSECTION_BOUND,
    SINGLE_INTERSECTION,
    Mmph,
    MmphSyntaxError,
    label_at,
    label_index,
    parse_coordinatization,
    parse_mmph,
    parse_mmph_lines,
    serialize_coordinatization,
    serialize_mmph,
    validate,
)

BUG = "123,34,45,567,78,81,26."


def test_alphabet():
    assert len(ALPHABET) == len(set(ALPHABET)) == 90
    assert ALPHABET.startswith("123456789ABC")
    assert not set(ALPHABET) & set(" 0+,.")
    assert label_at(0) == "1" and label_at(90) == "+1" and label_at(181) == "++2"
    assert label_index("+++A") == 3 * 90 + 9


class TestParse:
    def test_bug(self):
        h = parse_mmph(BUG)
        assert (h.k, h.l, h.dimension) == (8, 7, 3)
        assert h.vertices == tuple("12345678")

    def test_explicit_dimension(self):
        h = parse_mmph("12.", 3)
        assert (h.k, h.l, h.dimension) == (2, 1, 3)

    def test_plus_prefix(self):
        h = parse_mmph("1+A2,+A3.")
        assert h.vertices == ("1", "+A", "2", "3")
        assert h.hyperedges == (("1", "+A", "2"), ("+A", "3"))
        assert parse_mmph("++A+A,A1.").vertices == ("++A", "+A", "A", "1")

    def test_whitespace_between_tokens(self):
        assert parse_mmph(" 12 3,\n34 .\n") == parse_mmph("123,34.")

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("123,34", "period"),
            ("102,3.", "'0'"),
            ("12,+.", "dangling"),
            ("12+ 3.", "whitespace inside"),
            ("12,,3.", "empty hyperedge"),
            ("12,3\x07.", "illegal"),
            ("12,34.56", "after the terminating"),
            ("121.", "repeated"),
            ("12,21.", "duplicates"),
        ],
    )
    def test_errors(self, text, fragment):
        with pytest.raises(MmphSyntaxError, match=re.escape(fragment)):
            parse_mmph(text)

    def test_dimension_too_small(self):
        with pytest.raises(MmphSyntaxError, match="smaller"):
            parse_mmph("1234.", 3)

    def test_error_position(self):
        with pytest.raises(MmphSyntaxError) as info:
            parse_mmph("12,3045.")
        assert info.value.position == 4

    def test_lines(self):
        hs = parse_mmph_lines("12,34.\n\n" + BUG + "\n")
        assert [h.name for h in hs] == ["4-2", "8-7"]


class TestSerialize:
    def test_examples(self):
        h = Mmph.from_edges([["1", "2"], ["3", "4"], ["1", "2", "3", "4"]])
        assert serialize_mmph(h) == "12,34,1234."
        assert serialize_mmph(Mmph.from_edges([["1", "2"]])) == "12."

    @pytest.mark.parametrize("eid", sorted(catalog()))
    def test_corpus_round_trip(self, eid):
        e = entry(eid)
        h = e.mmph
        assert h.name == e.name == f"{e.k}-{e.l}"
        assert serialize_mmph(h) == re.sub(r"\s", "", e.text)

    @pytest.mark.parametrize("eid", [e.id for e in by_role("master", "supermaster", "filled")])
    def test_inferred_dimension(self, eid):
        e = entry(eid)
        assert parse_mmph(e.text).dimension == e.dim


labels = st.integers(0, 200).map(label_at)
edges = st.lists(labels, min_size=1, max_size=6, unique=True)


@given(st.lists(edges, min_size=1, max_size=10, unique_by=frozenset))
def test_round_trip_property(es):
    h = Mmph.from_edges(es)
    text = serialize_mmph(h)
    assert parse_mmph(text, h.dimension) == h
    assert serialize_mmph(parse_mmph(text)) == text


class TestValidate:
    def test_bug_is_lenient_clean_with_single_intersections(self):
        r = validate(parse_mmph(BUG), "strict")
        assert r.lenient_pass and not r.strict_pass
        assert r.by_rule(SINGLE_INTERSECTION)
        assert (0, 1) in [v.edges for v in r.by_rule(SINGLE_INTERSECTION)]
        lenient = validate(parse_mmph(BUG))
        assert lenient.lenient_pass and not lenient.violations

    def test_intersection_bound(self):
        r = validate(parse_mmph("1234,1235.", 4))
        assert [v.edges for v in r.by_rule(INTERSECTION_BOUND)] == [(0, 1)]
        assert not r.lenient_pass and not r.strict_pass

    def test_peres_clean(self):
        r = validate(entry("4d-24-24").mmph, "strict")
        assert not r.by_rule(INTERSECTION_BOUND) and r.lenient_pass

    def test_edge_size_and_duplicates(self):
        h = Mmph(3, (("1",), ("1", "2"), ("2", "1")))
        r = validate(h)
        assert r.by_rule(EDGE_SIZE) and r.by_rule(DUPLICATE_EDGE)
        assert not r.lenient_pass

    @given(st.lists(edges, min_size=1, max_size=8))
    def test_strict_implies_lenient(self, es):
        r = validate(Mmph.from_edges(es), "strict")
        assert r.lenient_pass or not r.strict_pass


class TestCoordinatizationText:
    def test_examples(self):
        c = parse_coordinatization("1 = (0,0,1)\n", "rational")
        assert c["1"] == vector("rational", [0, 0, 1])
        g = parse_coordinatization("# golden\n2 = (phi-1,0,-phi,0)\n", "golden")
        phi = ExactScalar.generator("golden")
        assert g["2"] == (phi - 1, ExactScalar.zero("golden"), -phi, ExactScalar.zero("golden"))
        e = parse_coordinatization("w = (w,1,1,w2,1,w)", "eisenstein")
        w = ExactScalar.generator("eisenstein")
        assert e["w"] == vector("eisenstein", [w, 1, 1, w * w, 1, w])

    def test_hash_label_is_a_vector_line(self):
        c = parse_coordinatization("# = (1,0)\n#note\n", "rational")
        assert list(c.vectors) == ["#"]

    @pytest.mark.parametrize(
        "text, ring",
        [
            ("1 = (x,0)", "rational"),
            ("1 = (phi,0)", "rational"),
            ("1 = (w,0)", "golden"),
            ("1 = (1,0)\n2 = (1,0,0)", "rational"),
            ("1 = (1,0)\n1 = (0,1)", "rational"),
            ("0 = (1,0)", "rational"),
            ("1 = (0,0)", "rational"),
            ("1 (0,1)", "rational"),
            ("", "rational"),
        ],
    )
    def test_errors(self, text, ring):
        with pytest.raises(MmphSyntaxError):
            parse_coordinatization(text, ring)

    @pytest.mark.parametrize("eid", [e.id for e in catalog().values() if e.vectors])
    def test_round_trip(self, eid):
        e = entry(eid)
        c = e.printed_coordinatization()
        assert parse_coordinatization(serialize_coordinatization(c), e.ring) == c
