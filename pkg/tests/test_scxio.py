"""File format: grammar, errors, round trips."""

import random

import pytest

from scx.models import BUILDERS
from scx.scxio import ParseError, parse_rep, parse_scx, serialize_scx

from conftest import random_presentation_doc

MINIMAL = """\
scx 1
gen x
cell p dim 0
cell q dim 0
cell m dim 1
cell x dim 1
cell D dim 2
bnd m = 1*1*q + -1*1*q
bnd x = 1*x*p + -1*1*p
bnd D = 1*1*m + -1*1*x + -1*x*x
sub R- = q m
meta sutures 2
"""


class TestGrammar:
    def test_minimal_terms(self):
        doc = parse_scx(MINIMAL)
        assert doc.boundaries["D"] == (
            (1, (), "m"), (-1, (), "x"), (-1, (1,), "x"))

    def test_comments_and_blank_lines(self):
        doc = parse_scx("scx 1\n\n# hello\ngen a  # trailing\n")
        assert doc.gens == ("a",)

    def test_word_exponents(self):
        doc = parse_scx("scx 1\ngen a\nrel a^3\n")
        assert doc.relators == ((1, 1, 1),)

    def test_phi(self):
        doc = parse_scx("scx 1\ngen a b\nmeta phi ab a=1 b=-2\n")
        assert doc.phis["ab"] == {"a": 1, "b": -2}

    def test_missing_header(self):
        with pytest.raises(ParseError) as e:
            parse_scx("gen a\n")
        assert e.value.line == 1

    def test_truncated_term(self):
        with pytest.raises(ParseError) as e:
            parse_scx("scx 1\ngen a\ncell v dim 0\ncell e dim 1\n"
                      "bnd e = 1*a\n")
        assert e.value.line == 5

    def test_undeclared_cell(self):
        with pytest.raises(ParseError):
            parse_scx("scx 1\ncell v dim 0\ncell e dim 1\n"
                      "bnd e = 1*1*w + -1*1*v\n")

    def test_dimension_mismatch(self):
        with pytest.raises(ParseError) as e:
            parse_scx("scx 1\ncell v dim 0\ncell w dim 0\ncell F dim 2\n"
                      "bnd F = 1*1*v + -1*1*w\n")
        assert "dimension mismatch" in str(e.value)

    def test_bad_dimension(self):
        with pytest.raises(ParseError):
            parse_scx("scx 1\ncell v dim 4\n")

    def test_unknown_directive(self):
        with pytest.raises(ParseError):
            parse_scx("scx 1\nfrobnicate\n")

    def test_undeclared_generator_in_relator(self):
        with pytest.raises(ParseError):
            parse_scx("scx 1\ngen a\nrel b\n")


class TestBundledShape:
    def test_product_T1_has_nine_cells(self):
        from scx.cli import load_document
        doc = load_document("bundled:product_T1")
        assert len(doc.cells) == 9

    def test_headers_state_what_they_witness(self):
        from importlib import resources
        for name in sorted(BUILDERS):
            text = (resources.files("scx.data") / f"{name}.scx").read_text()
            first = text.splitlines()[0]
            assert first.startswith(f"# {name}:") and len(first) > 15


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(BUILDERS))
    def test_bundled(self, name):
        doc = BUILDERS[name]()
        text = serialize_scx(doc)
        again = parse_scx(text)
        assert again == doc
        assert serialize_scx(again) == text

    def test_random_documents(self):
        rng = random.Random(21)
        for _ in range(25):
            doc = random_presentation_doc(rng)
            doc.metas["sutures"] = "1"
            assert parse_scx(serialize_scx(doc)) == doc


class TestRepFormat:
    def test_trivial(self):
        doc = parse_rep("rep 1\nkind trivial\ndim 3\n")
        assert doc.kind == "trivial" and doc.dim == 3

    def test_perm(self):
        doc = parse_rep("rep 1\nkind perm\ndegree 3\ngen x = (1 2)\n")
        assert doc.perms["x"] == "(1 2)"

    def test_matrix(self):
        doc = parse_rep("rep 1\nkind matrix\nfield q\ndim 2\n"
                        "gen x = 1 1 ; 0 1\nunitary 0\n")
        assert doc.matrices["x"] == [["1", "1"], ["0", "1"]]
        assert not doc.unitary_assertion

    def test_bad_kind(self):
        with pytest.raises(ParseError):
            parse_rep("rep 1\nkind nonsense\n")

    def test_matrix_shape_error(self):
        with pytest.raises(ParseError):
            parse_rep("rep 1\nkind matrix\ndim 2\ngen x = 1 1 1 ; 0 1 0\n")
