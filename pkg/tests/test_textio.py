from __future__ import annotations

from fractions import Fraction as F

import pytest

from freeset.canonical import canonical_order
from freeset.errors import GraphFormatError, Unverified
from freeset.extractors import antichain_freeset, planar_freeset
from freeset.realize import PolyDrawing, free_realize
from freeset.svg import export_svg
from freeset.textio import (
    parse_certificate,
    parse_drawing,
    parse_freeset,
    parse_graph,
    parse_points,
    serialize_certificate,
    serialize_drawing,
    serialize_freeset,
    serialize_graph,
    serialize_points,
)


class TestGraphFormat:
    def test_k4_bytes_roundtrip(self, k4):
        text = serialize_graph(k4)
        assert serialize_graph(parse_graph(text)) == text

    def test_value_roundtrip(self, gh):
        assert parse_graph(serialize_graph(gh)) == gh

    def test_comments_and_blanks_tolerated(self, k4):
        text = "# a comment\n\n" + serialize_graph(k4).replace(
            "V 4", "V 4  # four vertices")
        assert parse_graph(text) == k4

    def test_malformed_rotation_line_number(self):
        with pytest.raises(GraphFormatError) as err:
            parse_graph("V 2\nR 0: 1\nR 1 0\n")
        assert "line 3" in str(err.value)

    def test_missing_vertex_count(self):
        with pytest.raises(GraphFormatError):
            parse_graph("R 0: 1\nR 1: 0\n")


class TestCertificateFormat:
    def test_roundtrip(self, k4):
        cs = canonical_order(k4)
        cert = antichain_freeset(k4, cs, (3, 2)).certificate
        assert parse_certificate(serialize_certificate(cert)) == cert

    def test_freeset_roundtrip(self, k4):
        fs = planar_freeset(k4)
        parsed = parse_freeset(serialize_freeset(fs), k4)
        assert parsed.order == fs.order
        assert parsed.certificate == fs.certificate

    def test_double_passage_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_certificate("CV 0\nCF 1\nCF 2\n")


class TestDrawingFormat:
    def test_rational_preserved(self, k4):
        fs = planar_freeset(k4)
        d = free_realize(k4, fs, [(F(22, 7), F(1, 3)), (F(23, 7), F(-5, 9))])
        text = serialize_drawing(d)
        assert "22/7" in text
        back = parse_drawing(text, k4)
        assert back.pos == d.pos
        assert back.bends == d.bends
        assert serialize_drawing(back) == text

    def test_points_roundtrip(self):
        pts = [(F(1, 3), F(-2, 5)), (F(4), F(0))]
        assert parse_points(serialize_points(pts)) == pts

    def test_bad_point_line(self):
        with pytest.raises(GraphFormatError):
            parse_points("1/2\n")


class TestSvg:
    def test_basic_render(self, k4):
        fs = planar_freeset(k4)
        d = free_realize(k4, fs, [(0, 0), (1, 1)])
        doc = export_svg(d, certificate=fs.certificate, highlight=fs.order)
        assert doc.startswith("<svg")
        assert doc.count("<circle") == 4
        assert doc.count("<polyline") >= 6

    def test_unverified_rejected(self, k4):
        d = PolyDrawing(graph=k4, pos={v: (F(v), F(0)) for v in range(4)})
        with pytest.raises(Unverified):
            export_svg(d)
