from tmfseq.chart import cell_cluster, glyph_for, glyph_multiset, render_svg, render_text


CELLS = {(0, 0): (0,), (3, 1): (8,), (8, 0): (0,), (6, 2): (2, 2),
         (10, 2): (4,), (-21, 1): (0,)}


def test_glyphs_depend_only_on_decomposition():
    assert glyph_for(0, 2) == "#"
    assert glyph_for(2, 2) == "."
    assert glyph_for(4, 2) == "o"
    assert glyph_for(8, 2) == "8"
    assert glyph_for(3, 3) == "."
    assert glyph_for(9, 3) == "o"
    assert cell_cluster((2, 2, 0), 2) == "#.."
    assert cell_cluster((1, 1), 2) == ""


def test_text_render_deterministic_and_has_legend():
    a = render_text(CELLS, (-22, 12), (0, 3), 2)
    b = render_text(dict(CELLS), (-22, 12), (0, 3), 2)
    assert a == b
    assert "legend:" in a
    assert a.endswith("\n")


def test_text_render_empty_window():
    out = render_text({}, (0, 4), (0, 2), 2)
    assert "legend:" in out


def test_overfull_cell_renders_count():
    cells = {(0, 0): tuple([2] * 12)}
    out = render_text(cells, (0, 0), (0, 0), 2)
    assert "(12)" in out


def test_svg_valid_and_matches_text_occupancy():
    svg = render_svg(CELLS, (-22, 12), (0, 3), 2)
    assert svg.startswith('<?xml version="1.0"')
    assert "<svg" in svg and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") >= 3  # background + two lattice squares
    # occupancy agreement with the text renderer
    ms = glyph_multiset(CELLS, (-22, 12), (0, 3), 2)
    text = render_text(CELLS, (-22, 12), (0, 3), 2)
    for (x, y), cluster in ms.items():
        assert cluster  # every occupied cell has glyphs in both renderers
    assert svg == render_svg(dict(CELLS), (-22, 12), (0, 3), 2)
