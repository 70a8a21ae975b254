import pytest

from tmfseq import abelian as ab
from tmfseq.monomial import Monomial, parse_monomial
from tmfseq.presentation import PresentationError, load_presentation, load_presentation_file


def cellmap(pres, stems, filts):
    return pres.cells(stems, filts)


def orders_at(cells, key):
    return sorted(o for _, o in cells.get(key, []))


def test_away6_window_matches_transcription():
    p = load_presentation("away6")
    cells = cellmap(p, (-40, 40), (0, 0))
    # squares at 0, 8, 12, 16, 20, 24 (two), ... nothing negative
    assert orders_at(cells, (0, 0)) == [0]
    assert orders_at(cells, (8, 0)) == [0]
    assert orders_at(cells, (12, 0)) == [0]
    assert orders_at(cells, (24, 0)) == [0, 0]
    assert orders_at(cells, (4, 0)) == []
    assert all(k[0] >= 0 for k in cells)


def test_p3_window_matches_figure():
    p = load_presentation("3")
    cells = cellmap(p, (-40, 40), (0, 12))
    assert orders_at(cells, (3, 1)) == [3]       # alpha
    assert orders_at(cells, (10, 2)) == [3]      # beta
    assert orders_at(cells, (13, 3)) == [3]      # alpha beta
    assert orders_at(cells, (20, 4)) == [3]      # beta^2
    assert orders_at(cells, (27, 1)) == [3]      # alpha D
    assert orders_at(cells, (34, 2)) == [3]      # beta D
    assert orders_at(cells, (24, 0)) == [0, 0]   # Delta, c4^3
    assert orders_at(cells, (4, 0)) == []


def test_p2_window_matches_figure():
    p = load_presentation("2")
    cells = cellmap(p, (0, 41), (0, 12))
    expect = {
        (0, 0): [0], (1, 1): [2], (2, 2): [2], (3, 1): [4],
        (5, 1): [2], (6, 2): [2, 2], (8, 2): [2], (9, 3): [2],
        (8, 0): [0], (12, 0): [0], (14, 2): [2, 2], (15, 3): [2, 2],
        (17, 3): [2], (20, 4): [2, 8], (24, 0): [0, 0], (25, 1): [2, 2],
        (23, 5): [4], (21, 5): [2, 2], (25, 5): [2, 2], (40, 8): [2, 2, 4],
    }
    for key, want in expect.items():
        assert orders_at(cells, key) == want, (key, cells.get(key))


def test_p2_invert_c4_shape():
    p2 = load_presentation("2")
    inv = p2.invert("c4")
    cells = inv.cells((-8, 32), (0, 3))
    # filtration zero: a Z_(2)[c4^-3 D] tower every 4 stems, h1 towers above;
    # enumeration truncates the degree-zero tower at the window radius
    for stem in range(-8, 33, 4):
        got = orders_at(cells, (stem, 0))
        assert got and set(got) == {0}, (stem, got)
    assert set(orders_at(cells, (-7, 1))) == {2}
    # b is presented as h1 c4^-1 c6 (times the tower), no separate class
    names = [str(m) for m, _ in cells.get((5, 1), [])]
    assert "c4^-1 c6 h1" in names
    assert all("b" not in n and "g" not in n for n in names)
    # odd stems carry no filtration-zero classes
    assert not any(k[1] == 0 and k[0] % 2 for k in cells)


def test_p2_invert_delta_keeps_torsion():
    p2 = load_presentation("2")
    inv = p2.invert("D")
    cells = inv.cells((-28, -20), (0, 8))
    assert 8 in orders_at(cells, (-28, 4))       # g D^-2 keeps its Z/8
    assert orders_at(cells, (-25, 5)) == [4]     # h2 g D^-2
    names = sorted(str(m) for m, _ in cells[(-25, 5)])
    assert "D^-2 h2 g" in names


def test_localizations_commute():
    p3 = load_presentation("3")
    a = p3.invert("c4").invert("D")
    b = p3.invert("D").invert("c4")
    ca = a.cells((-30, 30), (0, 4))
    cb = b.cells((-30, 30), (0, 4))
    assert {k: sorted(str(m) for m, _ in v) for k, v in ca.items()} == \
           {k: sorted(str(m) for m, _ in v) for k, v in cb.items()}


def test_invert_torsion_generator_rejected():
    p3 = load_presentation("3")
    with pytest.raises(ValueError):
        p3.invert("alpha")
    with pytest.raises(ValueError):
        p3.invert("nope")


def test_schema_violation_rejected(tmp_path):
    bad = tmp_path / "bad.pres.txt"
    bad.write_text("context p2\ncoefficients Z\n")
    with pytest.raises(PresentationError):
        load_presentation_file(str(bad))
    bad.write_text("schema tmfseq-presentation 1\ncontext p2\ncoefficients Z\n"
                   "families\n  fam 0 zz | D 0 *\nend\n")
    with pytest.raises(PresentationError):
        load_presentation_file(str(bad))


def _uct_cells(pres_int, pres_mod, n, stems, filts):
    """Check mod-n cell dimensions against tensor/Tor of the integral cells."""
    ic = pres_int.cells((stems[0] - 1, stems[1]), (filts[0], filts[1] + 1))
    mc = pres_mod.cells(stems, filts)
    mismatches = []
    for x in range(stems[0], stems[1] + 1):
        for y in range(filts[0], filts[1] + 1):
            ints = [o for _, o in ic.get((x, y), [])]
            above = [o for _, o in ic.get((x - 1, y + 1), [])]
            want = len(ab.tensor_mod(ints, n)) + len(ab.tor_mod(above, n))
            got = len(mc.get((x, y), []))
            if want != got:
                mismatches.append(((x, y), want, got))
    return mismatches


def test_mod3_file_validates_against_uct():
    p3 = load_presentation("3")
    m3 = load_presentation("3", 3)
    assert _uct_cells(p3, m3, 3, (-30, 40), (0, 10)) == []


def test_mod2_file_validates_against_uct():
    p2 = load_presentation("2")
    m2 = load_presentation("2", 2)
    assert _uct_cells(p2, m2, 2, (0, 45), (0, 12)) == []


def test_mod2_uct_in_delta_inverted_range():
    p2 = load_presentation("2").invert("D")
    m2 = load_presentation("2", 2).invert("D")
    assert _uct_cells(p2, m2, 2, (-45, -10), (0, 10)) == []
