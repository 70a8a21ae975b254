"""Chart rendering in Adams indexing: monospaced text and SVG.

The square at (x, y) displays the group in cohomological bidegree
(q, p) = (y, x + y).  Glyphs depend only on the cyclic decomposition of
the cell: a lattice summand is a square, Z/n a dot, Z/n^2 a circled dot,
Z/n^3 a doubly circled dot; clusters of more than nine glyphs render as a
count.  Output is deterministic: no timestamps, fixed iteration order.
"""

from __future__ import annotations

GLYPHS = {
    "lattice": "#",
    1: ".",
    2: "o",
    3: "8",
}


def glyph_for(order: int, prime: int) -> str:
    """One character per cyclic summand, by p-power of the order."""
    if order == 0:
        return GLYPHS["lattice"]
    k = 0
    o = order
    while o % prime == 0 and o > 1:
        o //= prime
        k += 1
    if o != 1:
        return "?"
    return GLYPHS.get(k, "*")


def cell_cluster(orders, prime: int) -> str:
    glyphs = "".join(sorted(glyph_for(o, prime) for o in orders if o != 1))
    if not glyphs:
        return ""
    if len(glyphs) > 9:
        return "(%d)" % len(glyphs)
    return glyphs


LEGEND = ("legend: # = lattice summand (Z localized), . = Z/p, o = Z/p^2, "
          "8 = Z/p^3; (n) = n summands")


def render_text(cells: dict, stems, filts, prime: int, labels: dict | None = None) -> str:
    """Deterministic monospaced grid; one character cluster per cell.

    ``cells`` maps (stem, filt) to order tuples; ``labels`` optionally
    maps cells to a short label shown in the footer index.
    """
    lo_s, hi_s = stems
    lo_f, hi_f = filts
    width = 4
    lines = []
    for y in range(hi_f, lo_f - 1, -1):
        row = ["%3d|" % y]
        for x in range(lo_s, hi_s + 1):
            cluster = cell_cluster(cells.get((x, y), ()), prime)
            row.append(cluster[:width].ljust(width))
        lines.append("".join(row).rstrip())
    lines.append("   +" + "-" * (width * (hi_s - lo_s + 1)))
    marks = []
    for x in range(lo_s, hi_s + 1):
        if x % 4 == 0:
            marks.append(("%d" % x).ljust(width))
        else:
            marks.append(" " * width)
    lines.append("   " + "".join(marks).rstrip())
    lines.append(LEGEND)
    if labels:
        lines.append("labels:")
        for key in sorted(labels):
            lines.append("  (%d,%d) %s" % (key[0], key[1], labels[key]))
    return "\n".join(lines) + "\n"


def render_svg(cells: dict, stems, filts, prime: int, arrows=()) -> str:
    """Valid SVG 1.1 with a 16 px unit grid; differentials as arrows of
    slope set by their page; dead classes may be passed dimmed via the
    ``arrows`` companion structure produced by the engine."""
    lo_s, hi_s = stems
    lo_f, hi_f = filts
    unit = 16
    w = (hi_s - lo_s + 3) * unit
    h = (hi_f - lo_f + 3) * unit

    def cx(x):
        return (x - lo_s + 1) * unit + unit // 2

    def cy(y):
        return h - ((y - lo_f + 1) * unit + unit // 2)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="0 0 %d %d">' % (w, h, w, h),
        '<rect width="%d" height="%d" fill="white"/>' % (w, h),
    ]
    for x in range(lo_s, hi_s + 2):
        parts.append('<line x1="%d" y1="0" x2="%d" y2="%d" stroke="#eee"/>'
                     % (cx(x) - unit // 2, cx(x) - unit // 2, h))
    for y in range(lo_f, hi_f + 2):
        parts.append('<line x1="0" y1="%d" x2="%d" y2="%d" stroke="#eee"/>'
                     % (cy(y) + unit // 2, w, cy(y) + unit // 2))
    for (x, y) in sorted(cells):
        if not (lo_s <= x <= hi_s and lo_f <= y <= hi_f):
            continue
        orders = [o for o in cells[(x, y)] if o != 1]
        n = len(orders)
        if not n:
            continue
        offsets = [(i - (n - 1) / 2.0) * 5 for i in range(n)]
        for dx, order in zip(offsets, sorted(orders, key=lambda o: (o == 0, o))):
            px = cx(x) + dx
            py = cy(y)
            if order == 0:
                parts.append('<rect x="%.1f" y="%.1f" width="6" height="6" '
                             'fill="black"/>' % (px - 3, py - 3))
            else:
                k = 0
                o = order
                while o % prime == 0 and o > 1:
                    o //= prime
                    k += 1
                parts.append('<circle cx="%.1f" cy="%.1f" r="1.6" fill="black"/>'
                             % (px, py))
                for ring in range(k - 1):
                    parts.append('<circle cx="%.1f" cy="%.1f" r="%.1f" fill="none" '
                                 'stroke="black" stroke-width="0.7"/>'
                                 % (px, py, 3.0 + 1.6 * ring))
    for (x1, y1, x2, y2) in arrows:
        parts.append('<line x1="%.1f" y1="%.1f" x2="%.1f" y2="%.1f" '
                     'stroke="gray" stroke-width="0.8" marker-end="url(#a)"/>'
                     % (cx(x1), cy(y1), cx(x2), cy(y2)))
    parts.append('<defs><marker id="a" markerWidth="6" markerHeight="6" refX="5" '
                 'refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="gray"/>'
                 '</marker></defs>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def glyph_multiset(cells: dict, stems, filts, prime: int) -> dict:
    """Cell-occupancy abstraction shared by both renderers (for tests)."""
    out = {}
    for (x, y), orders in cells.items():
        if stems[0] <= x <= stems[1] and filts[0] <= y <= filts[1]:
            cluster = cell_cluster(orders, prime)
            if cluster:
                out[(x, y)] = cluster
    return out
