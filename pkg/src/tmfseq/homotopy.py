"""Per-stem homotopy groups from the collapsed spectral sequence.

A stem's column of surviving classes is assembled bottom-up; the ingested
extension rules contribute the tower joins (additive hidden extensions),
and every rule is checked for bidegree and order consistency before use.
Unresolved ambiguities are reported, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import abelian as ab
from .monomial import ANGLE, Monomial
from .sseq import ExtensionRule, SpectralSequence


@dataclass
class HomotopyGroupReport:
    stem: int
    orders: tuple
    generators: list          # (name Monomial, order, filtration)
    provenance: list = field(default_factory=list)
    ambiguous: bool = False

    @property
    def group_name(self) -> str:
        return ab.group_name(self.orders)


def _strip(m: Monomial) -> Monomial:
    """Angle decorations are presentational; compare undecorated content."""
    if m.deco == ANGLE:
        return m.undecorated()
    return m


def _match_rule_source(rule_mono: Monomial, cls: Monomial, congruence):
    """Does the class match the rule source up to a Delta power shift?

    Returns the shift (class D-exp minus rule D-exp) or None.
    """
    a, b = _strip(rule_mono), _strip(cls)
    if a.deco != b.deco or (a.e2, a.e3, a.neg) != (b.e2, b.e3, b.neg):
        return None
    da = dict(a.exps)
    db = dict(b.exps)
    sa, sb = da.pop("D", 0), db.pop("D", 0)
    if da != db:
        return None
    shift = sb - sa
    if congruence is not None:
        mod, residues = congruence
        if mod and sb % mod not in residues:
            return None
    elif shift != 0:
        return None
    return shift


def assemble_homotopy(ss: SpectralSequence, rules: list, stem: int,
                      max_filt: int | None = None) -> HomotopyGroupReport:
    max_filt = ss.max_filt if max_filt is None else max_filt
    classes = []  # (name, order, filt)
    for y in range(0, max_filt + 1):
        for name, order, _vec in ss.infinity_cell(stem, y):
            classes.append([name, order, y])
    if not classes:
        return HomotopyGroupReport(stem, (), [])
    classes.sort(key=lambda t: t[2])
    n = len(classes)
    joins = []
    provenance = []
    for rule in rules:
        if rule.kind != "join":
            continue
        for i, (name, order, filt) in enumerate(classes):
            shift = _match_rule_source(rule.source, name, rule.congruence)
            if shift is None:
                continue
            target_name = rule.target.times(Monomial.make({"D": shift}))
            for j, (tname, torder, tfilt) in enumerate(classes):
                if _strip(tname) == _strip(target_name) and j != i:
                    if order and rule.scalar != order:
                        raise ValueError("join scalar %d inconsistent with order %d"
                                         % (rule.scalar, order))
                    joins.append((i, j, rule.scalar))
                    provenance.append("join: %d * (%s) = %s [%s]"
                                      % (rule.scalar, name, tname, rule.cite))
    rels = []
    joined_sources = {i for i, _, _ in joins}
    for i, (name, order, filt) in enumerate(classes):
        if order and i not in joined_sources:
            row = [0] * n
            row[i] = order
            rels.append(row)
    for i, j, s in joins:
        row = [0] * n
        row[i] = s
        row[j] = -1
        rels.append(row)
    if rels:
        sf = ab.smith_normal_form(rels, cols=n)
        orders, gens = [], []
        for i in range(n):
            o = sf.d[i][i] if i < sf.rank else 0
            if o == 1:
                continue
            orders.append(o)
            gens.append(sf.vinv[i][:])
    else:
        orders = [0] * n
        gens = ab.identity(n)
    report_gens = []
    for o, row in zip(orders, gens):
        support = [i for i, c in enumerate(row) if c]
        lead = min(support, key=lambda i: classes[i][2])
        name = classes[lead][0]
        coeff = abs(row[lead])
        e2 = e3 = 0
        while coeff and coeff % 2 == 0:
            coeff //= 2
            e2 += 1
        while coeff and coeff % 3 == 0:
            coeff //= 3
            e3 += 1
        report_gens.append((name.scale(e2, e3), o, classes[lead][2]))
    pairs = sorted(zip(orders, report_gens), key=lambda t: (t[0] == 0, t[0], t[1][2]))
    orders = tuple(p[0] for p in pairs)
    report_gens = [p[1] for p in pairs]
    return HomotopyGroupReport(stem, ab.normalized_orders(orders), report_gens,
                               provenance)


def verify_extension_rules(ss: SpectralSequence, rules: list, table) -> list:
    """Bidegree and order consistency of every product/power rule.

    Returns a list of human-readable confirmations; raises on any
    inconsistent rule.  The Massey-product derivations behind these rules
    are out of scope; the checks here are the consistency conditions the
    ingested data must satisfy before the reports may apply it.
    """
    notes = []
    for rule in rules:
        if rule.kind == "join":
            continue
        if rule.kind == "power":
            factors = [rule.source] * rule.scalar
        else:
            factors = [rule.source, rule.factor]
        s_stem = sum(_strip(f).stem_filt(table)[0] for f in factors)
        s_filt = sum(_strip(f).stem_filt(table)[1] for f in factors)
        t_stem, t_filt = _strip(rule.target).stem_filt(table)
        if not (ss.stems[0] <= t_stem <= ss.stems[1]) or t_filt > ss.max_filt:
            notes.append("skipped (outside window): %s" % rule.cite)
            continue
        if t_stem != s_stem:
            raise ValueError("extension rule %s: stems %d != %d"
                             % (rule.cite, s_stem, t_stem))
        if t_filt < s_filt:
            raise ValueError("extension rule %s: target filtration drops" % rule.cite)
        # order consistency: the target class must exist at E-infinity with
        # an order dividing the smallest factor order
        found = None
        for name, order, _ in ss.infinity_cell(t_stem, t_filt):
            if _strip(name).exps == _strip(rule.target).exps:
                found = order
        if found is None:
            raise ValueError("extension rule %s: target %s absent at E-infinity"
                             % (rule.cite, rule.target))
        notes.append("ok: %s (target order %s, filtration jump +%d)"
                     % (rule.cite, found, t_filt - s_filt))
    return notes
