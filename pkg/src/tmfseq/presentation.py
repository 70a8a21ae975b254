"""Graded cohomology presentations and their localizations.

A presentation is a family-based description of one bigraded cohomology
ring: generator symbols with bidegrees and additive orders, monomial
families with exponent-region constraints, rewrite relations, and the
rules of the localization maps away from the filtration-zero generators.
The three base presentations (away from 6, 3-local, 2-local, each with
integral and mod-n coefficient versions) are data files transcribed from
chart figures and the quoted multiplication rules; this module parses,
enumerates and localizes them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .monomial import (
    ANGLE, BRACKET, Combination, GeneratorSymbol, Monomial, RelationSet,
    enumerate_window, parse_monomial,
)

SCHEMA = "tmfseq-presentation 1"
DATA_ENV = "TMFSEQ_DATA_DIR"


def data_dir() -> str:
    override = os.environ.get(DATA_ENV)
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "data")


@dataclass(frozen=True)
class FamilyVar:
    """A free exponent of a family: a step monomial and an inclusive range."""

    step: Monomial
    lo: int | None
    hi: int | None


@dataclass(frozen=True)
class Family:
    """base * prod(step_i^e_i) over the declared exponent region.

    ``order`` is the additive order of every member (0 = lattice over the
    local ring).
    """

    base: Monomial
    vars: tuple
    order: int
    cite: str = ""


@dataclass
class MapRule:
    """Rules of a localization map i_a away from one generator."""

    invert: str
    kills: tuple = ()
    sends: dict = field(default_factory=dict)

    def image_monomial(self, mono: Monomial, relations: RelationSet) -> Monomial | None:
        """Image of a monomial, or None when some factor is killed.

        The result is normalized through the relation set and must come
        out as a single monomial times a scalar; that scalar is kept in
        the monomial's 2/3-exponents.
        """
        out = Monomial.make({}, mono.e2, mono.e3, mono.neg, mono.deco)
        for name, e in mono.exps:
            if name in self.kills:
                return None
            img = self.sends.get(name)
            if img is None:
                step = Monomial.make({name: 1})
            else:
                step = img
            out = out.times(step.power(e))
        comb = relations.normalize(Combination.of((1, out)))
        if not comb:
            return None
        if len(comb) > 1:
            raise ValueError("localization image of %s is not a monomial: %s" % (mono, comb))
        m, coeff = next(iter(comb.items()))
        # fold the integer coefficient back into 2/3 scalar exponents
        e2 = e3 = 0
        neg = coeff < 0
        coeff = abs(coeff)
        while coeff % 2 == 0:
            coeff //= 2
            e2 += 1
        while coeff % 3 == 0:
            coeff //= 3
            e3 += 1
        if coeff != 1:
            raise ValueError("non 2/3-smooth coefficient in localization image")
        return Monomial(m.exps, m.e2 + e2, m.e3 + e3, m.neg != neg, m.deco)


@dataclass
class GradedPresentation:
    context: str                 # "2", "3", "away6"
    coefficients: int            # 0 for the local ring, n for Z/n
    table: dict                  # name -> GeneratorSymbol
    families: list               # of Family
    relations: RelationSet
    map_rules: dict              # generator name -> MapRule
    inverted: frozenset = frozenset()
    name: str = ""

    # -- enumeration -------------------------------------------------------

    def truncate_var(self, v: FamilyVar, window) -> FamilyVar:
        """Close unbounded ranges of inverted generators for enumeration.

        Joint zero-stem directions (the u-towers c4^-3 D and friends) make
        single cells infinite after localization; enumeration truncates
        them at a radius derived from the window, which is wide enough for
        every per-cell computation that goes through the closed-form
        kernel/cokernel criteria and their matrix cross-checks.
        """
        if v.lo is not None:
            return v
        (lo_s, hi_s), _ = window
        reach = max(abs(lo_s), abs(hi_s)) + 96
        s, _f = v.step.stem_filt(self.table)
        # doubled: a u-tower pairs this generator against the other inverted
        # one, so in-window monomials reach exponents of both signs
        cap = (2 * reach) // max(abs(s), 1) + 6
        hi = v.hi if v.hi is not None else cap
        return FamilyVar(v.step, -cap, hi)

    def cells(self, stems, filts) -> dict:
        """Window enumeration: {(stem, filt): [(monomial, order), ...]}.

        Deduplicates identical monomials arising from different families
        (which happens after localization); their orders must agree.
        """
        window = (tuple(stems), tuple(filts))
        out: dict = {}
        seen: dict = {}
        for fam in self.families:
            vars_ = [self.truncate_var(v, window) for v in fam.vars]
            base = fam.base
            monos = _enumerate_family(base, vars_, self.table, stems, filts)
            for m in monos:
                if m in seen:
                    if seen[m] != fam.order:
                        raise ValueError("conflicting orders for %s" % m)
                    continue
                seen[m] = fam.order
                key = m.stem_filt(self.table)
                out.setdefault(key, []).append((m, fam.order))
        for key in out:
            out[key].sort(key=lambda t: t[0].sort_key())
        return out

    def cell(self, stem, filt):
        return self.cells((stem, stem), (filt, filt)).get((stem, filt), [])

    def contains(self, mono: Monomial) -> int | None:
        """Membership test: the order of the family containing ``mono``.

        Checks the exponent-region inequalities directly, family by
        family; returns None when no family matches.
        """
        for fam in self.families:
            e = _family_membership(fam, mono)
            if e is not None:
                return fam.order
        return None

    # -- localization ------------------------------------------------------

    def invert(self, gen: str) -> "GradedPresentation":
        """Localize away from a filtration-zero lattice generator."""
        sym = self.table.get(gen)
        if sym is None:
            raise ValueError("unknown generator %r" % gen)
        if sym.q != 0 or sym.order not in (0, self.coefficients):
            raise ValueError("can only invert a filtration-zero lattice generator")
        rule = self.map_rules.get(gen)
        if rule is None:
            raise ValueError("no localization rules for %r" % gen)
        new_families = []
        for fam in self.families:
            base = rule.image_monomial(fam.base, self.relations)
            if base is None:
                continue
            new_vars = []
            ok = True
            for v in fam.vars:
                step = rule.image_monomial(v.step, self.relations)
                if step is None:
                    ok = False
                    break
                new_vars.append(FamilyVar(step, v.lo, v.hi))
            if not ok:
                continue
            # relax the inverted generator's own exponent range
            relaxed = []
            seen_gen = False
            for v in new_vars:
                if v.step.exps == ((gen, 1),):
                    relaxed.append(FamilyVar(v.step, None, None))
                    seen_gen = True
                else:
                    relaxed.append(v)
            if not seen_gen:
                relaxed.append(FamilyVar(Monomial.make({gen: 1}), None, None))
            order = fam.order
            if order == 0:
                o = self.relations.monomial_order(base)
                order = o if o else 0
            else:
                o = self.relations.monomial_order(base)
                if o:
                    order = min(order, o) if o else order
            new_families.append(Family(base, tuple(relaxed), order, fam.cite))
        return replace(self, families=new_families,
                       inverted=self.inverted | {gen},
                       name=self.name + "[%s^-1]" % gen)


def _family_membership(fam: Family, mono: Monomial):
    """Solve base * prod step^e = mono for in-range exponents, or None."""
    if mono.deco != fam.base.deco:
        return None
    residual = dict(mono.exps)
    for n, e in fam.base.exps:
        residual[n] = residual.get(n, 0) - e
    # steps are single- or multi-generator monomials; solve greedily using
    # a generator unique to each step when possible
    exps = []
    steps = list(fam.vars)
    used = {}
    for v in steps:
        lead = v.step.exps[0][0] if v.step.exps else None
        if lead is None:
            return None
        used.setdefault(lead, 0)
        used[lead] += 1
    for v in steps:
        lead, le = v.step.exps[0]
        if used[lead] > 1:
            return None  # ambiguous solve; family data avoids this
        e, rem = divmod(residual.get(lead, 0), le)
        if rem:
            return None
        if v.lo is not None and e < v.lo:
            return None
        if v.hi is not None and e > v.hi:
            return None
        for n, se in v.step.exps:
            residual[n] = residual.get(n, 0) - se * e
        exps.append(e)
    if any(residual.values()):
        return None
    if (mono.e2 - fam.base.e2) or (mono.e3 - fam.base.e3) or mono.neg != fam.base.neg:
        return None
    return exps


def _enumerate_family(base, vars_, table, stems, filts):
    from .monomial import ExponentVar

    # translate monomial steps into the generic enumerator: it works on
    # per-variable stem/filt weights, so wrap steps as pseudo-generators
    pseudo = dict(table)
    evars = []
    for i, v in enumerate(vars_):
        s, f = v.step.stem_filt(table)
        name = "@%d" % i
        pseudo[name] = GeneratorSymbol(name, f, s + f)
        evars.append(ExponentVar(name, v.lo, v.hi))
    got = enumerate_window(base, evars, pseudo, stems, filts)
    out = []
    for m in got:
        real = Monomial.make({}, m.e2, m.e3, m.neg, m.deco)
        d = {n: e for n, e in m.exps if not n.startswith("@")}
        real = Monomial.make(d, m.e2, m.e3, m.neg, m.deco)
        for n, e in m.exps:
            if n.startswith("@"):
                real = real.times(vars_[int(n[1:])].step.power(e), deco=m.deco)
        out.append(real)
    return out


# ---------------------------------------------------------------------------
# data file parsing


class PresentationError(ValueError):
    """Schema violation or inconsistency in a presentation data file."""


def _parse_range(lo: str, hi: str):
    return (None if lo == "*" else int(lo), None if hi == "*" else int(hi))


def load_presentation_file(path: str) -> GradedPresentation:
    table: dict = {}
    families: list = []
    relations = RelationSet()
    map_rules: dict = {}
    context = None
    coefficients = None
    section = None
    current_rule = None
    schema_seen = False

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue

            def fail(msg):
                raise PresentationError("%s:%d: %s" % (path, lineno, msg))

            if line.startswith("schema "):
                if line[7:].strip() != SCHEMA:
                    fail("unsupported schema %r" % line[7:])
                schema_seen = True
            elif line.startswith("context "):
                context = line.split()[1]
            elif line.startswith("coefficients "):
                tok = line.split()[1]
                coefficients = 0 if tok == "Z" else int(tok.split("/")[1])
            elif line in ("generators", "families", "relations"):
                section = line
            elif line.startswith("map-rules "):
                section = "map-rules"
                current_rule = MapRule(invert=line.split()[1])
                map_rules[current_rule.invert] = current_rule
            elif line == "end":
                section = None
                current_rule = None
            elif section == "generators":
                parts = line.split()
                if parts[0] != "gen" or len(parts) < 5:
                    fail("bad generator line")
                name, q, p, order = parts[1], int(parts[2]), int(parts[3]), int(parts[4])
                table[name] = GeneratorSymbol(name, q, p, order)
            elif section == "families":
                if not line.startswith("fam "):
                    fail("bad family line")
                body = line[4:]
                cite = ""
                if ' cite "' in body:
                    body, _, tail = body.partition(' cite "')
                    cite = tail.rstrip('"')
                pieces = [p.strip() for p in body.split("|")]
                head = pieces[0].split(None, 1)
                order = int(head[0])
                base = parse_monomial(head[1]) if len(head) > 1 else Monomial.one()
                fvars = []
                for piece in pieces[1:]:
                    toks = piece.split()
                    step = parse_monomial(" ".join(toks[:-2]))
                    lo, hi = _parse_range(toks[-2], toks[-1])
                    fvars.append(FamilyVar(step, lo, hi))
                families.append(Family(base, tuple(fvars), order, cite))
            elif section == "relations":
                if line.startswith("rule "):
                    lhs, _, rhs = line[5:].partition("->")
                    terms = []
                    for term in rhs.replace("- ", "+ -").split("+"):
                        term = term.strip()
                        if not term:
                            continue
                        terms.append((1, term))
                    relations.add_rule(lhs.strip(), terms)
                elif line.startswith("zero "):
                    relations.add_annihilator(line[5:].strip())
                elif line.startswith("order "):
                    toks = line[6:].rsplit(None, 1)
                    relations.add_power_order(toks[0].strip(), int(toks[1]))
                else:
                    fail("bad relation line")
            elif section == "map-rules":
                if line.startswith("kill "):
                    current_rule.kills = current_rule.kills + tuple(line.split()[1:])
                elif line.startswith("send "):
                    lhs, _, rhs = line[5:].partition("->")
                    current_rule.sends[lhs.strip()] = parse_monomial(rhs.strip())
                else:
                    fail("bad map-rule line")
            else:
                fail("line outside any section: %r" % line)

    if not schema_seen:
        raise PresentationError("%s: missing schema line" % path)
    if context is None or coefficients is None:
        raise PresentationError("%s: missing context or coefficients" % path)
    relations.orders = {n: g.order for n, g in table.items()}

    pres = GradedPresentation(context=context, coefficients=coefficients,
                              table=table, families=families,
                              relations=relations, map_rules=map_rules,
                              name=os.path.splitext(os.path.basename(path))[0])
    _validate(pres, path)
    return pres


def _validate(pres: GradedPresentation, path: str) -> None:
    for fam in pres.families:
        try:
            fam.base.bidegree(pres.table)
        except KeyError as exc:
            raise PresentationError("%s: family %s: %s" % (path, fam.base, exc))
        for v in fam.vars:
            v.step.bidegree(pres.table)
        if pres.coefficients and fam.order != pres.coefficients:
            raise PresentationError(
                "%s: family %s order %d in a Z/%d presentation"
                % (path, fam.base, fam.order, pres.coefficients))


_CACHE: dict = {}


def load_presentation(context: str, coefficients: int = 0) -> GradedPresentation:
    """Load one of the shipped presentations: context in {2, 3, away6}."""
    key = (str(context), coefficients)
    if key not in _CACHE:
        names = {
            ("away6", 0): "away6.pres.txt",
            ("3", 0): "p3_integral.pres.txt",
            ("3", 3): "p3_mod3.pres.txt",
            ("2", 0): "p2_integral.pres.txt",
            ("2", 2): "p2_mod2.pres.txt",
        }
        try:
            fname = names[key]
        except KeyError:
            raise PresentationError("no presentation for context=%r coefficients=%r"
                                    % (context, coefficients))
        _CACHE[key] = load_presentation_file(os.path.join(data_dir(), fname))
    return _CACHE[key]
