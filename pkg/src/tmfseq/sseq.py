"""The descent spectral sequence from assembled stack cohomology.

Differentials are ingested as data (a short list of generator-level
entries per prime), extended multiplicatively by the Leibniz rule through
the monomial algebra, pulled back to the compactified-stack page through
the restriction of classes to the Delta-localized cover piece, and
complemented on cokernel-born classes by the induced differentials of the
doubly-localized quotient complex (which is exactly the printed d3 family
on bracket classes).  Page turning is bidegree-wise exact homology with
full lineage, and per-stem homotopy assembly applies the ingested
extension rules bottom-up.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from . import abelian as ab
from .monomial import BRACKET, Combination, Monomial, parse_monomial
from .mayer_vietoris import MayerVietoris
from .presentation import data_dir

DIFF_SCHEMA = "tmfseq-differentials 1"
EXT_SCHEMA = "tmfseq-extensions 1"


@dataclass
class DiffEntry:
    page: int
    kind: str          # "derivation" | "quarter" | "replace"
    lhs: Monomial
    value: Monomial
    congruence: tuple | None = None   # (modulus, residues) on the Delta exponent
    cite: str = ""


@dataclass
class DifferentialTable:
    context: str
    entries: list = field(default_factory=list)

    @property
    def pages(self):
        return sorted({e.page for e in self.entries})

    @property
    def max_page(self):
        return max([e.page for e in self.entries], default=2)

    def evaluate(self, page: int, mono: Monomial, relations) -> list:
        """d_page of a Delta-localized basis monomial.

        Returns [(Fraction coefficient, monomial), ...]; fractional parts
        (from the quarter rule) are resolved against the source lattice
        coefficient by the caller.
        """
        out = []
        for e in self.entries:
            if e.page != page:
                continue
            if e.congruence is not None:
                mod, residues = e.congruence
                if mono.exp("D") % mod not in residues:
                    continue
            if e.kind in ("derivation", "quarter"):
                gen = e.lhs.exps[0][0]
                k = mono.exp(gen)
                if not k:
                    continue
                rest = Monomial.make(
                    {n: v for n, v in mono.exps}, mono.e2, mono.e3, mono.neg, mono.deco
                ).times(Monomial.make({gen: -1}))
                coeff = Fraction(k, 4) if e.kind == "quarter" else Fraction(k)
                raw = rest.times(e.value)
                for m, c in relations.normalize(Combination.of((1, raw))).items():
                    out.append((coeff * c, m))
            elif e.kind == "replace":
                # the Delta exponent is constrained by the congruence alone;
                # its exponent in the pattern only fixes the shift
                ok = all(mono.exp(n) >= v for n, v in e.lhs.exps if n != "D")
                if not ok:
                    continue
                rest = mono
                for n, v in e.lhs.exps:
                    rest = rest.times(Monomial.make({n: -v}))
                raw = rest.times(e.value)
                for m, c in relations.normalize(Combination.of((1, raw))).items():
                    out.append((Fraction(c), m))
        return out


def load_differentials(context: str) -> DifferentialTable:
    name = ("p%s" % context) if context in ("2", "3") else context
    path = os.path.join(data_dir(), "%s.diff.txt" % name)
    table = DifferentialTable(context)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("schema "):
                if line[7:].strip() != DIFF_SCHEMA:
                    raise ValueError("%s:%d: bad schema" % (path, lineno))
                continue
            if line.startswith("context "):
                continue
            cite = ""
            if ' cite "' in line:
                line, _, tail = line.partition(' cite "')
                cite = tail.rstrip('"')
            cong = None
            if " when D mod " in line:
                line, _, tail = line.partition(" when D mod ")
                mod, _, res = tail.partition(" in ")
                cong = (int(mod), tuple(int(t) for t in res.split(",")))
            kind, rest = line.split(None, 1)
            page, rest = rest.split(None, 1)
            lhs, _, value = rest.partition("->")
            table.entries.append(DiffEntry(int(page), kind, parse_monomial(lhs.strip()),
                                           parse_monomial(value.strip()), cong, cite))
    if table.max_page > 25:
        raise ValueError("differential table has entries above page 25")
    return table


@dataclass
class ExtensionRule:
    kind: str           # "join" (additive), "product" or "power" (multiplicative)
    scalar: int         # join: scalar * source = target; power: the exponent
    source: Monomial
    factor: Monomial | None
    target: Monomial
    congruence: tuple | None = None
    cite: str = ""


def load_extensions(context: str) -> list:
    name = ("p%s" % context) if context in ("2", "3") else context
    path = os.path.join(data_dir(), "%s.ext.txt" % name)
    rules = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("schema "):
                if line[7:].strip() != EXT_SCHEMA:
                    raise ValueError("%s:%d: bad schema" % (path, lineno))
                continue
            cite = ""
            if ' cite "' in line:
                line, _, tail = line.partition(' cite "')
                cite = tail.rstrip('"')
            cong = None
            if " when D mod " in line:
                line, _, tail = line.partition(" when D mod ")
                mod, _, res = tail.partition(" in ")
                cong = (int(mod), tuple(int(t) for t in res.split(",")))
            if line.startswith("join "):
                body = line[5:]
                lhs, _, rhs = body.partition("=")
                scalar, src = lhs.strip().split(None, 1)
                rules.append(ExtensionRule("join", int(scalar), parse_monomial(src),
                                           None, parse_monomial(rhs.strip()), cong, cite))
            elif line.startswith("product "):
                body = line[8:]
                lhs, _, rhs = body.partition("=")
                f1, f2 = [t.strip() for t in lhs.split("*")]
                rules.append(ExtensionRule("product", 1, parse_monomial(f1),
                                           parse_monomial(f2), parse_monomial(rhs.strip()),
                                           cong, cite))
            elif line.startswith("power "):
                body = line[6:]
                lhs, _, rhs = body.partition("=")
                exp, src = lhs.strip().split(None, 1)
                rules.append(ExtensionRule("power", int(exp), parse_monomial(src),
                                           None, parse_monomial(rhs.strip()), cong, cite))
            else:
                raise ValueError("%s:%d: bad extension line" % (path, lineno))
    return rules


# ---------------------------------------------------------------------------
# page state


@dataclass
class Cell:
    """One bidegree of the running spectral sequence.

    ``basis`` fixes the starting-page coordinates forever; ``cycles`` and
    ``boundaries`` are row spans in those coordinates.  ``lineage`` maps
    page numbers to human-readable death notes.
    """

    x: int
    y: int
    basis: list               # [(name Monomial, order int, kproj dict, bracket Monomial|None)]
    cycles: list
    boundaries: list
    lineage: dict = field(default_factory=dict)

    @property
    def orders(self):
        return tuple(o for _, o, _, _ in self.basis)

    def group(self) -> ab.Subquotient:
        if not self.basis:
            return ab.Subquotient((), [])
        return ab.subquotient_homology(self.orders, self.cycles, self.boundaries)


class SpectralSequence:
    """Descent spectral sequence for one prime context."""

    def __init__(self, mv: MayerVietoris, table: DifferentialTable,
                 stems, max_filt: int):
        self.mv = mv
        self.table = table
        self.stems = stems
        # differentials can reach this far above the reported range
        self.max_filt = max_filt
        self.pad_filt = max_filt + table.max_page + 1
        self.page = 2
        self.cells: dict = {}
        assembled = mv.assemble_window((stems[0], stems[1] + 1), (0, self.pad_filt))
        for (x, y), acell in assembled.items():
            basis = []
            for i, g in enumerate(acell.gens):
                bracket = None
                for ci, row in enumerate(acell.cok_in_gens):
                    if [j for j, v in enumerate(row) if v] == [i] and abs(row[i]) == 1:
                        bracket = acell.cbasis[ci].m
                basis.append((g.name, g.order, g.kproj, bracket))
            # a generator that *is* a bracket class (unit coefficient) keeps
            # its bracket monomial for the quotient-complex differentials
            self.cells[(x, y)] = Cell(x, y, basis,
                                      ab.identity(len(basis)), [])
        self._dcache: dict = {}

    def cell(self, x, y) -> Cell | None:
        return self.cells.get((x, y))

    # -- differential evaluation on starting-page coordinates ----------------

    def _gen_differential(self, page, key, index):
        """Value of d_page on one basis generator as (target_key, row).

        The row is over the target cell's starting-page basis with Fraction
        entries; the quarter rule contributes genuine fourths that become
        integral only against the lattice index of the actual page cycles.
        Combines the pullback along the restriction to the Delta-localized
        piece with the induced differential on bracket classes (the
        quotient complex of the doubly-localized page).
        """
        cellkey = (page, key, index)
        if cellkey in self._dcache:
            return self._dcache[cellkey]
        x, y = key
        cell = self.cells[key]
        name, order, kproj, bracket = cell.basis[index]
        frac_terms = []
        for v, coeff in kproj.items():
            for fc, m in self.table.evaluate(page, v, self.mv.relations):
                frac_terms.append((fc * coeff, m, "ker"))
        if bracket is not None:
            for fc, m in self.table.evaluate(page, bracket, self.mv.p_ad.relations):
                frac_terms.append((fc, m, "cok"))
        frac_terms = [(fc, m, side) for fc, m, side in frac_terms if fc]
        if not frac_terms:
            self._dcache[cellkey] = None
            return None
        target = self.cells.get((x - 1, y + page))
        if target is None or not target.basis:
            self._dcache[cellkey] = None
            return None
        vec = [Fraction(0)] * len(target.basis)
        for fc, m, side in frac_terms:
            coeffs = self._express_in_cell(target, m, side)
            if coeffs is None:
                if side == "ker" and fc.denominator == 1:
                    raise ValueError(
                        "differential target %s of %s at (%d,%d) has no expression"
                        % (m, name, x, y))
                continue  # bracket value outside the cokernel basis
            for j, c in enumerate(coeffs):
                vec[j] += fc * c
        res = ((x - 1, y + page), vec) if any(vec) else None
        self._dcache[cellkey] = res
        return res

    def _express_in_cell(self, cell: Cell, m: Monomial, side: str):
        """Coefficients of a kernel monomial or cokernel monomial in the
        cell's starting-page basis."""
        if side == "cok":
            for j, (_, _, _, bracket) in enumerate(cell.basis):
                if bracket == m:
                    row = [0] * len(cell.basis)
                    row[j] = 1
                    return row
            return None
        # kernel side: solve over the kernel-monomial coordinate space
        monos = sorted({v for _, _, kp, _ in cell.basis for v in kp},
                       key=lambda t: t.sort_key())
        if m not in monos:
            # the target class does not restrict nontrivially: it may be a
            # pure cokernel survivor or absent; treat missing as absent
            ord_m = self.mv.p_d.contains(m)
            if ord_m is None:
                return None
            monos = monos + [m]
        idx = {v: i for i, v in enumerate(monos)}
        rows = []
        for _, _, kp, _ in cell.basis:
            row = [0] * len(monos)
            for v, c in kp.items():
                row[idx[v]] = c
            rows.append(row)
        orders = []
        for v in monos:
            o = self.mv.p_d.contains(v)
            orders.append(o if o is not None else 0)
        targetv = [0] * len(monos)
        targetv[idx[m]] = 1
        sol = ab.express(tuple(orders), rows, targetv)
        return sol

    # -- page turning ---------------------------------------------------------

    def turn_to(self, page: int, check_dd=False) -> None:
        """Advance from the current page to ``page`` applying every listed
        differential in between."""
        while self.page < page:
            r = self.page
            if r in self.table.pages:
                self._apply_page(r, check_dd)
            self.page += 1

    def _apply_page(self, r: int, check_dd: bool) -> None:
        images: dict = {}
        new_cycles: dict = {}
        for key in sorted(self.cells):
            cell = self.cells[key]
            if not cell.basis or not cell.cycles:
                continue
            rows = []
            tkey = (key[0] - 1, key[1] + r)
            any_d = False
            for i in range(len(cell.basis)):
                got = self._gen_differential(r, key, i)
                if got is None:
                    rows.append(None)
                else:
                    rows.append(got[1])
                    any_d = True
            if not any_d:
                continue
            target = self.cells[tkey]
            n_t = len(target.basis)
            frac_rows = [v if v is not None else [Fraction(0)] * n_t for v in rows]
            orders = cell.orders
            d_on_cycles = []
            for c in cell.cycles:
                # reduce the representative mod the coordinate orders: the
                # fractional quarter rule is only sound on reduced classes
                red = [ci % o if o else ci for ci, o in zip(c, orders)]
                img = [Fraction(0)] * n_t
                for coeff, row in zip(red, frac_rows):
                    if coeff:
                        for j in range(n_t):
                            img[j] += coeff * row[j]
                # quarter-rule policy: non-integral contributions vanish
                row = [int(v) if v.denominator == 1 else 0 for v in img]
                # a lift landing outside the surviving cycle span represents
                # an obstruction that already died; its page class is zero
                if any(row) and ab.express(target.orders, target.cycles, row) is None:
                    row = [0] * n_t
                d_on_cycles.append(row)
            killers = ab.stack(target.boundaries, ab.relation_rows(target.orders))
            stacked = ab.stack(d_on_cycles, killers)
            null = ab.left_nullspace(stacked, rows=len(stacked), cols=n_t)
            keep = [row[: len(cell.cycles)] for row in null]
            kept_rows = [ab.vec_mat(k, cell.cycles) for k in keep]
            kept_rows = [r for r in kept_rows
                         if any(ci % o if o else ci for ci, o in zip(r, orders))]
            new_cycles[key] = kept_rows
            img_rows = [v for v in d_on_cycles if any(v)]
            if img_rows:
                images.setdefault(tkey, []).extend(img_rows)
        for key, cell in self.cells.items():
            if key in new_cycles:
                cell.cycles = new_cycles[key]
                cell.lineage.setdefault(r, "supports d%d" % r)
        for key, rows in images.items():
            cell = self.cells[key]
            cell.boundaries = ab.stack(cell.boundaries, rows)
            cell.lineage[r] = "hit by d%d" % r
        # sanity: boundaries lie inside cycles (d compose d vanishes on pages)
        for key, cell in self.cells.items():
            if not cell.basis or not cell.boundaries:
                continue
            for b in cell.boundaries:
                if ab.express(cell.orders, ab.stack(cell.cycles), b) is None:
                    raise ValueError("d%d image escapes cycles at %s (d*d != 0?)"
                                     % (r, key))

    def run(self) -> None:
        self.turn_to(self.table.max_page + 1)

    # -- reading off the answer ----------------------------------------------

    def infinity_cell(self, x, y):
        cell = self.cells.get((x, y))
        if cell is None:
            return []
        sub = cell.group()
        out = []
        for orders_i, gen in zip(sub.orders, sub.gens):
            name = self._class_name(cell, gen, orders_i)
            out.append((name, orders_i, gen))
        return out

    def _class_name(self, cell: Cell, vector, order) -> Monomial:
        support = [(i, c) for i, c in enumerate(vector) if c]
        if len(support) == 1:
            i, c = support[0]
            name, o, _, _ = cell.basis[i]
            if o:
                c %= o
                c = min(c, o - c) if 0 < c < o else c
            c = abs(c) if c else 1
            e2 = e3 = 0
            while c % 2 == 0:
                c //= 2
                e2 += 1
            while c % 3 == 0:
                c //= 3
                e3 += 1
            return name.scale(e2, e3)
        return cell.basis[support[0][0]][0]
