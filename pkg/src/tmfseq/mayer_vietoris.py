"""Mayer-Vietoris assembly of the cohomology of the compactified stack.

The two-piece cover by the loci where Delta resp. c4 (or its mod-p
replacement) is invertible gives the difference map

    D(v + w) = i_Delta(v) - i_a(w)

between the localized cohomologies; the cohomology of the compactified
stack sits in short exact sequences built from the kernels and cokernels
of D.  Kernels are computed monomial-by-monomial (the maps send basis
monomials to scalar multiples of basis monomials) and cokernels by the
closed-form exponent criteria, with matrix-level Smith-normal-form
cross-checks available for the property tests.  Nodes where both sides
are nonzero are resolved through the mod-n pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import abelian as ab
from .monomial import ANGLE, BRACKET, Monomial
from .presentation import GradedPresentation, load_presentation


@dataclass(frozen=True)
class KerClass:
    """A kernel class <scale * v> with v a Delta-localized basis monomial.

    ``is_global`` marks classes restricting from the uncompactified-plus
    page; those keep their plain names, everything else gets the angle
    decoration of the kernel-representative convention.
    """

    v: Monomial
    scale: int          # 2^k or 3^k scalar making the class land in the kernel
    order: int
    is_global: bool = False

    @property
    def name(self) -> Monomial:
        m = self.v
        if self.scale != 1:
            e2 = e3 = 0
            s = self.scale
            while s % 2 == 0:
                s //= 2
                e2 += 1
            while s % 3 == 0:
                s //= 3
                e3 += 1
            m = m.scale(e2, e3)
        if self.is_global and self.scale == 1:
            return m
        return m.decorate(ANGLE)


@dataclass(frozen=True)
class CokClass:
    """A cokernel class [m] with m a doubly-localized basis monomial."""

    m: Monomial
    order: int

    @property
    def name(self) -> Monomial:
        return self.m.decorate(BRACKET)


@dataclass
class AssembledGen:
    name: Monomial
    order: int
    kproj: dict = field(default_factory=dict)   # ker-monomial -> coefficient
    cexpr: dict = field(default_factory=dict)   # reserved for reporting


@dataclass
class AssembledCell:
    """One bidegree of the compactified stack with explicit generators.

    ``cok_in_gens`` writes each cokernel basis class as a combination of
    the cell generators (the short-exact-sequence inclusion).
    """

    stem: int
    filt: int
    gens: list
    kbasis: list            # list of KerClass
    cbasis: list            # list of CokClass
    cok_in_gens: list       # rows over gens, one per cbasis entry
    status: str             # "determined" | "resolved" | "zero"
    provenance: str = ""

    @property
    def orders(self):
        return tuple(g.order for g in self.gens)


@dataclass
class MVNode:
    stem: int
    filt: int
    kernel: list
    cokernel: list


class MayerVietoris:
    """The difference-map calculus for one context and coefficient ring."""

    def __init__(self, context: str, coefficients: int = 0):
        self.context = str(context)
        self.coefficients = coefficients
        self.plus = load_presentation(self.context, coefficients)
        self.loc_gen = {"2": "c4", "3": "c4", "away6": "c4"}[self.context]
        if coefficients == 2:
            self.loc_gen = "a1"
        elif coefficients == 3:
            self.loc_gen = "a2"
        self.p_a = self.plus.invert(self.loc_gen)
        self.p_d = self.plus.invert("D")
        self.p_ad = self.p_a.invert("D")
        self.rule = self.plus.map_rules[self.loc_gen]
        self.relations = self.plus.relations
        self._mod_cache: dict = {}

    # -- the kernel of D, monomial by monomial -------------------------------

    def kernel_classes(self, stems, filts) -> dict:
        """{(stem, filt): [KerClass, ...]} over the window."""
        out: dict = {}
        for key, entries in self.p_d.cells(stems, filts).items():
            kers = []
            for v, o in entries:
                k = self._kernel_part(v, o)
                if k is not None:
                    kers.append(k)
            if kers:
                out[key] = kers
        return out

    def _kernel_part(self, v: Monomial, order: int) -> KerClass | None:
        glob = self.plus.contains(v) is not None
        w = self.rule.image_monomial(v, self.relations)
        if w is None:
            return KerClass(v, 1, order, glob)
        if self.p_a.contains(w) is not None:
            return KerClass(v, 1, order, glob)
        ow = self.p_ad.contains(w)
        if ow is None:
            raise ValueError("image %s of %s not in the double localization" % (w, v))
        if order and ow and ow < order:
            return KerClass(v, ow, order // ow, False)
        return None

    def kernel_membership(self, v: Monomial) -> bool:
        """Full-class membership of a Delta-localized basis monomial."""
        w = self.rule.image_monomial(v, self.relations)
        return w is None or self.p_a.contains(w) is not None

    # -- the cokernel of D via the exponent criteria -------------------------

    def preimage_witness(self, m: Monomial) -> Monomial | None:
        """A Delta-localized preimage of a doubly-localized monomial under
        i_a, or None; this is the constructive side of the image criterion."""
        a = self.loc_gen
        if self.context == "away6" or (self.context == "3" and not self.coefficients):
            if m.exp("c4") >= 0:
                return m
            return None
        if self.coefficients == 3:
            if m.exp("a2") >= 0:
                return m
            return None
        if self.coefficients == 2:
            x, y, z = m.exp("h1"), m.exp("a1"), m.exp("D")
            if (x // 4) + (y // 4) < 0:
                return None
            k = max(0, -(y // 4))
            return Monomial.make({"h1": x - 4 * k, "g": k, "a1": y + 4 * k, "D": z - k})
        # 2-local integral: the floor/indicator witness of the cited recipe
        w, x, y, z = m.exp("h1"), m.exp("c4"), m.exp("c6"), m.exp("D")
        if w + 4 * x + 3 * y < 0:
            return None
        i = w // 4
        h = 1 if (w - 4 * i > 0 and y == 1) else 0
        j = w - 4 * i - h
        k = x + h + i
        l = y - h
        mm = z - i
        return Monomial.make({"b": h, "g": i, "h1": j, "c4": k, "c6": l, "D": mm})

    def in_image(self, m: Monomial) -> bool:
        if self.p_a.contains(m) is not None:   # hit by i_Delta
            return True
        return self.preimage_witness(m) is not None

    def cokernel_classes(self, stems, filts) -> dict:
        out: dict = {}
        for key, entries in self.p_ad.cells(stems, filts).items():
            coks = [CokClass(m, o) for m, o in entries if not self.in_image(m)]
            if coks:
                out[key] = coks
        return out

    # -- matrix-level node (for cross-checks and reports) --------------------

    def difference_matrix(self, stem, filt):
        """Bases and the integer matrix of D at one bidegree.

        Target monomials reached by images beyond the enumeration
        truncation are appended to the target basis, so the matrix is
        exact on the enumerated sources.
        """
        src_a = self.p_a.cell(stem, filt)
        src_d = self.p_d.cell(stem, filt)
        dst = list(self.p_ad.cell(stem, filt))
        index = {m: i for i, (m, _) in enumerate(dst)}

        def col(monomial):
            if monomial in index:
                return index[monomial]
            ow = self.p_ad.contains(monomial)
            if ow is None:
                raise ValueError("image %s outside the double localization"
                                 % (monomial,))
            index[monomial] = len(dst)
            dst.append((monomial, ow))
            return index[monomial]

        cols = []
        for m, o in src_a:
            cols.append(("a", col(m), 1))
        for m, o in src_d:
            w = self.rule.image_monomial(m, self.relations)
            if w is None:
                cols.append(("d", None, 0))
                continue
            coeff = -(2 ** max(w.e2, 0)) * (3 ** max(w.e3, 0))
            if w.neg:
                coeff = -coeff
            key = Monomial(w.exps, min(w.e2, 0), min(w.e3, 0), False, w.deco)
            cols.append(("d", col(key), coeff))
        rows = []
        for _, j, coeff in cols:
            row = [0] * len(dst)
            if j is not None and coeff:
                row[j] = coeff
            rows.append(row)
        src_orders = tuple(o for _, o in src_a) + tuple(o for _, o in src_d)
        dst_orders = tuple(o for _, o in dst)
        return src_a, src_d, dst, src_orders, dst_orders, rows

    def node(self, stem, filt) -> MVNode:
        kers = self.kernel_classes((stem, stem), (filt, filt)).get((stem, filt), [])
        coks = self.cokernel_classes((stem, stem), (filt, filt)).get((stem, filt), [])
        return MVNode(stem, filt, kers, coks)

    # -- assembling the cohomology of the compactified stack -----------------

    def assemble_window(self, stems, filts, resolver=True) -> dict:
        """All assembled cells over a window, SES ambiguities resolved."""
        lo_s, hi_s = stems
        lo_f, hi_f = filts
        kers = self.kernel_classes(stems, (max(lo_f, 0), hi_f))
        # cokernel classes contribute one filtration up and one stem left
        coks = self.cokernel_classes((lo_s, hi_s + 1), (max(lo_f - 1, 0), hi_f))
        cells: dict = {}
        keys = set(kers)
        keys.update((x - 1, y + 1) for (x, y) in coks)
        for (x, y) in sorted(keys):
            if not (lo_f <= y <= hi_f and lo_s <= x <= hi_s):
                continue
            k = kers.get((x, y), [])
            c = coks.get((x + 1, y - 1), [])
            cells[(x, y)] = self._assemble_cell(x, y, k, c, resolver)
        return cells

    def assemble(self, stem, filt, resolver=True) -> AssembledCell:
        k = self.kernel_classes((stem, stem), (filt, filt)).get((stem, filt), [])
        c = self.cokernel_classes((stem + 1, stem + 1), (filt - 1, filt - 1)).get(
            (stem + 1, filt - 1), [])
        return self._assemble_cell(stem, filt, k, c, resolver)

    def _assemble_cell(self, x, y, kers, coks, resolver) -> AssembledCell:
        if not kers and not coks:
            return AssembledCell(x, y, [], [], [], [], "zero")
        if not coks:
            gens = [AssembledGen(k.name, k.order, {k.v: k.scale}) for k in kers]
            return AssembledCell(x, y, gens, kers, [], [], "determined")
        if not kers:
            gens = [AssembledGen(c.name, c.order, {}) for c in coks]
            return AssembledCell(x, y, gens, kers, coks,
                                 ab.identity(len(coks)), "determined")
        c_orders = tuple(c.order for c in coks)
        k_orders = tuple(k.order for k in kers)
        if self.coefficients:
            # mod-n cohomology is a Z/n module, so the sequence splits
            target = ab.normalized_orders(list(c_orders) + list(k_orders))
            provenance = "split (mod %d coefficients)" % self.coefficients
        else:
            types = ab.extension_types(c_orders, k_orders)
            if len(types) == 1:
                target = types[0]
                provenance = "unique extension"
            elif not resolver:
                raise ValueError("ambiguous node at (%d, %d) without resolver" % (x, y))
            else:
                target = self._resolve_mod_n(x, y, c_orders, k_orders, types)
                provenance = "resolved mod %d" % self._mod_n()
        return self._build_extension(x, y, kers, coks, target, provenance)

    def _mod_n(self) -> int:
        return {"2": 2, "3": 3}[self.context]

    def mod_pipeline(self) -> "MayerVietoris":
        n = self._mod_n()
        if n not in self._mod_cache:
            self._mod_cache[n] = MayerVietoris(self.context, n)
        return self._mod_cache[n]

    def mod_dim(self, stem, filt) -> int:
        """dim over Z/n of the assembled mod-n cohomology at one cell."""
        mod = self.mod_pipeline()
        cell = mod.assemble(stem, filt, resolver=False)
        return len(cell.gens)

    def _resolve_mod_n(self, x, y, c_orders, k_orders, types):
        """Pick the unique candidate consistent with the mod-n dimensions
        through the universal-coefficient order bookkeeping; anything else
        is a hard failure pointing at a transcription error."""
        n = self._mod_n()
        below = self.assemble(x + 1, y - 1) if y >= 1 else None
        above = self.assemble(x - 1, y + 1)
        for nb in (below, above):
            if nb is not None and len(ab.extension_types(
                    tuple(c.order for c in nb.cbasis),
                    tuple(k.order for k in nb.kbasis))) > 1 and nb.status == "ambiguous":
                raise ValueError("stacked ambiguities at (%d,%d)" % (x, y))
        dim_below = self.mod_dim(x + 1, y - 1) if y >= 1 else 0
        dim_here = self.mod_dim(x, y)
        consistent = []
        for cand in types:
            ok = True
            if y >= 1:
                want = ab.mod_rank(below.orders if below else (), n) + ab.tor_rank(cand, n)
                ok = ok and want == dim_below
            want_here = ab.mod_rank(cand, n) + ab.tor_rank(above.orders, n)
            ok = ok and want_here == dim_here
            if ok:
                consistent.append(cand)
        if len(consistent) != 1:
            raise ValueError(
                "mod-%d resolution failed at (%d,%d): candidates %s, mod dims (%d, %d)"
                % (n, x, y, consistent or types, dim_below, dim_here))
        return consistent[0]

    def _build_extension(self, x, y, kers, coks, target, provenance) -> AssembledCell:
        """Explicit generators for the resolved extension class.

        Scans extension data in a canonical order that favours attaching
        the nontrivial extension to the sort-first cokernel generator (the
        chart convention) and keeps the first datum whose middle group has
        the resolved isomorphism type.
        """
        from itertools import product as iproduct
        from math import gcd

        nc, nk = len(coks), len(kers)
        c_orders = [c.order for c in coks]
        k_orders = [k.order for k in kers]
        per_k = []
        for t in k_orders:
            choices = list(iproduct(*[range(gcd(o, t) if o else t) for o in c_orders]))
            choices.sort(key=lambda tup: (sum(1 for v in tup if v),
                                          [v == 0 for v in tup], list(tup)))
            per_k.append(choices)
        found = None
        phi = None
        for phi in iproduct(*per_k):
            orders, gens = self._extension_group(c_orders, k_orders, phi)
            if ab.normalized_orders(tuple(orders)) == tuple(target):
                found = (orders, gens)
                break
        if found is None:
            raise ValueError("no extension matches resolved type %s at (%d,%d)"
                             % (target, x, y))
        orders, gens = found
        ambient = tuple(orders)
        # express each cokernel class in the new generators modulo the
        # extension's defining relations (which are not diagonal)
        rels = self._extension_relations(c_orders, k_orders, phi)
        stacked = ab.stack(gens, rels) if rels else [g[:] for g in gens]
        cok_rows = []
        for i in range(nc):
            vec = [0] * (nc + nk)
            vec[i] = 1
            sol = ab.solve_left(stacked, vec, cols=nc + nk)
            if sol is None:
                raise ValueError("cokernel class not expressible at (%d,%d)" % (x, y))
            coeffs = sol[: len(gens)]
            cok_rows.append([c % o if o else c for c, o in zip(coeffs, ambient)])
        out_gens = []
        for r, (row, o) in enumerate(zip(gens, orders)):
            kproj = {}
            for j, k in enumerate(kers):
                coeff = row[nc + j] * k.scale
                if k.order:
                    coeff %= k.order * k.scale
                if coeff:
                    kproj[k.v] = coeff
            out_gens.append(AssembledGen(
                self._gen_name(r, row, o, kers, coks, cok_rows, ambient),
                o, kproj))
        return AssembledCell(x, y, out_gens, kers, coks, cok_rows,
                             "resolved", provenance)

    @staticmethod
    def _extension_relations(c_orders, k_orders, phi):
        """Defining relations of the extension with datum phi: phi[j][i]
        picks where t_j times the lift of the j-th kernel generator lands
        in C/(t_j C)."""
        from math import gcd
        nc, nk = len(c_orders), len(k_orders)
        n = nc + nk
        rels = []
        for i, o in enumerate(c_orders):
            if o:
                row = [0] * n
                row[i] = o
                rels.append(row)
        for j, t in enumerate(k_orders):
            row = [0] * n
            row[nc + j] = t
            for i, o in enumerate(c_orders):
                step = (o // gcd(o, t)) if o else 1
                row[i] = -phi[j][i] * step
            rels.append(row)
        return rels

    @classmethod
    def _extension_group(cls, c_orders, k_orders, phi):
        """Middle group of the extension: (orders, generator rows over the
        c+k coordinate space)."""
        n = len(c_orders) + len(k_orders)
        rels = cls._extension_relations(c_orders, k_orders, phi)
        if not rels:
            return [0] * n, ab.identity(n)
        sf = ab.smith_normal_form(rels, cols=n)
        orders, gens = [], []
        for i in range(n):
            o = sf.d[i][i] if i < sf.rank else 0
            if o == 1:
                continue
            orders.append(o)
            gens.append(sf.vinv[i][:])
        pairs = sorted(zip(orders, gens), key=lambda p: (p[0] == 0, p[0]))
        return [p[0] for p in pairs], [p[1] for p in pairs]

    def _gen_name(self, r, row, order, kers, coks, cok_rows, ambient) -> Monomial:
        """Chart-convention name for a resolved generator.

        If some cokernel class is t times this generator alone, the name
        is the bracket with the 1/t scalar (t a power of 2 or 3); else a
        unit kernel projection gives the angle name; else fall back to the
        dominant coordinate."""
        for i, c in enumerate(coks):
            rowc = cok_rows[i]
            support = [idx for idx, v in enumerate(rowc) if v]
            if support == [r]:
                t = rowc[r]
                o = ambient[r]
                if o:
                    t = min(t % o, (-t) % o)
                t = abs(t)
                e2 = e3 = 0
                while t and t % 2 == 0:
                    t //= 2
                    e2 += 1
                while t and t % 3 == 0:
                    t //= 3
                    e3 += 1
                if t == 1:
                    return c.m.scale(-e2, -e3).decorate(BRACKET)
        nc = len(coks)
        for j, k in enumerate(kers):
            coeff = row[nc + j]
            if k.order:
                coeff %= k.order
            if coeff == 1 or (k.order and coeff == k.order - 1):
                return k.name
        best = max(range(len(row)), key=lambda idx: abs(row[idx]))
        if best < nc:
            return coks[best].name
        return kers[best - nc].name
