"""Formal monomials on the named generators of the cohomology rings.

A monomial is a product of generator powers with a scalar of the form
(+/-) 2^a 3^b and an optional decoration: plain, bracket ``[..]`` for
classes born in a Mayer-Vietoris cokernel, or angle ``<..>`` for classes
born in a kernel.  Brackets raise the cohomological filtration by one;
angles do not shift degree.

The text syntax used by every data file and report is
``2^a 3^b c4^j c6^k D^l h1^i ...`` with ``[...]`` and ``<...>`` wrapping,
a leading ``-`` for sign, and ``1/4``-style fractions allowed only inside
brackets.
"""

from __future__ import annotations

from dataclasses import dataclass, field


# canonical alphabet order for printing, enumeration and tie-breaking
ALPHABET = ["D", "c4", "c6", "h1", "h2", "alpha", "beta", "b", "c", "d", "g",
            "a1", "a2", "x", "y", "r", "s", "t", "f", "gp"]
_RANK = {n: i for i, n in enumerate(ALPHABET)}


def _name_key(name: str):
    return (_RANK.get(name, len(ALPHABET)), name)


@dataclass(frozen=True)
class GeneratorSymbol:
    """A named generator with bidegree (q = filtration, p = internal degree).

    ``order`` is the additive order of the class: 0 for a lattice
    (Z or Z localized) generator, a prime power for torsion.  ``contexts``
    names the prime contexts the generator exists in.
    """

    name: str
    q: int
    p: int
    order: int = 0
    contexts: tuple = ("2", "3", "away6")

    @property
    def stem(self) -> int:
        return self.p - self.q


PLAIN, BRACKET, ANGLE = "", "[]", "<>"


@dataclass(frozen=True)
class Monomial:
    """Scalar times a product of generator powers, possibly decorated."""

    exps: tuple = ()           # sorted tuple of (name, exponent != 0)
    e2: int = 0                # exponent of 2 in the scalar
    e3: int = 0                # exponent of 3 in the scalar
    neg: bool = False
    deco: str = PLAIN

    # -- construction -----------------------------------------------------

    @staticmethod
    def make(exps=None, e2=0, e3=0, neg=False, deco=PLAIN) -> "Monomial":
        items = []
        if exps:
            d = {}
            for name, e in (exps.items() if isinstance(exps, dict) else exps):
                if e:
                    d[name] = d.get(name, 0) + e
            items = sorted(((n, e) for n, e in d.items() if e), key=lambda t: _name_key(t[0]))
        return Monomial(tuple(items), e2, e3, neg, deco)

    @staticmethod
    def one() -> "Monomial":
        return Monomial()

    def exp(self, name: str) -> int:
        for n, e in self.exps:
            if n == name:
                return e
        return 0

    def undecorated(self) -> "Monomial":
        return Monomial(self.exps, self.e2, self.e3, self.neg, PLAIN)

    def decorate(self, deco: str) -> "Monomial":
        return Monomial(self.exps, self.e2, self.e3, self.neg, deco)

    def scale(self, e2=0, e3=0) -> "Monomial":
        return Monomial(self.exps, self.e2 + e2, self.e3 + e3, self.neg, self.deco)

    def times(self, other: "Monomial", deco=None) -> "Monomial":
        """Raw product: exponents added, scalars multiplied, no rewriting."""
        if deco is None:
            if self.deco and other.deco:
                raise ValueError("product of two decorated monomials has no raw form")
            deco = self.deco or other.deco
        d = dict(self.exps)
        for n, e in other.exps:
            d[n] = d.get(n, 0) + e
        return Monomial.make(d, self.e2 + other.e2, self.e3 + other.e3,
                             self.neg != other.neg, deco)

    def power(self, k: int) -> "Monomial":
        if k < 0 and self.deco:
            raise ValueError("cannot invert a decorated monomial")
        return Monomial.make({n: e * k for n, e in self.exps},
                             self.e2 * k, self.e3 * k,
                             self.neg and k % 2 == 1, self.deco)

    # -- grading ----------------------------------------------------------

    def bidegree(self, table) -> tuple:
        """(q, p) of the monomial; brackets raise q by one.

        ``table`` maps generator names to GeneratorSymbol.  Unknown
        generators are rejected by name.
        """
        q = p = 0
        for n, e in self.exps:
            try:
                g = table[n]
            except KeyError:
                raise KeyError("unknown generator %r" % n) from None
            q += e * g.q
            p += e * g.p
        if self.deco == BRACKET:
            q += 1
        return (q, p)

    def stem_filt(self, table) -> tuple:
        q, p = self.bidegree(table)
        return (p - q, q)

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        if self.e2 or self.e3:
            num = 1
            den = 1
            for base, e in ((2, self.e2), (3, self.e3)):
                if e >= 0:
                    num *= base ** e
                else:
                    den *= base ** (-e)
            if den == 1:
                if num != 1 or not self.exps:
                    parts.append(str(num))
            else:
                parts.append("%d/%d" % (num, den))
        for n, e in self.exps:
            parts.append(n if e == 1 else "%s^%d" % (n, e))
        if not parts:
            parts = ["1"]
        body = " ".join(parts)
        if self.deco == BRACKET:
            body = "[%s]" % body
        elif self.deco == ANGLE:
            body = "<%s>" % body
        return ("-" if self.neg else "") + body

    def sort_key(self, table=None):
        """Graded-lexicographic key with the fixed alphabet order."""
        total = sum(abs(e) for _, e in self.exps)
        ranked = tuple((_name_key(n), -e) for n, e in self.exps)
        return (self.deco, total, ranked, self.e2, self.e3, self.neg)


def _factor_scalar(text: str) -> tuple:
    """Split an integer literal into (e2, e3); reject other prime factors."""
    n = int(text)
    if n == 0:
        raise ValueError("zero scalar in monomial")
    neg = n < 0
    n = abs(n)
    e2 = e3 = 0
    while n % 2 == 0:
        n //= 2
        e2 += 1
    while n % 3 == 0:
        n //= 3
        e3 += 1
    if n != 1:
        raise ValueError("scalar %s is not of the form ±2^a 3^b" % text)
    return e2, e3, neg


def parse_monomial(text: str) -> Monomial:
    s = text.strip()
    neg = False
    if s.startswith("-"):
        neg = True
        s = s[1:].strip()
    deco = PLAIN
    if s.startswith("[") and s.endswith("]"):
        deco, s = BRACKET, s[1:-1].strip()
    elif s.startswith("<") and s.endswith(">"):
        deco, s = ANGLE, s[1:-1].strip()
    e2 = e3 = 0
    exps: dict = {}
    if s in ("1", ""):
        return Monomial.make({}, e2, e3, neg, deco)
    for tok in s.replace("*", " ").split():
        if "/" in tok:
            num, den = tok.split("/")
            a2, a3, n1 = _factor_scalar(num)
            b2, b3, n2 = _factor_scalar(den)
            e2 += a2 - b2
            e3 += a3 - b3
            neg ^= n1 ^ n2
            continue
        if "^" in tok:
            base, _, ex = tok.partition("^")
            k = int(ex)
        else:
            base, k = tok, 1
        if base.lstrip("-").isdigit():
            a2, a3, n1 = _factor_scalar(base)
            e2 += a2 * k
            e3 += a3 * k
            neg ^= n1 and k % 2 == 1
        elif base == "1":
            continue
        else:
            exps[base] = exps.get(base, 0) + k
    return Monomial.make(exps, e2, e3, neg, deco)


# ---------------------------------------------------------------------------
# integer combinations of monomials


class Combination(dict):
    """Finite Z-linear combination of monomials (dict Monomial -> int)."""

    @staticmethod
    def of(*terms) -> "Combination":
        c = Combination()
        for coeff, mono in terms:
            c.add(mono, coeff)
        return c

    def add(self, mono: Monomial, coeff: int = 1) -> "Combination":
        # fold the monomial's sign and nonnegative 2/3 scalar into the
        # coefficient so that basis keys stay positive and scalar-free
        if mono.neg:
            coeff = -coeff
            mono = Monomial(mono.exps, mono.e2, mono.e3, False, mono.deco)
        if mono.e2 > 0 or mono.e3 > 0:
            if mono.e2 > 0:
                coeff *= 2 ** mono.e2
            if mono.e3 > 0:
                coeff *= 3 ** mono.e3
            mono = Monomial(mono.exps, min(mono.e2, 0), min(mono.e3, 0), False, mono.deco)
        new = self.get(mono, 0) + coeff
        if new:
            self[mono] = new
        else:
            self.pop(mono, None)
        return self

    def scaled(self, k: int) -> "Combination":
        c = Combination()
        for m, x in self.items():
            if k * x:
                c[m] = k * x
        return c

    def plus(self, other: "Combination") -> "Combination":
        c = Combination(self)
        for m, x in other.items():
            c.add(m, x)
        return c

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for m in sorted(self, key=lambda m: m.sort_key()):
            x = self[m]
            parts.append(("%+d %s" % (x, m)) if abs(x) != 1 else ("+%s" % m if x > 0 else "-%s" % m))
        return " ".join(parts)


# ---------------------------------------------------------------------------
# rewriting


@dataclass
class RewriteRule:
    """lhs-pattern -> integer combination (applied by dividing lhs out once)."""

    lhs: Monomial
    rhs: Combination
    note: str = ""


@dataclass
class RelationSet:
    """Rewrite rules plus annihilator patterns for one prime context.

    Rules must decrease a fixed ranking (they do here: every rule either
    lowers the c6/h2 exponent or sends the monomial to a combination with
    fewer of the finite generators), so normalization terminates.

    ``orders`` maps generator names to additive orders (0 = lattice); a
    monomial's coefficient is reduced mod the gcd of the finite orders of
    its factors, which is what makes the rewriting confluent (for example
    1728*D*h1 = 0 because h1 is 2-torsion).
    """

    rules: list = field(default_factory=list)
    annihilators: list = field(default_factory=list)  # patterns meaning 0
    orders: dict = field(default_factory=dict)
    power_orders: list = field(default_factory=list)  # (pattern, order) refinements

    def add_rule(self, lhs: str, rhs_terms, note: str = "") -> None:
        rhs = Combination()
        for coeff, m in rhs_terms:
            rhs.add(parse_monomial(m) if isinstance(m, str) else m, coeff)
        self.rules.append(RewriteRule(parse_monomial(lhs), rhs, note))

    def add_annihilator(self, pattern: str, note: str = "") -> None:
        self.annihilators.append(parse_monomial(pattern))

    def add_power_order(self, pattern: str, order: int) -> None:
        self.power_orders.append((parse_monomial(pattern), order))

    def monomial_order(self, mono: Monomial) -> int:
        """Gcd of the finite additive orders of the factors (0 if none).

        ``power_orders`` refine this for specific patterns, e.g. g^2 has
        order 4 although g itself has order 8.
        """
        from math import gcd
        o = 0
        for n, e in mono.exps:
            if e > 0:
                go = self.orders.get(n, 0)
                if go:
                    o = gcd(o, go)
        for pat, po in self.power_orders:
            if self._matches(pat, mono):
                o = gcd(o, po)
        return o

    def _reduce_coeffs(self, comb: Combination) -> Combination:
        if not self.orders:
            return comb
        out = Combination()
        for m, c in comb.items():
            o = self.monomial_order(m)
            if o:
                c %= o
            if c:
                out[m] = c
        return out

    @staticmethod
    def _matches(pattern: Monomial, mono: Monomial) -> bool:
        for n, e in pattern.exps:
            x = mono.exp(n)
            if e > 0 and x < e:
                return False
            if e < 0 and x > e:
                return False
        return True

    @staticmethod
    def _divide(mono: Monomial, pattern: Monomial) -> Monomial:
        d = dict(mono.exps)
        for n, e in pattern.exps:
            d[n] = d.get(n, 0) - e
        return Monomial.make(d, mono.e2 - pattern.e2, mono.e3 - pattern.e3,
                             mono.neg != pattern.neg, mono.deco)

    def normalize_monomial(self, mono: Monomial, fuel: int = 64) -> Combination:
        # rules take priority over annihilator patterns, in list order; the
        # data files rely on this to sequence identifications correctly
        for rule in self.rules:
            if self._matches(rule.lhs, mono):
                if fuel <= 0:
                    raise RuntimeError("rewriting did not terminate on %s" % mono)
                rest = self._divide(mono, rule.lhs)
                out = Combination()
                for rm, rc in rule.rhs.items():
                    prod = rest.times(rm, deco=mono.deco)
                    for nm, nc in self.normalize_monomial(prod, fuel - 1).items():
                        out.add(nm, rc * nc)
                return out
        for pat in self.annihilators:
            if self._matches(pat, mono):
                return Combination()
        return Combination.of((1, mono))

    def normalize(self, comb: Combination) -> Combination:
        out = Combination()
        for m, c in comb.items():
            for nm, nc in self.normalize_monomial(m).items():
                out.add(nm, c * nc)
        return self._reduce_coeffs(out)


def multiply(m1: Monomial, m2: Monomial, relations: RelationSet) -> Combination:
    """Product in the presented ring, rewritten to normal form.

    A product of two bracket-decorated monomials is 0 by the cokernel
    product rule; one decorated factor decorates the result.
    """
    if m1.deco == BRACKET and m2.deco == BRACKET:
        return Combination()
    raw = m1.times(m2)
    return relations.normalize(Combination.of((1, raw)))


# ---------------------------------------------------------------------------
# window enumeration of exponent families


@dataclass(frozen=True)
class ExponentVar:
    """One free exponent of a family: generator name and inclusive range.

    ``lo`` may be None (unbounded below, an inverted generator) and ``hi``
    None (unbounded above).
    """

    name: str
    lo: int | None = 0
    hi: int | None = None


_INF = float("inf")


def _span(weight: int, lo, hi) -> tuple:
    """Min and max of weight*e over e in [lo, hi] (None = unbounded)."""
    cands = []
    for b in (lo, hi):
        if b is not None:
            cands.append(weight * b)
    if lo is None:
        cands.append(-_INF if weight > 0 else _INF if weight < 0 else 0)
    if hi is None:
        cands.append(_INF if weight > 0 else -_INF if weight < 0 else 0)
    return (min(cands), max(cands))


def enumerate_window(base: Monomial, variables, table, stems, filts) -> list:
    """All family members with (stem, filtration) inside the given window.

    Deterministic: results sorted by (stem, filtration, graded-lex key).
    Raises when a family direction cannot be bounded inside the finite
    window; this cannot happen for well-formed families since every
    generator has nonzero stem or a bounded exponent range.
    """
    import math

    lo_s, hi_s = stems
    lo_f, hi_f = filts
    if lo_s > hi_s or lo_f > hi_f:
        return []
    out = []
    q0, p0 = base.bidegree(table)

    weights = []
    for v in variables:
        g = table[v.name]
        weights.append((v, g.p - g.q, g.q))

    # suffix spans of achievable (stem, filt) contributions
    suf_s = [(0, 0)] * (len(weights) + 1)
    suf_f = [(0, 0)] * (len(weights) + 1)
    for i in range(len(weights) - 1, -1, -1):
        v, ws, wf = weights[i]
        s_lo, s_hi = _span(ws, v.lo, v.hi)
        f_lo, f_hi = _span(wf, v.lo, v.hi)
        suf_s[i] = (s_lo + suf_s[i + 1][0], s_hi + suf_s[i + 1][1])
        suf_f[i] = (f_lo + suf_f[i + 1][0], f_hi + suf_f[i + 1][1])

    def rec(i, exps, s_acc, f_acc):
        if i == len(weights):
            if lo_s <= s_acc <= hi_s and lo_f <= f_acc <= hi_f:
                d = dict(base.exps)
                for n, e in exps.items():
                    d[n] = d.get(n, 0) + e
                out.append(Monomial.make(d, base.e2, base.e3, base.neg, base.deco))
            return
        v, ws, wf = weights[i]
        lo_e, hi_e = v.lo, v.hi
        rs_lo, rs_hi = suf_s[i + 1]
        rf_lo, rf_hi = suf_f[i + 1]
        # window constraints on this exponent, stem then filtration
        for w, acc, lo_t, hi_t, r_lo, r_hi in (
            (ws, s_acc, lo_s, hi_s, rs_lo, rs_hi),
            (wf, f_acc, lo_f, hi_f, rf_lo, rf_hi),
        ):
            if w == 0:
                continue
            need_lo = lo_t - acc - r_hi   # w*e >= need_lo
            need_hi = hi_t - acc - r_lo   # w*e <= need_hi
            if w > 0:
                b_lo = None if need_lo == -_INF else math.ceil(need_lo / w)
                b_hi = None if need_hi == _INF else math.floor(need_hi / w)
            else:
                b_lo = None if need_hi == _INF else math.ceil(need_hi / w)
                b_hi = None if need_lo == -_INF else math.floor(need_lo / w)
            if b_lo is not None:
                lo_e = b_lo if lo_e is None else max(lo_e, b_lo)
            if b_hi is not None:
                hi_e = b_hi if hi_e is None else min(hi_e, b_hi)
        if lo_e is None or hi_e is None:
            raise ValueError("family direction %r not bounded by the window" % v.name)
        for e in range(lo_e, hi_e + 1):
            exps2 = dict(exps)
            if e:
                exps2[v.name] = exps2.get(v.name, 0) + e
            rec(i + 1, exps2, s_acc + ws * e, f_acc + wf * e)

    rec(0, {}, p0 - q0, q0)
    dedup = dict.fromkeys(out)
    return sorted(dedup, key=lambda m: (m.stem_filt(table), m.sort_key()))
