"""Low-degree cobar oracle for the Weierstrass Hopf algebroid.

The pair (A, Gamma) with A = Z[a1, a2, a3, a4, a6] and Gamma = A[r, s, t]
(the strict-isomorphism parameter u set to 1) encodes the groupoid of
Weierstrass curves and their strict coordinate changes.  The cochain
complex here is the cosimplicial cobar complex C^n = Gamma tensor_A n,
graded by weight (a_i has weight i, and r, s, t have weights 2, 1, 3);
its cohomology in a weight slice is finite integer linear algebra and
serves as an independent check on the ingested cohomology presentations
in small weights.

Everything is exact; elements are integer polynomials keyed by sorted
exponent tuples.  Tensor factors are encoded by suffixed variables r1,
s1, t1, r2, ... with all A-coefficients kept on the far left; moving a
coefficient across a tensor sign applies the right unit, which is how
the bimodule structure is realized.
"""

from __future__ import annotations

from . import abelian as ab

A_WEIGHTS = {"a1": 1, "a2": 2, "a3": 3, "a4": 4, "a6": 6}
RST_WEIGHTS = {"r": 2, "s": 1, "t": 3}

Poly = dict  # maps sorted ((var, exp), ...) tuples to int coefficients


def poly(terms=None) -> Poly:
    return dict(terms or {})


def p_const(c: int) -> Poly:
    return {(): c} if c else {}


def p_var(name: str, e: int = 1) -> Poly:
    return {((name, e),): 1}


def p_add(*ps: Poly) -> Poly:
    out: Poly = {}
    for p in ps:
        for k, c in p.items():
            n = out.get(k, 0) + c
            if n:
                out[k] = n
            else:
                out.pop(k, None)
    return out


def p_scale(p: Poly, c: int) -> Poly:
    return {k: c * v for k, v in p.items()} if c else {}


def _key_mul(k1, k2):
    d = dict(k1)
    for var, e in k2:
        d[var] = d.get(var, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def p_mul(p1: Poly, p2: Poly) -> Poly:
    out: Poly = {}
    for k1, c1 in p1.items():
        for k2, c2 in p2.items():
            k = _key_mul(k1, k2)
            n = out.get(k, 0) + c1 * c2
            if n:
                out[k] = n
            else:
                out.pop(k, None)
    return out


def p_pow(p: Poly, e: int) -> Poly:
    out = p_const(1)
    for _ in range(e):
        out = p_mul(out, p)
    return out


def var_weight(name: str) -> int:
    if name in A_WEIGHTS:
        return A_WEIGHTS[name]
    return RST_WEIGHTS[name[0]]


def key_weight(key) -> int:
    return sum(var_weight(v) * e for v, e in key)


def is_homogeneous(p: Poly) -> bool:
    ws = {key_weight(k) for k in p}
    return len(ws) <= 1


# ---------------------------------------------------------------------------
# the structure maps

# right unit eta_r with u = 1: the coefficient transformation under the
# strict coordinate change x -> x + r, y -> y + s x + t
_ETA_R = {
    "a1": lambda R, S, T: p_add(p_var("a1"), p_scale(S, 2)),
    "a2": lambda R, S, T: p_add(p_var("a2"), p_scale(p_mul(S, p_var("a1")), -1),
                                p_scale(R, 3), p_scale(p_mul(S, S), -1)),
    "a3": lambda R, S, T: p_add(p_var("a3"), p_mul(R, p_var("a1")), p_scale(T, 2)),
    # the r^2 coefficient is +3: forced by the cocycle checks d(Delta) = 0
    # and d(d(a6)) = 0, and by direct substitution into the curve equation
    "a4": lambda R, S, T: p_add(p_var("a4"), p_scale(p_mul(S, p_var("a3")), -1),
                                p_scale(p_mul(R, p_var("a2")), 2),
                                p_scale(p_mul(T, p_var("a1")), -1),
                                p_scale(p_mul(p_mul(R, S), p_var("a1")), -1),
                                p_scale(p_mul(S, T), -2),
                                p_scale(p_mul(R, R), 3)),
    "a6": lambda R, S, T: p_add(p_var("a6"), p_mul(R, p_var("a4")),
                                p_scale(p_mul(T, p_var("a3")), -1),
                                p_mul(p_mul(R, R), p_var("a2")),
                                p_scale(p_mul(p_mul(R, T), p_var("a1")), -1),
                                p_mul(R, p_mul(R, R)),
                                p_scale(p_mul(T, T), -1)),
}


def right_unit(p: Poly, factor: int = 1) -> Poly:
    """Apply eta_r, writing the r, s, t of the change into tensor factor
    ``factor`` (variables r<factor>, s<factor>, t<factor>).

    The input must be a polynomial in the a_i only.
    """
    R, S, T = (p_var("r%d" % factor), p_var("s%d" % factor), p_var("t%d" % factor))
    out: Poly = {}
    for key, c in p.items():
        term = p_const(c)
        for var, e in key:
            if var not in A_WEIGHTS:
                raise ValueError("right_unit input must lie in A, got %r" % var)
            term = p_mul(term, p_pow(_ETA_R[var](R, S, T), e))
        out = p_add(out, term)
    return out


def _shift_factors(p: Poly, delta: int, start: int = 1) -> Poly:
    """Rename tensor-factor variables x<i> -> x<i+delta> for i >= start."""
    out: Poly = {}
    for key, c in p.items():
        nk = []
        for var, e in key:
            if var in A_WEIGHTS:
                nk.append((var, e))
            else:
                idx = int(var[1:])
                nk.append((var[0] + str(idx + delta if idx >= start else idx), e))
        k = tuple(sorted(nk))
        out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


def _comultiply_factor(p: Poly, i: int) -> Poly:
    """Apply the comultiplication to tensor factor i, shifting later factors.

    psi is forced by composing two strict coordinate changes:
    r -> r' + r'', s -> s' + s'', t -> t' + t'' + s' r''.
    """
    out: Poly = {}
    ri, si, ti = "r%d" % i, "s%d" % i, "t%d" % i
    psi = {
        ri: p_add(p_var("r%d" % i), p_var("r%d" % (i + 1))),
        si: p_add(p_var("s%d" % i), p_var("s%d" % (i + 1))),
        ti: p_add(p_var("t%d" % i), p_var("t%d" % (i + 1)),
                  p_mul(p_var("s%d" % i), p_var("r%d" % (i + 1)))),
    }
    for key, c in p.items():
        term = p_const(c)
        for var, e in key:
            if var in A_WEIGHTS:
                term = p_mul(term, p_pow(p_var(var), e))
            else:
                idx = int(var[1:])
                if idx < i:
                    term = p_mul(term, p_pow(p_var(var), e))
                elif idx == i:
                    term = p_mul(term, p_pow(psi[var], e))
                else:
                    term = p_mul(term, p_pow(p_var(var[0] + str(idx + 1)), e))
        out = p_add(out, term)
    return out


def _coface0(p: Poly, degree: int) -> Poly:
    """Insert a unit factor in front: coefficients cross it via eta_r."""
    shifted = _shift_factors(p, 1)
    out: Poly = {}
    for key, c in shifted.items():
        apart = tuple((v, e) for v, e in key if v in A_WEIGHTS)
        rest = tuple((v, e) for v, e in key if v not in A_WEIGHTS)
        eta = right_unit({apart: 1}, factor=1)
        term = p_mul(p_scale(eta, c), {rest: 1})
        out = p_add(out, term)
    return out


def cobar_differential(p: Poly, degree: int) -> Poly:
    """Differential C^degree -> C^degree+1 of the cosimplicial cobar complex."""
    total = _coface0(p, degree)
    sign = -1
    for i in range(1, degree + 1):
        total = p_add(total, p_scale(_comultiply_factor(p, i), sign))
        sign = -sign
    total = p_add(total, p_scale(p, sign))  # append a unit factor on the right
    return total


# ---------------------------------------------------------------------------
# classical Weierstrass quantities (validated by the cocycle checks)


def _b_quantities():
    a1, a2, a3, a4, a6 = (p_var(n) for n in ("a1", "a2", "a3", "a4", "a6"))
    b2 = p_add(p_mul(a1, a1), p_scale(a2, 4))
    b4 = p_add(p_scale(a4, 2), p_mul(a1, a3))
    b6 = p_add(p_mul(a3, a3), p_scale(a6, 4))
    b8 = p_add(p_mul(p_mul(a1, a1), a6), p_scale(p_mul(a2, a6), 4),
               p_scale(p_mul(a1, p_mul(a3, a4)), -1), p_mul(a2, p_mul(a3, a3)),
               p_scale(p_mul(a4, a4), -1))
    return b2, b4, b6, b8


def c4_polynomial() -> Poly:
    b2, b4, _, _ = _b_quantities()
    return p_add(p_mul(b2, b2), p_scale(b4, -24))


def c6_polynomial() -> Poly:
    b2, b4, b6, _ = _b_quantities()
    return p_add(p_scale(p_mul(b2, p_mul(b2, b2)), -1),
                 p_scale(p_mul(b2, b4), 36), p_scale(b6, -216))


def discriminant_polynomial() -> Poly:
    b2, b4, b6, b8 = _b_quantities()
    return p_add(p_scale(p_mul(p_mul(b2, b2), b8), -1),
                 p_scale(p_mul(b4, p_mul(b4, b4)), -8),
                 p_scale(p_mul(b6, b6), -27),
                 p_scale(p_mul(b2, p_mul(b4, b6)), 9))


# ---------------------------------------------------------------------------
# weight-sliced bases and cohomology

MAX_WEIGHT = 12
MAX_S = 2
# C^3 at high weight is the expensive corner of the oracle; cap it
MAX_WEIGHT_FOR_S2 = 8


def _monomials_of_weight(vars_weights, w):
    """All exponent keys over the given (name, weight) list of total weight w."""
    items = list(vars_weights)

    def rec(i, remaining):
        if i == len(items):
            if remaining == 0:
                yield ()
            return
        name, wt = items[i]
        e = 0
        while e * wt <= remaining:
            for rest in rec(i + 1, remaining - e * wt):
                yield ((name, e),) + rest if e else rest
            e += 1

    for key in rec(0, w):
        yield tuple(sorted(key))


def basis(degree: int, weight: int) -> list:
    """Monomial basis of C^degree in one weight slice."""
    vars_weights = list(A_WEIGHTS.items())
    for i in range(1, degree + 1):
        for v, wt in RST_WEIGHTS.items():
            vars_weights.append(("%s%d" % (v, i), wt))
    keys = []
    for key in _monomials_of_weight(vars_weights, weight):
        # normalized (reduced) complex: drop keys with a unit tensor factor,
        # they carry no cohomology and bloat the slice
        used = {int(v[1:]) for v, _ in key if v not in A_WEIGHTS}
        if degree and used != set(range(1, degree + 1)):
            continue
        keys.append(key)
    keys.sort()
    return keys


def _normalized_project(p: Poly, degree: int) -> Poly:
    """Project onto the normalized complex (kill terms missing a factor)."""
    if degree == 0:
        return p
    out = {}
    for key, c in p.items():
        used = {int(v[1:]) for v, _ in key if v not in A_WEIGHTS}
        if used == set(range(1, degree + 1)):
            out[key] = c
    return out


def differential_matrix(degree: int, weight: int, mod: int = 0):
    """Matrix of d: C^degree -> C^degree+1 on the weight slice (rows map)."""
    src = basis(degree, weight)
    dst = basis(degree + 1, weight)
    index = {k: i for i, k in enumerate(dst)}
    rows = []
    for key in src:
        img = cobar_differential({key: 1}, degree)
        img = _normalized_project(img, degree + 1)
        row = [0] * len(dst)
        for k, c in img.items():
            if key_weight(k) != weight:
                raise AssertionError("differential not weight homogeneous")
            row[index[k]] = c % mod if mod else c
        rows.append(row)
    return src, dst, rows


class OracleRangeError(ValueError):
    """Requested slice is beyond the complexity guard of the oracle."""


def cohomology(degree: int, weight: int, mod: int = 0):
    """H^{degree, 2*weight}(A, Gamma) as (orders, generator keys).

    ``mod`` = 0 for integral coefficients, else a prime for Z/p ones.
    """
    if weight > MAX_WEIGHT or degree > MAX_S:
        raise OracleRangeError("oracle supports weight <= %d, s <= %d" % (MAX_WEIGHT, MAX_S))
    if degree == 2 and weight > MAX_WEIGHT_FOR_S2:
        raise OracleRangeError("s = 2 slices limited to weight <= %d" % MAX_WEIGHT_FOR_S2)
    src, dst, rows = differential_matrix(degree, weight, mod)
    n = len(src)
    if n == 0:
        return ab.Subquotient((), []), src
    ambient = tuple([mod] * n)
    dst_orders = tuple([mod] * len(dst))
    kernel = ab.kernel_of_map(ambient, dst_orders, rows)
    image = [] if degree == 0 else differential_matrix(degree - 1, weight, mod)[2]
    h = ab.subquotient_homology(ambient, kernel.gens, image)
    return h, src


def cohomology_low_range(context: str, max_weight: int, max_s: int):
    """Bidegree groups H^{s, 2w} for w <= max_weight, s <= max_s.

    ``context`` is one of "Z", "2", "3" (mod-p for the numeric ones is
    selected with mod_p=True by callers that want Z/p coefficients).
    """
    if max_weight > MAX_WEIGHT or max_s > MAX_S:
        raise OracleRangeError("oracle supports weight <= %d, s <= %d" % (MAX_WEIGHT, MAX_S))
    out = {}
    for w in range(0, max_weight + 1):
        for s in range(0, max_s + 1):
            if s == 2 and w > MAX_WEIGHT_FOR_S2:
                continue
            h, _ = cohomology(s, w, 0)
            out[(s, 2 * w)] = ab.normalized_orders(h.orders)
    return out
