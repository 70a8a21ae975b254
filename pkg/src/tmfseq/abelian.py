"""Exact linear algebra over Z and finitely generated abelian groups.

Matrices are dense lists of rows of Python ints; all vectors are row
vectors, and a morphism G -> H is a matrix A with one row per generator
of G, so images are computed as v @ A and morphisms compose by matrix
multiplication.

Groups are always presented as a direct sum of cyclics: a tuple of
``orders`` where 0 means an infinite cyclic summand and k >= 1 a copy of
Z/k.  Kernels, cokernels and subquotients are computed by Smith normal
form with full (invertible) transform tracking, so every answer comes
with generator expressions in the coordinates of the ambient group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


Matrix = list  # list[list[int]]


# ---------------------------------------------------------------------------
# basic matrix helpers


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch in mat_mul")
    if not b:
        return [[] for _ in a]
    cols = len(b[0])
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        acc = out[i]
        for k, aik in enumerate(row):
            if aik:
                brow = b[k]
                for j in range(cols):
                    acc[j] += aik * brow[j]
    return out


def vec_mat(v: list, m: Matrix) -> list:
    if len(v) != len(m):
        raise ValueError("shape mismatch in vec_mat")
    cols = len(m[0]) if m else 0
    out = [0] * cols
    for k, vk in enumerate(v):
        if vk:
            row = m[k]
            for j in range(cols):
                out[j] += vk * row[j]
    return out


def stack(*mats: Matrix) -> Matrix:
    out = []
    for m in mats:
        out.extend(mat_copy(m))
    return out


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """U @ M @ V == D with U, V unimodular and D diagonal o_1 | o_2 | ...

    ``uinv`` and ``vinv`` are the inverses, tracked during reduction so no
    separate inversion is ever needed.
    """

    d: Matrix
    u: Matrix
    v: Matrix
    uinv: Matrix
    vinv: Matrix
    orders: tuple  # nonzero diagonal entries, then implicit zeros

    @property
    def rank(self) -> int:
        return len(self.orders)


def smith_normal_form(m: Matrix, cols: int | None = None) -> SmithForm:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Pivot selection picks the nonzero entry of least absolute value in the
    remaining block; matrices here are tiny so this is plenty.
    """
    rows = len(m)
    if cols is None:
        cols = len(m[0]) if rows else 0
    a = [row[:] + [0] * (cols - len(row)) for row in m] if rows else []
    u = identity(rows)
    uinv = identity(rows)
    v = identity(cols)
    vinv = identity(cols)

    def row_op(i, j, q):
        # row_i -= q * row_j ; U does the same, Uinv the inverse column op
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]
        for r in range(rows):
            uinv[r][j] += q * uinv[r][i]

    def col_op(i, j, q):
        # col_i -= q * col_j
        for r in range(len(a)):
            a[r][i] -= q * a[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]
        vinv[j] = [x + q * y for x, y in zip(vinv[j], vinv[i])]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in range(rows):
            uinv[r][i], uinv[r][j] = uinv[r][j], uinv[r][i]

    def col_swap(i, j):
        for r in range(len(a)):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in range(rows):
            uinv[r][i] = -uinv[r][i]

    t = 0
    while True:
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        row_swap(i, t)
                    dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        col_swap(j, t)
                    dirty = True
            if not dirty:
                break
        # enforce divisibility: pivot must divide the rest of the block
        p = a[t][t]
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % p:
                    row_op(t, i, -1)  # add row i to row t, retry block
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if p < 0:
            row_negate(t)
        t += 1

    orders = tuple(a[i][i] for i in range(min(rows, cols)) if a[i][i] != 0)
    return SmithForm(d=a, u=u, v=v, uinv=uinv, vinv=vinv, orders=orders)


def left_nullspace(m: Matrix, rows: int | None = None, cols: int | None = None) -> Matrix:
    """Basis of { x : x @ M == 0 } as rows (a full-rank lattice basis)."""
    if rows is None:
        rows = len(m)
    if cols is None:
        cols = len(m[0]) if m else 0
    if rows == 0:
        return []
    sf = smith_normal_form(m, cols)
    return [sf.u[i][:] for i in range(sf.rank, rows)]


def solve_left(m: Matrix, target: list, cols: int | None = None) -> list | None:
    """One solution x of x @ M == target, or None if there is none."""
    rows = len(m)
    if cols is None:
        cols = len(m[0]) if m else 0
    if len(target) != cols:
        raise ValueError("bad target length")
    sf = smith_normal_form(m, cols)
    # x M = t  <=>  (x U^-1)(U M V) = t V  <=>  y D = t V
    tv = vec_mat(target, sf.v)
    y = [0] * rows
    for i in range(min(rows, cols)):
        d = sf.d[i][i]
        if d:
            if tv[i] % d:
                return None
            y[i] = tv[i] // d
        elif tv[i]:
            return None
    for i in range(min(rows, cols), cols):
        if tv[i]:
            return None
    return vec_mat(y, sf.u)


# ---------------------------------------------------------------------------
# finitely generated abelian groups presented as sums of cyclics


@dataclass(frozen=True)
class CyclicDecomposition:
    """Invariant-factor form of an integer matrix: orders o_1 | o_2 | ...

    Zero entries of ``orders`` denote infinite cyclic summands and always
    trail the finite ones.
    """

    orders: tuple
    u: tuple = ()
    v: tuple = ()

    def __str__(self) -> str:
        return group_name(self.orders)


def group_name(orders) -> str:
    finite = [o for o in orders if o > 1]
    free = sum(1 for o in orders if o == 0)
    parts = []
    if free == 1:
        parts.append("Z")
    elif free > 1:
        parts.append("Z^%d" % free)
    parts.extend("Z/%d" % o for o in sorted(finite))
    return " + ".join(parts) if parts else "0"


def normalized_orders(orders) -> tuple:
    """Drop order-1 summands, sort finite ones, free parts last."""
    finite = sorted(o for o in orders if o > 1)
    free = [0] * sum(1 for o in orders if o == 0)
    return tuple(finite + free)


def torsion_order(orders) -> int:
    t = 1
    for o in orders:
        if o > 1:
            t *= o
    return t


def free_rank(orders) -> int:
    return sum(1 for o in orders if o == 0)


def relation_rows(orders) -> Matrix:
    """Rows spanning the relation lattice of ⊕ Z/o_i inside Z^n."""
    n = len(orders)
    rels = []
    for i, o in enumerate(orders):
        if o:
            row = [0] * n
            row[i] = o
            rels.append(row)
    return rels


@dataclass
class Subquotient:
    """A subquotient of an ambient ⊕ Z/o_i with explicit generators.

    ``gens`` are rows in ambient coordinates, one per cyclic summand of
    ``orders`` (orders[i] == 0 meaning infinite order); ``orders`` contain
    no 1s.
    """

    orders: tuple
    gens: Matrix


def presented_group(ambient_orders, gen_rows: Matrix) -> Subquotient:
    """Isomorphism type and clean generators of the subgroup <gen_rows>."""
    n = len(ambient_orders)
    k = len(gen_rows)
    if k == 0:
        return Subquotient((), [])
    rels = relation_rows(ambient_orders)
    stacked = stack(gen_rows, rels)
    # relations among the abstract generators: c with c.G in relation lattice
    null = left_nullspace(stacked, rows=len(stacked), cols=n)
    relmat = [row[:k] for row in null]
    sf = smith_normal_form(relmat, cols=k) if relmat else smith_normal_form([], cols=k)
    # quotient Z^k / rowspan(relmat): coordinates y = x V, gens = rows of V^-1
    orders = []
    gens = []
    rank = sf.rank
    for i in range(k):
        o = sf.d[i][i] if i < rank else 0
        if o == 1:
            continue
        newgen = vec_mat(sf.vinv[i] if sf.vinv else [0] * k, gen_rows)
        orders.append(o)
        gens.append(newgen)
    # put free summands last
    pairs = sorted(zip(orders, gens), key=lambda p: (p[0] == 0, p[0]))
    return Subquotient(tuple(p[0] for p in pairs), [p[1] for p in pairs])


def quotient_group(ambient_orders, sub_rows: Matrix) -> Subquotient:
    """Quotient of ⊕ Z/o_i by the subgroup spanned by ``sub_rows``."""
    n = len(ambient_orders)
    rels = stack(sub_rows, relation_rows(ambient_orders))
    if not rels:
        return Subquotient(tuple(ambient_orders), identity(n))
    sf = smith_normal_form(rels, cols=n)
    orders = []
    gens = []
    for i in range(n):
        o = sf.d[i][i] if i < sf.rank else 0
        if o == 1:
            continue
        orders.append(o)
        gens.append(sf.vinv[i][:])
    pairs = sorted(zip(orders, gens), key=lambda p: (p[0] == 0, p[0]))
    return Subquotient(tuple(p[0] for p in pairs), [p[1] for p in pairs])


def reduce_in(ambient_orders, vec: list) -> list:
    """Reduce coefficients mod the ambient orders (canonical representative)."""
    return [x % o if o else x for x, o in zip(vec, ambient_orders)]


def express(ambient_orders, gen_rows: Matrix, vec: list) -> list | None:
    """Coefficients writing ``vec`` in terms of ``gen_rows`` modulo relations.

    Returns None when vec is not in the subgroup generated by gen_rows.
    """
    n = len(ambient_orders)
    rels = relation_rows(ambient_orders)
    stacked = stack(gen_rows, rels)
    sol = solve_left(stacked, list(vec), cols=n)
    if sol is None:
        return None
    return sol[: len(gen_rows)]


def kernel_of_map(src_orders, dst_orders, a: Matrix) -> Subquotient:
    """Kernel of the morphism ⊕Z/src -> ⊕Z/dst given by row matrix ``a``."""
    m = len(src_orders)
    if m == 0:
        return Subquotient((), [])
    rels = relation_rows(dst_orders)
    stacked = stack(a, rels)
    null = left_nullspace(stacked, rows=len(stacked), cols=len(dst_orders))
    xparts = [row[:m] for row in null]
    # the source relations are solutions too; include to be safe
    xparts.extend(relation_rows(src_orders))
    return presented_group(src_orders, xparts)


def cokernel_of_map(src_orders, dst_orders, a: Matrix) -> Subquotient:
    return quotient_group(dst_orders, mat_copy(a))


def image_rows(src_orders, a: Matrix) -> Matrix:
    return mat_copy(a)


def subquotient_homology(ambient_orders, kernel_rows: Matrix, image_rows_: Matrix) -> Subquotient:
    """Homology ker/im inside an ambient cyclic-sum group.

    Generators of the answer are expressed in ambient coordinates.
    """
    sub = presented_group(ambient_orders, kernel_rows)
    if not sub.orders:
        return Subquotient((), [])
    # express image inside the kernel's coordinates
    img = []
    for row in image_rows_:
        coeffs = express(ambient_orders, sub.gens, row)
        if coeffs is None:
            raise ValueError("image not contained in kernel (d*d != 0?)")
        img.append(coeffs)
    q = quotient_group(sub.orders, img)
    gens = [vec_mat(g, sub.gens) for g in q.gens]
    return Subquotient(q.orders, gens)


# ---------------------------------------------------------------------------
# tensor and Tor with Z/n, summand-wise (split universal coefficients)


def tensor_mod(orders, n: int) -> tuple:
    """Orders of G ⊗ Z/n computed summand by summand."""
    out = []
    for o in orders:
        if o == 0:
            out.append(n)
        else:
            g = gcd(o, n)
            if g > 1:
                out.append(g)
    return normalized_orders(out)


def tor_mod(orders, n: int) -> tuple:
    """Orders of Tor(G, Z/n) computed summand by summand."""
    out = []
    for o in orders:
        if o > 0:
            g = gcd(o, n)
            if g > 1:
                out.append(g)
    return normalized_orders(out)


def mod_rank(orders, n: int) -> int:
    return len(tensor_mod(orders, n))


def tor_rank(orders, n: int) -> int:
    return len(tor_mod(orders, n))


# ---------------------------------------------------------------------------
# extensions 0 -> C -> H -> K -> 0: enumerate middle isomorphism types


def extension_types(c_orders, k_orders) -> list:
    """All isomorphism types of middle groups of extensions of K by C.

    Brute force over the classifying choices: each finite cyclic summand
    Z/t of K lifts to a generator x with t*x landing anywhere in C/tC.
    Fine here because every ambiguous Mayer-Vietoris node is tiny.
    """
    c_orders = normalized_orders(c_orders)
    k_orders = normalized_orders(k_orders)
    tors = [o for o in k_orders if o > 0]
    frees = [o for o in k_orders if o == 0]
    nc = len(c_orders)
    choices_per = []
    for t in tors:
        opts = []
        ranges = []
        for o in c_orders:
            m = gcd(o, t) if o else t
            ranges.append(m)
        idx = [0] * nc

        def rec(i):
            if i == nc:
                opts.append(tuple(idx))
                return
            for val in range(ranges[i]):
                idx[i] = val
                rec(i + 1)
            idx[i] = 0

        rec(0)
        choices_per.append(opts)

    types = set()

    def build(choice_rows):
        # presentation: gens = C-gens + K-lifts; relations: o_i c_i = 0,
        # t_j k_j = phi_j (in C), free K-gens no relation
        ngen = nc + len(tors) + len(frees)
        rels = []
        for i, o in enumerate(c_orders):
            if o:
                row = [0] * ngen
                row[i] = o
                rels.append(row)
        for j, t in enumerate(tors):
            row = [0] * ngen
            row[nc + j] = t
            phi = choice_rows[j]
            for i in range(nc):
                # t*k_j = phi scaled into C: entry means multiples of (o_i/m)*c_i
                o = c_orders[i]
                step = (o // gcd(o, t)) if o else 0
                row[i] = -phi[i] * step if o else -phi[i]
            rels.append(row)
        sf = smith_normal_form(rels, cols=ngen) if rels else None
        if sf is None:
            return tuple([0] * ngen)
        orders = []
        for i in range(ngen):
            o = sf.d[i][i] if i < sf.rank else 0
            if o != 1:
                orders.append(o)
        return normalized_orders(orders)

    if not tors:
        return [normalized_orders(list(c_orders) + list(k_orders))]

    def rec2(j, acc):
        if j == len(tors):
            types.add(build(acc))
            return
        for opt in choices_per[j]:
            rec2(j + 1, acc + [opt])

    rec2(0, [])
    return sorted(types)


# ---------------------------------------------------------------------------
# brute-force oracle used by the tests


def brute_force_quotient_order(span_rows: Matrix, cols: int, cap: int = 10 ** 4) -> int | None:
    """Order of Z^cols / <span_rows> by breadth-first coset enumeration.

    Builds a triangular lattice basis by integer row operations only (no
    column operations, no divisibility chain) and then walks the quotient
    group by adding unit vectors until closure.  Returns None when the
    quotient is infinite or has more than ``cap`` elements.  This is the
    independent oracle the Smith-normal-form cokernel is tested against.
    """
    basis: dict = {}  # lead column -> row with positive lead entry

    def insert(row):
        row = row[:]
        while True:
            lead = next((j for j, x in enumerate(row) if x), None)
            if lead is None:
                return
            if row[lead] < 0:
                row = [-x for x in row]
            if lead not in basis:
                basis[lead] = row
                return
            b = basis[lead]
            q = row[lead] // b[lead]
            row = [x - q * y for x, y in zip(row, b)]
            if row[lead]:
                basis[lead] = row
                row = b

    for r in span_rows:
        insert(r)

    if len(basis) < cols:
        return None

    def canon(vec):
        red = list(vec)
        for j in range(cols):
            if red[j]:
                b = basis[j]
                q = red[j] // b[j]
                red = [x - q * y for x, y in zip(red, b)]
        return tuple(red)

    zero = tuple([0] * cols)
    seen = {zero}
    frontier = [zero]
    units = [tuple(1 if i == j else 0 for i in range(cols)) for j in range(cols)]
    while frontier:
        nxt = []
        for rep in frontier:
            for e in units:
                cand = canon([a + b for a, b in zip(rep, e)])
                if cand not in seen:
                    seen.add(cand)
                    if len(seen) > cap:
                        return None
                    nxt.append(cand)
        frontier = nxt
    return len(seen)
