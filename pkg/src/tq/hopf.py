"""Finite-dimensional ribbon Hopf algebra backends as exact structure tensors.

Conventions fixed here and relied on everywhere else:
  - product: SpMat (d x d^2), column j1*d + j2 holds e_{j1} e_{j2};
  - coproduct: SpMat (d^2 x d);
  - R is a vector in H (x) H (d^2 x 1);
  - `ribbon` is the twist element v: central, invertible, eps(v) = 1,
    S(v) = v, and Delta(v) = (R21 R)(v (x) v).  The categorical twist of a
    module is the action of v, and the pivot is g = u_D v with u_D the
    Drinfeld element sum S(b_i) a_i.
"""

import json
from fractions import Fraction

from .groups import FiniteGroup, group_by_name
from .linalg import SpMat, sp_solve
from .scalars import QQ, field_from_json


def flip_matrix(dim_a, dim_b):
    """A (x) B -> B (x) A on basis indices."""
    out = SpMat(dim_a * dim_b, dim_a * dim_b)
    for i in range(dim_a):
        for j in range(dim_b):
            out.rows[j * dim_a + i] = {i * dim_b + j: 1}
    return out


class HopfBackend:
    def __init__(self, name, field, dim, product, unit, coproduct, counit,
                 antipode, r_mat, ribbon):
        self.name = name
        self.field = field
        self.dim = dim
        self.product = product          # d x d^2
        self.unit = unit                # d x 1
        self.coproduct = coproduct      # d^2 x d
        self.counit = counit            # 1 x d
        self.antipode = antipode        # d x d
        self.r_mat = r_mat              # d^2 x 1
        self.ribbon = ribbon            # d x 1
        self._derived = {}

    ### derived elements, computed lazily and cached

    def _cache(self, key, fn):
        if key not in self._derived:
            self._derived[key] = fn()
        return self._derived[key]

    def left_mult(self, vec):
        """Matrix of x -> v x for a column vector v in H."""
        d = self.dim
        out = SpMat(d, d)
        for (i,), a in _col_items(vec):
            # e_i * e_j contributes to column j
            for k, row in self.product.rows.items():
                for col, c in row.items():
                    if col // d == i:
                        out.add_at(k, col % d, a * c)
        return out

    def right_mult(self, vec):
        d = self.dim
        out = SpMat(d, d)
        for (j,), a in _col_items(vec):
            for k, row in self.product.rows.items():
                for col, c in row.items():
                    if col % d == j:
                        out.add_at(k, col // d, a * c)
        return out

    def basis_left_mult(self, i):
        key = ("lmul", i)
        d = self.dim
        return self._cache(key, lambda: self.left_mult(
            SpMat.from_entries(d, 1, [(i, 0, 1)])))

    def antipode_inv(self):
        def build():
            inv = sp_solve(self.antipode, SpMat.identity(self.dim))
            assert inv is not None, "antipode is not invertible"
            return inv
        return self._cache("Sinv", build)

    def mult2(self):
        """Componentwise product on H (x) H: (d^2) x (d^4)."""
        def build():
            d = self.dim
            mid = SpMat.identity(d).kron(flip_matrix(d, d)).kron(SpMat.identity(d))
            return self.product.kron(self.product) @ mid
        return self._cache("mult2", build)

    def tensor_sq_apply(self, a, b):
        """Product of two vectors in the algebra H (x) H."""
        return self.mult2() @ a.kron(b)

    def r_inv(self):
        def build():
            cand = (self.antipode.kron(SpMat.identity(self.dim))) @ self.r_mat
            unit2 = self.unit.kron(self.unit)
            assert self.tensor_sq_apply(cand, self.r_mat) == unit2, \
                "(S x id)R is not inverse to R"
            assert self.tensor_sq_apply(self.r_mat, cand) == unit2
            return cand
        return self._cache("Rinv", build)

    def drinfeld_u(self):
        # u_D = sum S(b_i) a_i for R = sum a_i (x) b_i
        def build():
            d = self.dim
            out = SpMat(d, 1)
            sa = self.antipode
            for (idx,), c in _col_items(self.r_mat):
                i, j = divmod(idx, d)
                sb = sa @ SpMat.from_entries(d, 1, [(j, 0, 1)])
                prod = self.product @ sb.kron(SpMat.from_entries(d, 1, [(i, 0, 1)]))
                out = out + prod.scale(c)
            return out
        return self._cache("uD", build)

    def ribbon_inv(self):
        def build():
            lv = self.left_mult(self.ribbon)
            inv = sp_solve(lv, self.unit)
            assert inv is not None, "ribbon element is not invertible"
            return inv
        return self._cache("vinv", build)

    def pivot(self):
        def build():
            g = self.product @ self.drinfeld_u().kron(self.ribbon)
            return g
        return self._cache("pivot", build)

    def pivot_inv(self):
        def build():
            lg = self.left_mult(self.pivot())
            inv = sp_solve(lg, self.unit)
            assert inv is not None, "pivot is not invertible"
            return inv
        return self._cache("pivot_inv", build)

    def element_entries(self, vec):
        return [(i, c) for (i,), c in _col_items(vec)]

    def to_json(self):
        fd = self.field
        def tensor3(m):
            out = []
            d = self.dim
            for k, row in sorted(m.rows.items()):
                for col, c in sorted(row.items()):
                    out.append([col // d, col % d, k, fd.dumps(c)])
            return out
        def tensor_co(m):
            out = []
            d = self.dim
            for k, row in sorted(m.rows.items()):
                for col, c in sorted(row.items()):
                    out.append([col, k // d, k % d, fd.dumps(c)])
            return out
        return {
            "field": fd.describe(),
            "dim": self.dim,
            "product": tensor3(self.product),
            "coproduct": tensor_co(self.coproduct),
            "unit": [[i, fd.dumps(c)] for (i,), c in _col_items(self.unit)],
            "counit": [[j, fd.dumps(c)] for j, c in
                       sorted(self.counit.rows.get(0, {}).items())],
            "antipode": [[j, i, fd.dumps(c)] for i, row in
                         sorted(self.antipode.rows.items())
                         for j, c in sorted(row.items())],
            "R": [[idx // self.dim, idx % self.dim, fd.dumps(c)]
                  for (idx,), c in _col_items(self.r_mat)],
            "ribbon": [[i, fd.dumps(c)] for (i,), c in _col_items(self.ribbon)],
        }

    def __repr__(self):
        return "HopfBackend(%s, dim=%d)" % (self.name, self.dim)


def _col_items(vec):
    """Iterate ((row,), value) over a column SpMat."""
    assert vec.ncols == 1
    for i, row in sorted(vec.rows.items()):
        v = row.get(0, 0)
        if v != 0:
            yield (i,), v


### constructors


def group_algebra(g):
    if isinstance(g, str):
        g = group_by_name(g)
    assert isinstance(g, FiniteGroup)
    d = g.n
    product = SpMat.from_entries(d, d * d,
                                 ((g.mult[i][j], i * d + j, 1)
                                  for i in range(d) for j in range(d)))
    unit = SpMat.from_entries(d, 1, [(0, 0, 1)])
    coproduct = SpMat.from_entries(d * d, d, ((i * d + i, i, 1) for i in range(d)))
    counit = SpMat.from_entries(1, d, ((0, i, 1) for i in range(d)))
    antipode = SpMat.from_entries(d, d, ((g.inv[i], i, 1) for i in range(d)))
    r_mat = SpMat.from_entries(d * d, 1, [(0, 0, 1)])
    ribbon = SpMat.from_entries(d, 1, [(0, 0, 1)])
    return HopfBackend("group:%s" % g.name, QQ, d, product, unit, coproduct,
                       counit, antipode, r_mat, ribbon)


def double_of_group(g):
    """Drinfeld double D(G) on basis delta_a (x) b, index a*|G| + b."""
    if isinstance(g, str):
        g = group_by_name(g)
    n = g.n
    d = n * n

    def bi(a, b):
        return a * n + b

    prod_entries = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if a == g.conj(c, b):
                    for e in range(n):
                        prod_entries.append((bi(a, g.mult[b][e]),
                                             bi(a, b) * d + bi(c, e), 1))
    product = SpMat.from_entries(d, d * d, prod_entries)
    unit = SpMat.from_entries(d, 1, ((bi(a, 0), 0, 1) for a in range(n)))
    cop_entries = []
    for a in range(n):
        for b in range(n):
            for x in range(n):
                y = g.mult[g.inv[x]][a]
                cop_entries.append((bi(x, b) * d + bi(y, b), bi(a, b), 1))
    coproduct = SpMat.from_entries(d * d, d, cop_entries)
    counit = SpMat.from_entries(1, d, ((0, bi(0, b), 1) for b in range(n)))
    anti_entries = []
    for a in range(n):
        for b in range(n):
            bi_inv = g.inv[b]
            target = g.conj(g.inv[a], bi_inv)
            anti_entries.append((bi(target, bi_inv), bi(a, b), 1))
    antipode = SpMat.from_entries(d, d, anti_entries)
    r_entries = []
    for a in range(n):
        for c in range(n):
            r_entries.append((bi(a, 0) * d + bi(c, a), 0, 1))
    r_mat = SpMat.from_entries(d * d, 1, r_entries)
    ribbon = SpMat.from_entries(d, 1, ((bi(a, a), 0, 1) for a in range(n)))
    return HopfBackend("double:%s" % g.name, QQ, d, product, unit, coproduct,
                       counit, antipode, r_mat, ribbon)


def backend_from_json(obj, name="file"):
    field = field_from_json(obj["field"])
    d = int(obj["dim"])
    product = SpMat.from_entries(
        d, d * d, ((int(k), int(i) * d + int(j), field.parse(c))
                   for i, j, k, c in obj["product"]))
    coproduct = SpMat.from_entries(
        d * d, d, ((int(j) * d + int(k), int(i), field.parse(c))
                   for i, j, k, c in obj["coproduct"]))
    counit = SpMat.from_entries(1, d, ((0, int(i), field.parse(c))
                                       for i, c in obj["counit"]))
    antipode = SpMat.from_entries(d, d, ((int(j), int(i), field.parse(c))
                                         for i, j, c in obj["antipode"]))
    r_mat = SpMat.from_entries(d * d, 1, ((int(i) * d + int(j), 0, field.parse(c))
                                          for i, j, c in obj["R"]))
    ribbon = SpMat.from_entries(d, 1, ((int(i), 0, field.parse(c))
                                       for i, c in obj["ribbon"]))
    if "unit" in obj:
        unit = SpMat.from_entries(d, 1, ((int(i), 0, field.parse(c))
                                         for i, c in obj["unit"]))
    else:
        # two-sided unit is determined by the product: solve sum_i u_i e_i e_j = e_j
        rows = []
        rhs = []
        for j in range(d):
            for k in range(d):
                rows.append([product.get(k, i * d + j) for i in range(d)])
                rhs.append([1 if k == j else 0])
        from .linalg import solve_dense
        sol = solve_dense(rows, rhs)
        assert sol is not None, "product has no unit"
        unit = SpMat.from_dense(sol, ncols=1)
    return HopfBackend(name, field, d, product, unit, coproduct, counit,
                       antipode, r_mat, ribbon)


def load_backend(spec):
    """Resolve 'group:NAME', 'double:NAME', or a JSON file path."""
    if spec.startswith("group:"):
        return group_algebra(spec.split(":", 1)[1])
    if spec.startswith("double:"):
        return double_of_group(spec.split(":", 1)[1])
    with open(spec) as fh:
        return backend_from_json(json.load(fh), name=spec)


### axiom verification


def verify_hopf_axioms(h):
    """Returns a list of (check name, ok, detail). Exact matrix identities."""
    d = h.dim
    I = SpMat.identity(d)
    I2 = SpMat.identity(d * d)
    m, u, cop, eps, S = h.product, h.unit, h.coproduct, h.counit, h.antipode
    checks = []

    def add(name, lhs, rhs):
        ok = lhs == rhs
        checks.append((name, ok, "" if ok else "matrix mismatch"))

    add("associativity", m @ m.kron(I), m @ I.kron(m))
    add("left unit", m @ u.kron(I), I)
    add("right unit", m @ I.kron(u), I)
    add("coassociativity", cop.kron(I) @ cop, I.kron(cop) @ cop)
    add("left counit", eps.kron(I) @ cop, I)
    add("right counit", I.kron(eps) @ cop, I)
    mid = I.kron(flip_matrix(d, d)).kron(I)
    add("bialgebra", cop @ m, m.kron(m) @ mid @ cop.kron(cop))
    add("counit algebra map", eps @ m, eps.kron(eps))
    add("unit coalgebra map", cop @ u, u.kron(u))
    ue = u @ eps
    add("antipode left", m @ S.kron(I) @ cop, ue)
    add("antipode right", m @ I.kron(S) @ cop, ue)

    r = h.r_mat
    try:
        rinv = h.r_inv()
        checks.append(("R invertible", True, ""))
    except AssertionError as e:
        checks.append(("R invertible", False, str(e)))
        rinv = None
    flip = flip_matrix(d, d)
    r21 = flip @ r
    if rinv is not None:
        # R Delta(x) R^{-1} = Delta^op(x) for all basis x
        ok = True
        for i in range(d):
            x = SpMat.from_entries(d, 1, [(i, 0, 1)])
            lhs = h.tensor_sq_apply(h.tensor_sq_apply(r, cop @ x), rinv)
            rhs = flip @ (cop @ x)
            if lhs != rhs:
                ok = False
                break
        checks.append(("quasitriangularity RDelta=Delta^op R", ok,
                       "" if ok else "fails at basis %d" % i))
        # (Delta x id)R = R13 R23 ; (id x Delta)R = R13 R12 in H^3.
        # Built termwise from R's entries to avoid any H^6 operator.
        terms = [(divmod(idx, d), c) for (idx,), c in _col_items(r)]
        r13r23 = SpMat(d ** 3, 1)
        r13r12 = SpMat(d ** 3, 1)
        for (p, q), cs in terms:
            for (w, x), ct in terms:
                # R13 R23: a_s (x) a_t (x) b_s b_t
                prod = m @ SpMat.from_entries(d * d, 1, [(q * d + x, 0, 1)])
                for (k,), cp in _col_items(prod):
                    r13r23.add_at((p * d + w) * d + k, 0, cs * ct * cp)
                # R13 R12: a_s a_t (x) b_t (x) b_s
                prod2 = m @ SpMat.from_entries(d * d, 1, [(p * d + w, 0, 1)])
                for (k,), cp in _col_items(prod2):
                    r13r12.add_at((k * d + x) * d + q, 0, cs * ct * cp)
        add("(Delta x id)R = R13 R23", cop.kron(I) @ r, r13r23)
        add("(id x Delta)R = R13 R12", I.kron(cop) @ r, r13r12)

    v = h.ribbon
    lv, rv = h.left_mult(v), h.right_mult(v)
    add("ribbon central", lv, rv)
    add("ribbon counit", eps @ v, SpMat.identity(1))
    add("ribbon S-invariant", S @ v, v)
    try:
        h.ribbon_inv()
        checks.append(("ribbon invertible", True, ""))
    except AssertionError as e:
        checks.append(("ribbon invertible", False, str(e)))
    if rinv is not None:
        r21r = h.tensor_sq_apply(r21, r)
        add("Delta(v) = R21 R (v x v)", cop @ v,
            h.tensor_sq_apply(r21r, v.kron(v)))
        g = h.pivot()
        add("pivot grouplike", cop @ g, g.kron(g))
        add("pivot counit", eps @ g, SpMat.identity(1))
        lg = h.left_mult(g)
        rginv = h.right_mult(h.pivot_inv())
        add("S^2 = pivot conjugation", S @ S, rginv @ lg)
    return checks


