"""The coend C = H^* of a ribbon backend, with its braided Hopf structure.

C is realized on the dual basis of H, carrying the coadjoint action.  Every
structure map of C is defined by a universal equation against the dinatural
family iota_X: X^* (x) X -> C.  Since iota_H (regular module) is a split
epimorphism with section sigma(f) = f (x) 1, each map is computed as
RHS(H, H) composed with sigma's, and well-definedness is re-checked by
comparing both sides of the defining equation at X = Y = H
(verify_coend_equations).

All maps are exact sparse matrices over the backend's field.
"""

from fractions import Fraction

from .hopf import flip_matrix
from .linalg import SpMat, nullspace_dense


def _basis_col(n, i):
    return SpMat.from_entries(n, 1, [(i, 0, 1)])


class Module:
    """A finite-dimensional module over the backend: explicit action matrices,
    one per basis element of H."""

    def __init__(self, h, dim, act, name="?"):
        self.h = h
        self.dim = dim
        self.act = act
        self.name = name
        assert len(act) == h.dim
        for m in act:
            assert m.nrows == dim and m.ncols == dim

    def action_of(self, vec):
        """rho(v) for a column vector v in H."""
        out = SpMat(self.dim, self.dim)
        for i, row in vec.rows.items():
            c = row.get(0, 0)
            if c != 0:
                out = out + self.act[i].scale(c)
        return out

    def twist(self, sign=1):
        """The object twist: action of the ribbon element (or its inverse)."""
        v = self.h.ribbon if sign > 0 else self.h.ribbon_inv()
        return self.action_of(v)

    # left duality (ev, coev) is the plain coordinate pairing; right duality
    # (ev_tilde, coev_tilde) routes through the pivot.

    def ev(self):
        """M^* (x) M -> 1."""
        return SpMat.from_entries(
            1, self.dim * self.dim,
            ((0, a * self.dim + a, 1) for a in range(self.dim)))

    def coev(self):
        """1 -> M (x) M^*."""
        return SpMat.from_entries(
            self.dim * self.dim, 1,
            ((a * self.dim + a, 0, 1) for a in range(self.dim)))

    def ev_tilde(self):
        """M (x) M^* -> 1: x (x) l -> l(g x)."""
        g = self.action_of(self.h.pivot())
        out = SpMat(1, self.dim * self.dim)
        for a, row in g.rows.items():
            for b, c in row.items():
                out.add_at(0, b * self.dim + a, c)
        return out

    def coev_tilde(self):
        """1 -> M^* (x) M: sum_i mu^i (x) g^{-1} mu_i."""
        gi = self.action_of(self.h.pivot_inv())
        out = SpMat(self.dim * self.dim, 1)
        for j, row in gi.rows.items():
            for i, c in row.items():
                out.add_at(i * self.dim + j, 0, c)
        return out

    def __repr__(self):
        return "Module(%s, dim=%d)" % (self.name, self.dim)


def regular_module(h):
    return Module(h, h.dim, [h.basis_left_mult(i) for i in range(h.dim)], "H")


def trivial_module(h):
    act = [SpMat.from_entries(1, 1, [(0, 0, h.counit.get(0, i))])
           for i in range(h.dim)]
    return Module(h, 1, act, "1")


def dual_module(m):
    h = m.h
    act = [m.action_of(h.antipode @ _basis_col(h.dim, i)).transpose()
           for i in range(h.dim)]
    return Module(h, m.dim, act, m.name + "*")


def tensor_module(a, b):
    h = a.h
    d = h.dim
    dim = a.dim * b.dim
    act = []
    for i in range(d):
        acc = SpMat(dim, dim)
        for row, rdict in h.coproduct.rows.items():
            c = rdict.get(i, 0)
            if c != 0:
                j, k = divmod(row, d)
                acc = acc + a.act[j].kron(b.act[k]).scale(c)
        act.append(acc)
    return Module(h, dim, act, "%s(x)%s" % (a.name, b.name))


def coadjoint_module(h):
    """H^* with (h . f)(x) = f(S(h_1) x h_2); this is the coend object."""
    d = h.dim
    act = []
    for i in range(d):
        acc = SpMat(d, d)
        for row, rdict in h.coproduct.rows.items():
            c = rdict.get(i, 0)
            if c != 0:
                j, k = divmod(row, d)
                op = h.left_mult(h.antipode @ _basis_col(d, j)) \
                    @ h.right_mult(_basis_col(d, k))
                acc = acc + op.scale(c)
        act.append(acc.transpose())
    return Module(h, d, act, "C")


def braid_pos(a, b):
    """tau_{A,B}: A (x) B -> B (x) A, x (x) y -> sum (b_i y) (x) (a_i x)."""
    acc = SpMat(a.dim * b.dim, a.dim * b.dim)
    for idx, row in a.h.r_mat.rows.items():
        c = row.get(0, 0)
        if c != 0:
            j, k = divmod(idx, a.h.dim)
            acc = acc + a.act[j].kron(b.act[k]).scale(c)
    return flip_matrix(a.dim, b.dim) @ acc


def braid_neg(a, b):
    """The inverse crossing A (x) B -> B (x) A, built from R^{-1}; it is the
    two-sided inverse of tau_{B,A}."""
    acc = SpMat(a.dim * b.dim, a.dim * b.dim)
    for idx, row in a.h.r_inv().rows.items():
        c = row.get(0, 0)
        if c != 0:
            j, k = divmod(idx, a.h.dim)
            acc = acc + a.act[k].kron(b.act[j]).scale(c)
    return flip_matrix(a.dim, b.dim) @ acc


class Coend:
    """C = H^* with product, coproduct, antipode, pairing omega and twist
    forms theta_{+-}, all induced by the universal property."""

    def __init__(self, h):
        self.h = h
        self.dim = h.dim
        self._derived = {}

    def _get(self, key, fn):
        if key not in self._derived:
            self._derived[key] = fn()
        return self._derived[key]

    ### universal family and its section over the regular module

    def iota(self, m):
        """iota_M: M^* (x) M -> C, (l, x) -> l(_ . x); column a*dim+b."""
        out = SpMat(self.dim, m.dim * m.dim)
        for k in range(self.dim):
            for a, row in m.act[k].rows.items():
                for b, c in row.items():
                    out.add_at(k, a * m.dim + b, c)
        return out

    def sigma(self):
        """Section of iota_H: f -> f (x) 1."""
        def build():
            d = self.dim
            out = SpMat(d * d, d)
            for j, row in self.h.unit.rows.items():
                c = row.get(0, 0)
                for a in range(d):
                    out.add_at(a * d + j, a, c)
            return out
        return self._get("sigma", build)

    def regular(self):
        return self._get("reg", lambda: regular_module(self.h))

    def coadjoint(self):
        return self._get("coadj", lambda: coadjoint_module(self.h))

    def braiding_cc(self, sign=1):
        cm = self.coadjoint()
        if sign > 0:
            return self._get("tau_cc", lambda: braid_pos(cm, cm))
        return self._get("tau_cc_neg", lambda: braid_neg(cm, cm))

    ### right-hand sides of the defining equations, at arbitrary modules

    def _product_rhs(self, x, y):
        """iota_{Y(x)X} (zeta (x) id) (id (x) tau_{X, Y*(x)Y}) on
        X^* (x) X (x) Y^* (x) Y."""
        dx, dy = x.dim, y.dim
        ystar_y = tensor_module(dual_module(y), y)
        tau = braid_pos(x, ystar_y)
        step1 = SpMat.identity(dx).kron(tau)
        zeta = SpMat.from_entries(
            dy * dx, dx * dy,
            ((b * dx + a, a * dy + b, 1)
             for a in range(dx) for b in range(dy)))
        step2 = zeta.kron(SpMat.identity(dy * dx))
        return self.iota(tensor_module(y, x)) @ step2 @ step1

    def _coproduct_rhs(self, x):
        """(iota_X (x) iota_X)(id (x) coev_X (x) id)."""
        dx = x.dim
        mid = SpMat.identity(dx).kron(x.coev()).kron(SpMat.identity(dx))
        return self.iota(x).kron(self.iota(x)) @ mid

    def _antipode_rhs(self, x, sign=1):
        """(ev_X (x) iota_{X*})(id (x) tau_{X**,X} (x) id)(coev_{X*} (x) tau_{X*,X}),
        with both crossings negative for the inverse antipode."""
        braid = braid_pos if sign > 0 else braid_neg
        xd = dual_module(x)
        xdd = dual_module(xd)
        dx = x.dim
        step1 = xd.coev().kron(braid(xd, x))
        step2 = SpMat.identity(dx).kron(braid(xdd, x)).kron(SpMat.identity(dx))
        step3 = x.ev().kron(self.iota(xd))
        return step3 @ step2 @ step1

    def _omega_rhs(self, x, y):
        """(ev_X (x) ev_Y)(id (x) tau_{Y*,X} tau_{X,Y*} (x) id)."""
        yd = dual_module(y)
        dbl = braid_pos(yd, x) @ braid_pos(x, yd)
        mid = SpMat.identity(x.dim).kron(dbl).kron(SpMat.identity(y.dim))
        return x.ev().kron(y.ev()) @ mid

    def _theta_rhs(self, x, sign):
        """ev_X (id (x) theta_X^{+-1})."""
        return x.ev() @ SpMat.identity(x.dim).kron(x.twist(sign))

    ### the structure maps themselves

    def product_c(self):
        def build():
            reg = self.regular()
            s = self.sigma()
            return self._product_rhs(reg, reg) @ s.kron(s)
        return self._get("m", build)

    def unit_c(self):
        return self._get("u", lambda: self.iota(trivial_module(self.h)))

    def coproduct_c(self):
        def build():
            return self._coproduct_rhs(self.regular()) @ self.sigma()
        return self._get("cop", build)

    def counit_c(self):
        def build():
            return self.regular().ev() @ self.sigma()
        return self._get("eps", build)

    def antipode_c(self, sign=1):
        def build():
            return self._antipode_rhs(self.regular(), sign) @ self.sigma()
        return self._get(("S", sign), build)

    def omega(self):
        def build():
            reg = self.regular()
            s = self.sigma()
            return self._omega_rhs(reg, reg) @ s.kron(s)
        return self._get("omega", build)

    def theta(self, sign):
        def build():
            return self._theta_rhs(self.regular(), sign) @ self.sigma()
        return self._get(("theta", sign), build)

    ### derived pieces used by the functor layer

    def delta_of(self, m):
        """delta_M: M -> M (x) C, the coaction (id (x) iota_M)(coev_M (x) id)."""
        i_m = SpMat.identity(m.dim)
        return i_m.kron(self.iota(m)) @ m.coev().kron(i_m)

    def coadjoint_power(self, n):
        def build():
            assert n >= 0
            if n == 0:
                return trivial_module(self.h)
            if n == 1:
                return self.coadjoint()
            return tensor_module(self.coadjoint_power(n - 1), self.coadjoint())
        return self._get(("cpow", n), build)

    def delta_power(self, n):
        """delta on C^{(x)n} as a (d^n . d) x (d^n) matrix."""
        return self._get(("dpow", n), lambda: self.delta_of(self.coadjoint_power(n)))

    def integral(self):
        """The two-sided invariant integral of C with counit normalization
        eps_C(alpha) = 1, or None if no such normalization exists."""
        def build():
            d = self.dim
            m = self.product_c().to_dense()
            eps = self.counit_c()
            cm = self.coadjoint()
            epsh = self.h.counit
            zero = 0
            rows = []
            for r in range(d):
                for c in range(d):
                    ec = eps.get(0, c)
                    rows.append([m[r][c * d + j] - (ec if r == j else zero)
                                 for j in range(d)])
                    rows.append([m[r][j * d + c] - (ec if r == j else zero)
                                 for j in range(d)])
            for i in range(d):
                ei = epsh.get(0, i)
                mat = cm.act[i]
                for a in range(d):
                    rows.append([mat.get(a, b) - (ei if a == b else zero)
                                 for b in range(d)])
            basis = nullspace_dense(rows)
            if not basis:
                return None
            assert len(basis) == 1, "integral space is not one-dimensional"
            alpha = SpMat.column(basis[0])
            norm = (eps @ alpha).scalar()
            if norm == 0:
                return None
            if isinstance(norm, int):
                norm = Fraction(norm)
            return alpha.scale(1 / norm)
        return self._get("integral", build)


def verify_coend_equations(cd):
    """Exact checks of the defining equations at X = Y = H, the braided Hopf
    axioms of C, and H-linearity of every structure map.  Returns a list of
    (name, ok, detail)."""
    h = cd.h
    d = cd.dim
    reg = cd.regular()
    cm = cd.coadjoint()
    iota_h = cd.iota(reg)
    sig = cd.sigma()
    m, u = cd.product_c(), cd.unit_c()
    cop, eps = cd.coproduct_c(), cd.counit_c()
    s_c, s_inv = cd.antipode_c(1), cd.antipode_c(-1)
    om = cd.omega()
    th_p, th_m = cd.theta(1), cd.theta(-1)
    i_d = SpMat.identity(d)
    checks = []

    def add(name, lhs, rhs):
        ok = lhs == rhs
        checks.append((name, ok, "" if ok else "matrix mismatch"))

    add("iota section", iota_h @ sig, i_d)
    hs_h = tensor_module(dual_module(reg), reg)
    ok = all(iota_h @ hs_h.act[i] == cm.act[i] @ iota_h for i in range(d))
    checks.append(("iota H-linear", ok, "" if ok else "matrix mismatch"))

    ii = iota_h.kron(iota_h)
    add("product factors through iota", m @ ii, cd._product_rhs(reg, reg))
    add("coproduct factors through iota", cop @ iota_h, cd._coproduct_rhs(reg))
    add("counit factors through iota", eps @ iota_h, reg.ev())
    add("antipode factors through iota", s_c @ iota_h, cd._antipode_rhs(reg, 1))
    add("inverse antipode factors", s_inv @ iota_h, cd._antipode_rhs(reg, -1))
    add("omega factors through iota", om @ ii, cd._omega_rhs(reg, reg))
    add("theta+ factors through iota", th_p @ iota_h, cd._theta_rhs(reg, 1))
    add("theta- factors through iota", th_m @ iota_h, cd._theta_rhs(reg, -1))

    add("C associativity", m @ m.kron(i_d), m @ i_d.kron(m))
    add("C unit", m @ u.kron(i_d), i_d)
    add("C unit right", m @ i_d.kron(u), i_d)
    add("C coassociativity", cop.kron(i_d) @ cop, i_d.kron(cop) @ cop)
    add("C counit", eps.kron(i_d) @ cop, i_d)
    add("C counit right", i_d.kron(eps) @ cop, i_d)
    tau_cc = cd.braiding_cc()
    add("C braided bialgebra", cop @ m,
        m.kron(m) @ i_d.kron(tau_cc).kron(i_d) @ cop.kron(cop))
    add("C antipode left", m @ s_c.kron(i_d) @ cop, u @ eps)
    add("C antipode right", m @ i_d.kron(s_c) @ cop, u @ eps)
    add("C antipode invertible", s_c @ s_inv, i_d)
    add("C S^2 is the twist of C", s_c @ s_c, cm.twist(1))
    add("omega unit left", om @ u.kron(i_d), eps)
    add("omega unit right", om @ i_d.kron(u), eps)
    add("eps of unit", eps @ u, SpMat.identity(1))

    cm2 = cd.coadjoint_power(2)
    triv = trivial_module(h)
    linear = [
        ("product", m, cm2, cm),
        ("coproduct", cop, cm, cm2),
        ("counit", eps, cm, triv),
        ("antipode", s_c, cm, cm),
        ("omega", om, cm2, triv),
        ("theta+", th_p, cm, triv),
        ("theta-", th_m, cm, triv),
    ]
    for name, mat, dom, cod in linear:
        ok = all(mat @ dom.act[i] == cod.act[i] @ mat for i in range(d))
        checks.append(("%s H-linear" % name, ok, "" if ok else "matrix mismatch"))
    ok = all(cm.act[i] @ u == u.scale(h.counit.get(0, i)) for i in range(d))
    checks.append(("unit H-invariant", ok, "" if ok else "matrix mismatch"))
    return checks
