"""Label-level fusion data: quantum dimensions, twists, S-matrix.

This layer carries no module categories and no associator data, so it cannot
evaluate tangles.  It exists for three jobs: produce Kirby-element
coefficients, decide modularity through the transparency criterion on
S-matrix rows, and supply Verlinde dimensions as an independent cross-check
of the state space sizes the coend computation produces.

Data for the doubles is built from conjugacy classes and centralizer
characters; centralizers here are either cyclic or the full six-element
symmetric group, so no general character-theory machinery is needed.
"""

from fractions import Fraction
from math import lcm

from .groups import group_by_name
from .linalg import rank_dense
from .scalars import CycEl, CyclotomicField, unit_power


class ModularData:
    """Simple labels with exact dimensions, twists and unnormalized S-matrix.

    Label 0 is the unit.  The stored S is the one whose unit row equals the
    dimension vector.  Symmetry and normalizability (nonzero Gauss sums and
    global dimension) are enforced; modularity is not, symmetric examples
    are legitimate values of this type.
    """

    __slots__ = ("labels", "dims", "twists", "s")

    def __init__(self, labels, dims, twists, s):
        self.labels = tuple(labels)
        self.dims = tuple(dims)
        self.twists = tuple(twists)
        self.s = tuple(tuple(row) for row in s)
        k = len(self.labels)
        if not (len(self.dims) == len(self.twists) == len(self.s) == k
                and all(len(row) == k for row in self.s)):
            raise ValueError("ragged modular data")
        if k == 0:
            raise ValueError("no labels")
        if self.twists[0] != 1:
            raise ValueError("unit label must have trivial twist")
        for i in range(k):
            for j in range(i):
                if self.s[i][j] != self.s[j][i]:
                    raise ValueError("S-matrix is not symmetric")
        if any(self.s[0][j] != self.dims[j] for j in range(k)):
            raise ValueError("unit row of S must be the dimension vector")
        if self.global_dim == 0:
            raise ValueError("zero global dimension")
        for sign in (1, -1):
            if not self.gauss_sum(sign):
                raise ValueError("vanishing Gauss sum: not normalizable")

    @property
    def size(self):
        return len(self.labels)

    @property
    def global_dim(self):
        return sum(d * d for d in self.dims)

    def gauss_sum(self, sign=1):
        total = 0
        for d, th in zip(self.dims, self.twists):
            total = total + d * d * (th if sign > 0 else unit_power(th, -1))
        return total

    def __repr__(self):
        return "ModularData(%d labels, dim %s)" % (self.size, self.global_dim)


### character scaffolding for the shipped groups


def _conjugacy_classes(g):
    seen, classes = set(), []
    for a in range(g.n):
        if a in seen:
            continue
        cls = tuple(sorted({g.conj(a, x) for x in range(g.n)}))
        seen.update(cls)
        classes.append(cls)
    return classes


def _centralizer(g, a):
    return [x for x in range(g.n) if g.mult[x][a] == g.mult[a][x]]


def _root(field, n_exp, power):
    """zeta_{n_exp}^power, as an exact scalar (integer when n_exp <= 2)."""
    if field is None:
        return 1 if power % n_exp == 0 else -1
    return field.zeta(power % n_exp)


def _cyclic_chars(g, elements, field, n_exp):
    """Characters of a cyclic subgroup, as (name, dim, {element: value})."""
    m = len(elements)
    gen = next(x for x in elements if g.order_of(x) == m)
    log = {}
    x = 0
    for j in range(m):
        log[x] = j
        x = g.mult[x][gen]
    step = n_exp // m
    return [("chi%d" % k, 1,
             {e: _root(field, n_exp, step * k * log[e]) for e in elements})
            for k in range(m)]


def _s3_chars(g, elements):
    """The three characters of the full symmetric group on three letters;
    values depend only on element order, so any copy inside g works."""
    by_order = {e: g.order_of(e) for e in elements}
    triv = {e: 1 for e in elements}
    sgn = {e: -1 if by_order[e] == 2 else 1 for e in elements}
    std = {e: {1: 2, 2: 0, 3: -1}[by_order[e]] for e in elements}
    return [("triv", 1, triv), ("sgn", 1, sgn), ("std", 2, std)]


def _chars_of_centralizer(g, elements, field, n_exp):
    m = len(elements)
    if m == 6 and any(g.mult[x][y] != g.mult[y][x]
                      for x in elements for y in elements):
        return _s3_chars(g, elements)
    assert any(g.order_of(x) == m for x in elements), \
        "centralizer is neither cyclic nor the full S3"
    return _cyclic_chars(g, elements, field, n_exp)


### constructors


def double_modular_data(g):
    """Fusion data of the double of a finite group: one label per pair
    (conjugacy class, centralizer character); dim = class size times
    character degree, twist = normalized character value at the class."""
    if isinstance(g, str):
        g = group_by_name(g)
    n_exp = lcm(*(g.order_of(x) for x in range(g.n)))
    field = CyclotomicField(n_exp) if n_exp > 2 else None

    sectors = []  # (class, representative, centralizer, character)
    for cls in _conjugacy_classes(g):
        rep = cls[0]
        cent = _centralizer(g, rep)
        for name, deg, vals in _chars_of_centralizer(g, cent, field, n_exp):
            sectors.append((cls, rep, cent, name, deg, vals))

    labels, dims, twists = [], [], []
    for cls, rep, cent, name, deg, vals in sectors:
        labels.append("(%s;%s)" % (g.labels[rep], name))
        dims.append(len(cls) * deg)
        # character degrees above one only occur with integer values
        twists.append(Fraction(vals[rep], deg) if deg != 1 else vals[rep])

    s = []
    for cls_a, a, cent_a, _, _, chi in sectors:
        row = []
        for cls_b, b, cent_b, _, _, psi in sectors:
            total = 0
            for x in range(g.n):
                bb = g.conj(b, x)
                if g.mult[a][bb] == g.mult[bb][a]:
                    total = total + chi[bb] * psi[g.conj(a, g.inv[x])]
            row.append(Fraction(g.n, len(cent_a) * len(cent_b)) * total)
        s.append(row)
    return ModularData(labels, dims, twists, s)


def rep_modular_data(g):
    """Symmetric fusion data of group representations over a splitting
    field: trivial twists and the rank-one S-matrix d_i d_j."""
    if isinstance(g, str):
        g = group_by_name(g)
    if all(g.mult[x][y] == g.mult[y][x] for x in range(g.n)
           for y in range(g.n)):
        dims = [1] * g.n
    elif g.n == 6:
        dims = [1, 1, 2]
    else:
        raise ValueError("no representation data for %s" % g.name)
    labels = ["irr%d" % i for i in range(len(dims))]
    s = [[di * dj for dj in dims] for di in dims]
    return ModularData(labels, dims, [1] * len(dims), s)


### operations


def kirby_element_from_modular_data(md):
    """Coefficient of each label in the Kirby element: dim(label)/dim(C)."""
    gd = md.global_dim
    if gd == 0:
        raise ValueError("zero global dimension")
    return tuple(Fraction(d, gd) if isinstance(d, int) else d / gd
                 for d in md.dims)


class TransparencyReport:
    """Labels whose S-row is colinear with the dimension row, plus whether
    S is invertible; modular means only the unit is transparent and S is."""

    __slots__ = ("transparent", "s_invertible")

    def __init__(self, transparent, s_invertible):
        self.transparent = tuple(transparent)
        self.s_invertible = bool(s_invertible)

    @property
    def modular(self):
        return len(self.transparent) == 1 and self.s_invertible

    def __str__(self):
        return "transparent: %s; S %s; %s" % (
            ", ".join(self.transparent) or "(none)",
            "invertible" if self.s_invertible else "singular",
            "modular" if self.modular else "not modular")


def transparency_report(md):
    base = md.s[0]
    transparent = [md.labels[i] for i in range(md.size)
                   if all(md.s[i][j] == md.dims[i] * base[j]
                          for j in range(md.size))]
    s_inv = rank_dense([list(row) for row in md.s]) == md.size
    return TransparencyReport(transparent, s_inv)


def verlinde_dimension(md, genus):
    """Sum over labels of (dim C / dim(label)^2)^(genus-1); the state space
    dimension of the closed genus-g surface for modular data."""
    if not transparency_report(md).modular:
        raise ValueError("Verlinde dimensions need modular data")
    total = 0
    for d in md.dims:
        total = total + unit_power(Fraction(md.global_dim) / (d * d),
                                   genus - 1)
    if isinstance(total, CycEl):
        assert not any(total.coeffs[1:]), "non-rational Verlinde sum"
        total = total.coeffs[0]
    total = Fraction(total)
    assert total.denominator == 1, "Verlinde sum is not an integer"
    return int(total)
