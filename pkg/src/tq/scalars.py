"""Exact scalar arithmetic: rationals and cyclotomic field elements.

Every number in this package is a fractions.Fraction or a CycEl (element of
Q(zeta_N), stored as a rational coefficient vector reduced modulo the N-th
cyclotomic polynomial).  No floats anywhere: signature counts and anomaly
exponents feed exact equality tests, so a single rounding would corrupt them.
"""

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def unit_power(x, k):
    """x**k for integer k, staying in the scalar field (int bases promote to
    Fraction so that negative powers are exact)."""
    if isinstance(x, int):
        x = Fraction(x)
    if k < 0:
        x = 1 / x
        k = -k
    out = 1
    for _ in range(k):
        out = out * x
    return out


### Dense univariate polynomials over Fraction, low degree first.

def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    b = list(b) + [_ZERO] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod(a, b):
    # b must be monic-leading after normalization; exact division over Q.
    a = list(a)
    assert b and b[-1] != 0
    inv = Fraction(1, 1) / b[-1]
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _trim(a):
        a = _trim(a)
        if len(a) < len(b):
            break
        c = a[-1] * inv
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] -= c * y
        a = _trim(a) + []
    return _trim(q), _trim(a)


_cyclo_cache = {}


def cyclotomic_polynomial(n):
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    assert n >= 1
    if n in _cyclo_cache:
        return _cyclo_cache[n]
    # x^n - 1 = prod_{d | n} Phi_d
    num = [_ZERO] * (n + 1)
    num[0], num[n] = Fraction(-1), Fraction(1)
    den = [_ONE]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    q, r = _poly_divmod(num, den)
    assert not r, "cyclotomic division must be exact"
    _cyclo_cache[n] = q
    return q


class CycEl:
    """Element of Q(zeta_N) as a vector modulo the cyclotomic polynomial."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)
        assert len(self.coeffs) == field.degree

    def _coerce(self, other):
        if isinstance(other, CycEl):
            assert other.field.order == self.field.order
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycEl(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycEl(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycEl(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = _poly_mul(list(self.coeffs), list(o.coeffs))
        return self.field._reduce(prod)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # extended euclid on (Phi_N, self) over Q[x]: keep s_i with
        # s_i * self == r_i (mod Phi_N)
        r0, r1 = list(self.field.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [_ONE]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        assert len(r0) == 1, "gcd with the cyclotomic polynomial must be a unit"
        inv_lead = Fraction(1) / r0[0]
        return self.field._reduce([c * inv_lead for c in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def __repr__(self):
        return "CycEl(%d)%s" % (self.field.order, list(self.coeffs))


class RationalField:
    """The field Q with the shared parse/dump protocol."""

    name = "Q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, fr):
        return Fraction(fr)

    def parse(self, obj):
        if isinstance(obj, str):
            return Fraction(obj)
        if isinstance(obj, int):
            return Fraction(obj)
        raise ValueError("rational scalar must be a string like 'p/q', got %r" % (obj,))

    def dumps(self, x):
        assert isinstance(x, (int, Fraction))
        return str(Fraction(x))

    def describe(self):
        return {"type": "Q"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class CyclotomicField:
    """Q(zeta_N); elements are CycEl vectors of length deg(Phi_N)."""

    def __init__(self, order):
        assert order >= 1
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        self.name = "cyclotomic(%d)" % order
        self.zero = self.from_fraction(Fraction(0))
        self.one = self.from_fraction(Fraction(1))

    def _reduce(self, poly):
        _, r = _poly_divmod(list(poly), self.modulus)
        r = list(r) + [_ZERO] * (self.degree - len(r))
        return CycEl(self, r[: self.degree])

    def from_int(self, n):
        return self.from_fraction(Fraction(n))

    def from_fraction(self, fr):
        cs = [_ZERO] * max(self.degree, 1)
        if self.degree == 0:
            # order 1 edge case never used in practice; keep it total anyway
            return CycEl(self, [])
        cs[0] = Fraction(fr)
        return CycEl(self, cs[: self.degree])

    def zeta(self, power=1):
        """zeta_N^power as a field element."""
        poly = [_ZERO] * (power % self.order) + [_ONE]
        return self._reduce(poly)

    def parse(self, obj):
        if isinstance(obj, (str, int)):
            return self.from_fraction(Fraction(obj))
        if isinstance(obj, list):
            return self._reduce([Fraction(c) for c in obj])
        raise ValueError("cyclotomic scalar must be 'p/q' or a coefficient list")

    def dumps(self, x):
        if isinstance(x, (int, Fraction)):
            x = self.from_fraction(Fraction(x))
        assert isinstance(x, CycEl) and x.field.order == self.order
        if all(c == 0 for c in x.coeffs[1:]):
            return str(x.coeffs[0] if x.coeffs else Fraction(0))
        return [str(c) for c in x.coeffs]

    def describe(self):
        return {"type": "cyclotomic", "order": self.order}

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("cyc", self.order))


QQ = RationalField()


def field_from_json(desc):
    t = desc.get("type")
    if t == "Q":
        return QQ
    if t == "cyclotomic":
        return CyclotomicField(int(desc["order"]))
    raise ValueError("unknown field description %r" % (desc,))
