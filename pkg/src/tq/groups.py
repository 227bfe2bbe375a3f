"""Small finite groups given by multiplication tables."""


class FiniteGroup:
    """Elements are 0..n-1 with 0 the identity; mult is a full table."""

    def __init__(self, name, mult, labels=None):
        self.name = name
        self.n = len(mult)
        self.mult = tuple(tuple(row) for row in mult)
        self.labels = labels or [str(i) for i in range(self.n)]
        for i in range(self.n):
            assert self.mult[0][i] == i and self.mult[i][0] == i, \
                "element 0 must be the identity"
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    assert self.mult[self.mult[i][j]][k] == self.mult[i][self.mult[j][k]], \
                        "non-associative table"
        self.inv = [None] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if self.mult[i][j] == 0:
                    self.inv[i] = j
        assert all(v is not None for v in self.inv)

    def conj(self, a, b):
        """b a b^{-1}"""
        return self.mult[self.mult[b][a]][self.inv[b]]

    def order_of(self, a):
        k, x = 1, a
        while x != 0:
            x = self.mult[x][a]
            k += 1
        return k

    def __repr__(self):
        return "FiniteGroup(%s, n=%d)" % (self.name, self.n)


def trivial_group():
    return FiniteGroup("Z1", [[0]])


def cyclic_group(n):
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup("Z%d" % n, mult)


def symmetric_group_3():
    # permutations of {0,1,2}; identity first
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    idx = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        # (p o q)(x) = p[q[x]]
        return tuple(p[q[x]] for x in range(3))

    mult = [[idx[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup("S3", mult, labels=[repr(list(p)) for p in perms])


def group_by_name(name):
    name = name.strip()
    if name in ("Z1", "1", "trivial"):
        return trivial_group()
    if name.startswith("Z") and name[1:].isdigit():
        n = int(name[1:])
        assert n >= 1
        return cyclic_group(n) if n > 1 else trivial_group()
    if name == "S3":
        return symmetric_group_3()
    raise ValueError("unknown group %r (use Z<n> or S3)" % name)
