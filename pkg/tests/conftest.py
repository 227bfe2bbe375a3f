"""Shared fixtures: a cyclotomic JSON backend used across test modules."""


def anyon_z3_json():
    """Functions on Z3 with the quadratic-form braiding: a genuinely
    anisotropic ribbon structure over Q(zeta_3)."""
    zeta = ["0", "1"]
    zeta2 = ["-1", "-1"]
    pow_z = {0: "1", 1: zeta, 2: zeta2}
    product = [[a, a, a, "1"] for a in range(3)]
    coproduct = [[(x + y) % 3, x, y, "1"] for x in range(3) for y in range(3)]
    return {
        "field": {"type": "cyclotomic", "order": 3},
        "dim": 3,
        "product": product,
        "coproduct": coproduct,
        "counit": [[0, "1"]],
        "antipode": [[a, (-a) % 3, "1"] for a in range(3)],
        "R": [[a, b, pow_z[(a * b) % 3]] for a in range(3) for b in range(3)],
        "ribbon": [[a, pow_z[(a * a) % 3]] for a in range(3)],
    }
