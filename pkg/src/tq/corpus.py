"""Built-in example tangles used by the test-suite and the CLI.

Closed tangles (no boundary) present closed 3-manifolds: empty = S^3,
a 0-framed unknot = S^1 x S^2, f-framed unknots = lens spaces L(f,1),
the +1-framed trefoil a homology sphere.  Boundary tangles include the
cylinders over low-genus surfaces and a few small opentangles.
"""

from .tangles import (SlicedDiagram, CobordismTangle, Opentangle,
                      cobordism_from_text, opentangle_from_text,
                      open_cobordism_tangle, ring_block, disjoint_union)


def _closed(slices):
    return CobordismTangle(SlicedDiagram((), slices), (), _count_closed(slices), ())


def _count_closed(slices):
    d = SlicedDiagram((), slices)
    from .tangles import Trace
    return len(Trace(d).closed)


def empty_tangle():
    return CobordismTangle(SlicedDiagram((), []), (), 0, ())


def unknot(framing=0):
    if framing == 0:
        return _closed([["U"], ["At"]])
    tw = ["T+" if framing > 0 else "T-", "I-"]
    rows = [["Ut"]] + [tw] * abs(framing) + [["A"]]
    return _closed(rows)


def hopf_link():
    """Two 0-framed circles with linking number +1."""
    return _closed([["Ut", "Ut"],
                    ["I+", "X-", "I-"],
                    ["I+", "X-", "I-"],
                    ["A", "A"]])


def trefoil(framing=3):
    """Plat closure of a 3-crossing positive 2-braid; natural framing +3,
    curls adjust it to the requested value."""
    rows = [["Ut", "Ut"],
            ["I+", "X-", "I-"],
            ["I+", "X-", "I-"],
            ["I+", "X-", "I-"]]
    tw = "T+" if framing > 3 else "T-"
    for _ in range(abs(framing - 3)):
        rows.append(["I+", tw, "I-", "I-"])
    rows += [["I+", "A", "I-"], ["A"]]
    return _closed(rows)


def split_unknots():
    """Two unlinked 0-framed circles."""
    return _closed([["U", "U"], ["At", "At"]])


def cylinder(genus=1):
    """The identity cobordism over a genus-g surface.  Per handle: the
    entrance arc and the exit arc each thread a 0-framed ring once (the
    ring encircles one strand of each), which is what makes the evaluation
    act as a scalar times the identity on modular backends."""
    assert genus >= 1
    bottom = ("-", "+") * genus
    row0 = []
    for _ in range(genus):
        row0 += ["I-", "I+", "U"]
    rows = [row0]
    sig = ("-", "+", "-", "+") * genus
    for j in range(genus):
        rows += ring_block(sig, 4 * j + 1, 2)
    last = []
    for _ in range(genus):
        last += ["At", "I-", "I+"]
    rows.append(last)
    d = SlicedDiagram(bottom, rows)
    return CobordismTangle(d, (genus,), genus, (genus,))


def swap_cylinders():
    """Two genus-1 cylinders whose exits cross: the braiding cobordism
    from S1 x S1 sqcup S1 x S1 to itself."""
    du = disjoint_union(cylinder(1), cylinder(1))
    rows = [list(s) for s in du.diagram.slices]
    sig = list(du.diagram.top)
    # move the second exit pair left one column at a time, leg by leg
    for p in (2, 1):
        rows.append(_ids(sig[:p - 1]) + ["X+"] + _ids(sig[p + 1:]))
        sig[p - 1], sig[p] = sig[p], sig[p - 1]
        rows.append(_ids(sig[:p]) + ["X+"] + _ids(sig[p + 2:]))
        sig[p], sig[p + 1] = sig[p + 1], sig[p]
    d = SlicedDiagram(du.diagram.bottom, rows)
    return CobordismTangle(d, (1, 1), 2, (1, 1),
                           surgery_ports=du.marker_ports())


def _ids(sig):
    return ["I+" if ch == "+" else "I-" for ch in sig]


def genus_mixed():
    """A cobordism from a genus-1 surface to a genus-2 plus a genus-1
    boundary: two bare exit handles and one cylinder handle."""
    rows = [["U", "U", "I-", "I+", "U"]]
    sig = ("-", "+", "-", "+", "-", "+", "-", "+")
    rows += ring_block(sig, 5, 2)
    rows.append(["I-", "I+", "I-", "I+", "At", "I-", "I+"])
    d = SlicedDiagram(("-", "+"), rows)
    return CobordismTangle(d, (1,), 1, (2, 1))


def clasp_arcs_opentangle():
    """Two surgery arcs clasped once (a Hopf pattern before closure)."""
    d = SlicedDiagram(("+", "-", "+", "-"),
                      [["I+", "X-", "I-"],
                       ["I+", "X-", "I-"],
                       ["A", "A"]])
    return Opentangle(d, (), 2, ())


def ba_pass_opentangle():
    """One surgery arc passing behind both legs of the other surgery pair:
    the minimal site for the below/above move."""
    d = SlicedDiagram(("+", "-", "+", "-"),
                      [["I+", "X-", "I-"],
                       ["X-", "I-", "I-"],
                       ["I+", "A", "I-"],
                       ["A"]])
    return Opentangle(d, (), 2, ())


def plain_arcs_opentangle():
    """One entrance arc and one surgery arc, no crossings."""
    d = SlicedDiagram(("+", "-", "+", "-"), [["A", "A"]])
    return Opentangle(d, (1,), 1, ())


CLOSED_BUILDERS = {
    "empty": empty_tangle,
    "unknot_f0": lambda: unknot(0),
    "unknot_f1": lambda: unknot(1),
    "unknot_fm1": lambda: unknot(-1),
    "unknot_f2": lambda: unknot(2),
    "unknot_f3": lambda: unknot(3),
    "hopf_00": hopf_link,
    "trefoil_f3": lambda: trefoil(3),
    "trefoil_f1": lambda: trefoil(1),
    "split_unknots": split_unknots,
}

BOUNDARY_BUILDERS = {
    "cylinder_g1": lambda: cylinder(1),
    "cylinder_g2": lambda: cylinder(2),
    "swap_cylinders": swap_cylinders,
    "genus_mixed": genus_mixed,
}

OPENTANGLE_BUILDERS = {
    "clasp_arcs": clasp_arcs_opentangle,
    "ba_pass": ba_pass_opentangle,
    "plain_arcs": plain_arcs_opentangle,
}


def corpus_tangles():
    """All named cobordism tangles, closed ones first."""
    out = {}
    for name, fn in CLOSED_BUILDERS.items():
        out[name] = fn()
    for name, fn in BOUNDARY_BUILDERS.items():
        out[name] = fn()
    return out


def corpus_opentangles():
    """Native opentangles plus openings of every corpus tangle."""
    out = {name: fn() for name, fn in OPENTANGLE_BUILDERS.items()}
    for name, t in corpus_tangles().items():
        out["opened_" + name] = open_cobordism_tangle(t)
    return out


def get_tangle(name):
    if name in CLOSED_BUILDERS:
        return CLOSED_BUILDERS[name]()
    if name in BOUNDARY_BUILDERS:
        return BOUNDARY_BUILDERS[name]()
    raise KeyError("unknown corpus tangle %r" % name)


def get_opentangle(name):
    all_open = corpus_opentangles()
    if name not in all_open:
        raise KeyError("unknown corpus opentangle %r" % name)
    return all_open[name]
