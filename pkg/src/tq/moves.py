"""Equivalence moves on tangle diagrams.

Cobordism-tangle moves:
  SO          reverse the orientation of one surgery circle.
  KI_add+/-   insert a split one-framed surgery circle at a level.
  KI_remove   delete an isolated surgery circle of framing +-1.
  KII_slide   slide the strand at an upward port over an isolated surgery
              circle: the circle is re-drawn next to the site and the
              strand detours around it, clasping it once per framing unit
              and picking up the matching framing curls.
  COUPON      same slide for the full endpoint bundle of one boundary
              component, moved as a unit (the bundle dives behind the
              circle and the cable corrections keep it parallel).
  TWIST       full twist of the two endpoint strands of one boundary arc;
              the inverse twist at the same site cancels it exactly.

Opentangle moves (preimages of one cobordism tangle under closure):
  BA          toggle over/under where a strand passes both legs of one
              cupped bottom pair on consecutive slices.
  ESC         exchange two adjacent surgery bottom pairs.
  ROT         opposite twists on the two legs of a cupped bottom pair.

Ribbon Reidemeister moves are available in a basic form: R1ribbon trades
a twist token for an explicit curl, R2 inserts or cancels an opposite
crossing pair, R3 slides a strand across a crossing.

A move is written `MOVE <kind> @ <site> [params]` with comma-separated
integers; apply_move raises ValueError on an inapplicable site, and
enumerate_sites only returns applicable moves.  Every rewrite preserves
the boundary signature, the roles, and the official surgery order.
"""

import random

from .tangles import (CAP_IN, CUP_OUT, CobordismTangle, Opentangle,
                      SlicedDiagram, _flip, _identity_row,
                      framings_and_linking, reverse_components)

COBORDISM_KINDS = ("SO", "KI_add+", "KI_add-", "KI_remove", "KII_slide",
                   "COUPON", "TWIST")
OPENTANGLE_KINDS = ("BA", "ESC", "ROT")
REIDEMEISTER_KINDS = ("R1ribbon", "R2", "R3")
ALL_KINDS = COBORDISM_KINDS + OPENTANGLE_KINDS + REIDEMEISTER_KINDS

_OUT_ARITY = {"I+": 1, "I-": 1, "T+": 1, "T-": 1, "X+": 2, "X-": 2,
              "A": 0, "At": 0, "U": 2, "Ut": 2}


class Move:
    """A move kind with its site coordinates and extra parameters."""

    __slots__ = ("kind", "site", "params")

    def __init__(self, kind, site, params=()):
        assert kind in ALL_KINDS, kind
        self.kind = kind
        self.site = tuple(site)
        self.params = tuple(params)

    def __eq__(self, other):
        return (isinstance(other, Move) and self.kind == other.kind
                and self.site == other.site and self.params == other.params)

    def __hash__(self):
        return hash((self.kind, self.site, self.params))

    def __str__(self):
        text = "MOVE %s @ %s" % (self.kind, ",".join(map(str, self.site)))
        if self.params:
            text += " " + ",".join(map(str, self.params))
        return text

    def __repr__(self):
        return "Move(%r, %r, %r)" % (self.kind, self.site, self.params)


def parse_move(line):
    parts = line.split()
    if len(parts) not in (4, 5) or parts[0] != "MOVE" or parts[2] != "@":
        raise ValueError("bad move line: %r" % line)
    site = tuple(int(x) for x in parts[3].split(","))
    params = tuple(int(x) for x in parts[4].split(",")) if len(parts) == 5 else ()
    return Move(parts[1], site, params)


### structural helpers


def _insert_rows(diagram, level, rows):
    slices = [list(s) for s in diagram.slices]
    return SlicedDiagram(diagram.bottom,
                         slices[:level] + [list(r) for r in rows] + slices[level:])


def _shift_ports(ports, level, count):
    return [(l + count, c) if l > level else (l, c) for (l, c) in ports]


def _isolated_circle(t, cid):
    """(cup_row, cap_row, col) when component cid is a crossing-free circle
    living on two fixed adjacent columns, else None."""
    tr = t.trace
    if cid not in tr.closed:
        return None
    if any(cid in pair for _, _, _, _, pair in tr.crossings):
        return None
    by_level = {}
    for (l, c) in tr.ports[cid]:
        by_level.setdefault(l, []).append(c)
    levels = sorted(by_level)
    cols = sorted(by_level[levels[0]])
    if len(cols) != 2 or cols[1] != cols[0] + 1:
        return None
    for l in levels:
        if sorted(by_level[l]) != cols:
            return None
    if levels != list(range(levels[0], levels[-1] + 1)):
        return None
    return (levels[0] - 1, levels[-1], cols[0])


def _excise_circle(diagram, zone):
    """Delete an isolated circle's tokens.  Returns the new diagram and a
    port transform for positions of the remaining strands."""
    cup_row, cap_row, col = zone
    rows = []
    dropped = []
    for r, layout in enumerate(diagram.layouts):
        if r < cup_row or r > cap_row:
            rows.append([tok for tok, _, _ in layout])
            continue
        keep = []
        for tok, p, q in layout:
            if r == cup_row and tok in CUP_OUT and q == col:
                continue
            if r > cup_row and p in (col, col + 1):
                continue
            keep.append(tok)
        if all(tok in ("I+", "I-") for tok in keep):
            # a touched row reduced to identities carries nothing
            dropped.append(r)
        else:
            rows.append(keep)
    d2 = SlicedDiagram(diagram.bottom, rows)

    def transform(port):
        l, x = port
        if cup_row < l <= cap_row and x > col + 1:
            x -= 2
        l -= sum(1 for r in dropped if r < l)
        return (l, x)

    return d2, transform


def _feeder(layout, col):
    for tok, p, q in layout:
        k = _OUT_ARITY[tok]
        if k and q <= col < q + k:
            return tok, p, q
    raise AssertionError("no token emits column %d" % col)


def _trace_down(diagram, lvl, col):
    """Follow a strand down through identity and twist tokens to the bottom
    boundary; None when it meets anything else."""
    while lvl > 0:
        tok, p, _ = _feeder(diagram.layouts[lvl - 1], col)
        if tok not in ("I+", "I-", "T+", "T-"):
            return None
        col = p
        lvl -= 1
    return col


def _token_index(layout, pos, kinds):
    for i, (tok, p, _) in enumerate(layout):
        if p == pos and tok in kinds:
            return i
    return None


### cobordism moves


def _apply_so(t, k):
    cid = t.surgery_order[k]
    d2 = reverse_components(t.diagram, [cid], t.trace)
    return CobordismTangle(d2, t.g, t.n, t.h, surgery_ports=t.marker_ports())


def _ki_rows(sig, sign):
    idr = _identity_row(sig)
    tw = "T+" if sign > 0 else "T-"
    return [idr + ["Ut"], idr + [tw, "I-"], idr + ["A"]]


def _apply_ki_add(t, level, sign):
    sig = t.diagram.levels[level]
    d2 = _insert_rows(t.diagram, level, _ki_rows(sig, sign))
    ports = _shift_ports(t.marker_ports(), level, 3)
    ports.append((level + 1, len(sig)))
    return CobordismTangle(d2, t.g, t.n + 1, t.h, surgery_ports=ports)


def _apply_ki_remove(t, k):
    cid = t.surgery_order[k]
    zone = _isolated_circle(t, cid)
    fr, _ = framings_and_linking(t.diagram, t.trace)
    if zone is None or fr[cid] not in (1, -1):
        raise ValueError("inapplicable site: not an isolated one-framed circle")
    d2, xf = _excise_circle(t.diagram, zone)
    ports = [xf(p) for i, p in enumerate(t.marker_ports()) if i != k]
    return CobordismTangle(d2, t.g, t.n - 1, t.h, surgery_ports=ports)


def _kii_rows(sig, c, f):
    """The slide block: the upward strand at column c dives, runs past the
    re-drawn circle, clasps it |f| times and carries f framing curls."""
    pre = _identity_row(sig[:c])
    suf = _identity_row(sig[c + 1:])
    rows = [pre + ["I+", "U"] + suf,
            pre + ["A", "I+"] + suf,
            pre + ["Ut", "I+"] + suf]
    tw = "T+" if f > 0 else "T-"
    x = "X+" if f > 0 else "X-"
    for _ in range(abs(f)):
        rows.append(pre + [tw, "I-", "I+"] + suf)
        rows.append(pre + ["I+", x] + suf)
        rows.append(pre + ["I+", x] + suf)
        rows.append(pre + ["I+", "I-", tw] + suf)
    rows.append(pre + ["A", "I+"] + suf)
    return rows


def _apply_kii(t, level, col, k):
    cid = t.surgery_order[k]
    zone = _isolated_circle(t, cid)
    if zone is None:
        raise ValueError("inapplicable site: slid-over circle is not isolated")
    if t.diagram.levels[level][col] != "+" or t.trace.comp[(level, col)] == cid:
        raise ValueError("inapplicable site: need an upward port off the circle")
    fr, _ = framings_and_linking(t.diagram, t.trace)
    f = fr[cid]
    d1, xf = _excise_circle(t.diagram, zone)
    lvl, c = xf((level, col))
    rows = _kii_rows(d1.levels[lvl], c, f)
    d2 = _insert_rows(d1, lvl, rows)
    ports = []
    for i, p in enumerate(t.marker_ports()):
        if i == k:
            ports.append((lvl + 3, c))
        else:
            ports.append(_shift_ports([xf(p)], lvl, len(rows))[0])
    return CobordismTangle(d2, t.g, t.n, t.h, surgery_ports=ports)


def _coupon_rows(sig, a, wb, f):
    """Bundle slide block for the wb strands at columns a..a+wb-1: nested
    dive, re-drawn circle, per-strand clasps plus the cable twist.  Returns
    (rows, row index of the circle's cup)."""
    pre = _identity_row(sig[:a])
    suf = _identity_row(sig[a + wb:])
    dd = list(sig[a:a + wb])
    mid = list(dd)
    rows = []

    def emit(p, tok, consumed):
        rows.append(pre + _identity_row(mid[:p]) + [tok]
                    + _identity_row(mid[p + consumed:]) + suf)

    for m in range(1, wb + 1):
        d = dd[wb - m]
        emit(wb + m - 1, "U" if d == "+" else "Ut", 0)
        mid[wb + m - 1:wb + m - 1] = [_flip(d), d]
    for m in range(1, wb + 1):
        d = dd[wb - m]
        emit(wb - m, "A" if d == "+" else "At", 2)
        del mid[wb - m:wb - m + 2]
    assert mid == dd
    joff = len(rows)
    emit(0, "Ut", 0)
    mid[0:0] = ["+", "-"]
    tw = "T+" if f > 0 else "T-"
    x = "X+" if f > 0 else "X-"
    for _ in range(abs(f)):
        emit(0, tw, 1)
        for p in range(1, wb + 1):
            emit(p, x, 2)
            mid[p], mid[p + 1] = mid[p + 1], mid[p]
        for p in range(wb, 0, -1):
            emit(p, x, 2)
            mid[p], mid[p + 1] = mid[p + 1], mid[p]
        for _rep in range(wb):
            for p in range(2, wb + 1):
                emit(p, x, 2)
                mid[p], mid[p + 1] = mid[p + 1], mid[p]
        rows.append(pre + _identity_row(mid[:2]) + [tw] * wb + suf)
    emit(0, "A", 2)
    del mid[0:2]
    return rows, joff


def _apply_coupon(t, side, i, k):
    cid = t.surgery_order[k]
    zone = _isolated_circle(t, cid)
    if zone is None:
        raise ValueError("inapplicable site: slid-over circle is not isolated")
    groups = t.g if side == 0 else t.h
    if not (0 <= i < len(groups)) or groups[i] == 0:
        raise ValueError("inapplicable site: no boundary bundle %d" % i)
    fr, _ = framings_and_linking(t.diagram, t.trace)
    f = fr[cid]
    d1, xf = _excise_circle(t.diagram, zone)
    lvl = 0 if side == 0 else d1.height
    a = 2 * sum(groups[:i])
    wb = 2 * groups[i]
    rows, joff = _coupon_rows(d1.levels[lvl], a, wb, f)
    d2 = _insert_rows(d1, lvl, rows)
    ports = []
    for idx, p in enumerate(t.marker_ports()):
        if idx == k:
            ports.append((lvl + joff + 1, a))
        else:
            ports.append(_shift_ports([xf(p)], lvl, len(rows))[0])
    return CobordismTangle(d2, t.g, t.n, t.h, surgery_ports=ports)


def _twist_rows(sig, p, s):
    pre = _identity_row(sig[:p])
    suf = _identity_row(sig[p + 2:])
    x = "X+" if s > 0 else "X-"
    tw = "T+" if s > 0 else "T-"
    return [pre + [x] + suf, pre + [x] + suf, pre + [tw, tw] + suf]


def _apply_twist(t, side, i, arc, s):
    groups = t.g if side == 0 else t.h
    if not (0 <= i < len(groups)) or not (0 <= arc < groups[i]):
        raise ValueError("inapplicable site: no such boundary arc")
    d = t.diagram
    lvl = 0 if side == 0 else d.height
    p = 2 * (sum(groups[:i]) + arc)
    sig = d.levels[lvl]
    undo = _twist_rows(sig, p, -s)
    window = ([list(r) for r in d.slices[0:3]] if side == 0
              else [list(r) for r in d.slices[max(0, d.height - 3):]])
    if len(window) == 3 and window == undo:
        slices = [list(r) for r in d.slices]
        if side == 0:
            d2 = SlicedDiagram(d.bottom, slices[3:])
            ports = _shift_ports(t.marker_ports(), 0, -3)
        else:
            d2 = SlicedDiagram(d.bottom, slices[:-3])
            ports = t.marker_ports()
    else:
        d2 = _insert_rows(d, lvl, _twist_rows(sig, p, s))
        ports = _shift_ports(t.marker_ports(), lvl, 3)
    return CobordismTangle(d2, t.g, t.n, t.h, surgery_ports=ports)


### opentangle moves


def _ba_legs(o, row, pos, dx):
    """For the double pass with the lower crossing at (row, pos) and the
    upper one at pos+dx, return the bottom pair index both passed strands
    belong to, or None."""
    d = o.diagram
    lay = d.layouts
    if dx == 1:
        a = _trace_down(d, row, pos + 1)
        b = _trace_down(d, row + 1, pos + 2)
    else:
        a = _trace_down(d, row, pos)
        b = _trace_down(d, row + 1, pos - 1)
    if a is None or b is None or a // 2 != b // 2 or a == b:
        return None
    pair = a // 2
    if pair < sum(o.g):
        return None
    return pair


def _toggle(tok):
    return {"X+": "X-", "X-": "X+"}[tok]


def _apply_ba(o, row, pos, dx):
    d = o.diagram
    if not (0 <= row < d.height - 1):
        raise ValueError("inapplicable site: rows out of range")
    lo = _token_index(d.layouts[row], pos, ("X+", "X-"))
    hi = _token_index(d.layouts[row + 1], pos + dx, ("X+", "X-"))
    if lo is None or hi is None:
        raise ValueError("inapplicable site: no crossing pair")
    if d.slices[row][lo] != d.slices[row + 1][hi]:
        raise ValueError("inapplicable site: mixed crossing pair")
    if _ba_legs(o, row, pos, dx) is None:
        raise ValueError("inapplicable site: pass does not cover one pair")
    rows = [list(r) for r in d.slices]
    rows[row][lo] = _toggle(rows[row][lo])
    rows[row + 1][hi] = _toggle(rows[row + 1][hi])
    return Opentangle(SlicedDiagram(d.bottom, rows), o.g, o.n, o.h)


def _apply_esc(o, k, s):
    gg = sum(o.g)
    if not (gg <= k and k + 1 < gg + o.n):
        raise ValueError("inapplicable site: need adjacent surgery pairs")
    d = o.diagram
    sig = d.levels[0]
    c = 2 * k
    x = "X+" if s > 0 else "X-"
    pre = _identity_row(sig[:c])
    suf = _identity_row(sig[c + 4:])
    rows = [pre + ["I+", x, "I-"] + suf,
            pre + [x, x] + suf,
            pre + ["I+", x, "I-"] + suf]
    return Opentangle(_insert_rows(d, 0, rows), o.g, o.n, o.h)


def _apply_rot(o, k, s):
    gg, hh = sum(o.g), sum(o.h)
    if not (gg <= k < gg + o.n + hh):
        raise ValueError("inapplicable site: pair is not cupped by closure")
    d = o.diagram
    sig = d.levels[0]
    c = 2 * k
    pre = _identity_row(sig[:c])
    suf = _identity_row(sig[c + 2:])
    ta, tb = ("T+", "T-") if s > 0 else ("T-", "T+")
    return Opentangle(_insert_rows(d, 0, [pre + [ta, tb] + suf]),
                      o.g, o.n, o.h)


### ribbon Reidemeister moves


def _curl_rows(sig, p, sign):
    d = sig[p]
    pre = _identity_row(sig[:p])
    suf = _identity_row(sig[p + 1:])
    x = "X+" if sign > 0 else "X-"
    if d == "+":
        return [pre + ["I+", "Ut"] + suf,
                pre + [x, "I-"] + suf,
                pre + ["I+", "A"] + suf]
    return [pre + ["I-", "U"] + suf,
            pre + [x, "I+"] + suf,
            pre + ["I-", "At"] + suf]


def _rebuild(t, d2, ports):
    if isinstance(t, Opentangle):
        return Opentangle(d2, t.g, t.n, t.h)
    return CobordismTangle(d2, t.g, t.n, t.h, surgery_ports=ports)


def _apply_r1(t, row, pos, mode):
    d = t.diagram
    ports = None if isinstance(t, Opentangle) else t.marker_ports()
    if mode == 0:
        # twist token -> explicit curl
        i = _token_index(d.layouts[row], pos, ("T+", "T-"))
        if i is None:
            raise ValueError("inapplicable site: no twist token")
        sign = 1 if d.slices[row][i] == "T+" else -1
        sig = d.levels[row]
        rows = [list(r) for r in d.slices]
        rows[row][i] = "I+" if sig[pos] == "+" else "I-"
        d2 = SlicedDiagram(d.bottom, rows[:row] + _curl_rows(sig, pos, sign)
                           + rows[row:])
        if ports is not None:
            ports = _shift_ports(ports, row, 3)
        return _rebuild(t, d2, ports)
    # explicit curl -> twist token
    site = _match_curl(d, row, pos)
    if site is None:
        raise ValueError("inapplicable site: no curl at this window")
    sign = site
    sig = d.levels[row]
    idr = _identity_row(sig)
    idr[pos] = "T+" if sign > 0 else "T-"
    rows = [list(r) for r in d.slices]
    d2 = SlicedDiagram(d.bottom, rows[:row] + [idr] + rows[row + 3:])
    if ports is not None:
        ports = _shift_ports(ports, row, -2)
    return _rebuild(t, d2, ports)


def _match_curl(d, row, pos):
    """Sign of the curl occupying rows row..row+2 at column pos, provided
    everything else in the window is a passing identity; else None."""
    if row + 3 > d.height:
        return None
    sig = d.levels[row]
    want = _curl_rows(sig, pos, 1)
    got = [list(r) for r in d.slices[row:row + 3]]
    if got == want:
        return 1
    if got == [list(r) for r in _curl_rows(sig, pos, -1)]:
        return -1
    return None


def _apply_r2(t, where, pos, mode, s=1):
    d = t.diagram
    ports = None if isinstance(t, Opentangle) else t.marker_ports()
    if mode == 1:
        # insert a cancelling crossing pair at level `where`
        sig = d.levels[where]
        if pos + 2 > len(sig):
            raise ValueError("inapplicable site: needs two adjacent strands")
        pre = _identity_row(sig[:pos])
        suf = _identity_row(sig[pos + 2:])
        xa, xb = ("X+", "X-") if s > 0 else ("X-", "X+")
        swapped = list(sig)
        swapped[pos], swapped[pos + 1] = swapped[pos + 1], swapped[pos]
        rows = [pre + [xa] + suf,
                _identity_row(swapped[:pos]) + [xb]
                + _identity_row(swapped[pos + 2:])]
        d2 = _insert_rows(d, where, rows)
        if ports is not None:
            ports = _shift_ports(ports, where, 2)
        return _rebuild(t, d2, ports)
    # cancel the pair at rows where, where+1
    if where + 1 >= d.height:
        raise ValueError("inapplicable site: rows out of range")
    lo = _token_index(d.layouts[where], pos, ("X+", "X-"))
    hi = _token_index(d.layouts[where + 1], pos, ("X+", "X-"))
    if lo is None or hi is None:
        raise ValueError("inapplicable site: no crossing pair")
    if d.slices[where][lo] == d.slices[where + 1][hi]:
        raise ValueError("inapplicable site: crossings do not cancel")
    rows = [list(r) for r in d.slices]
    sig = d.levels[where]
    mid = d.levels[where + 1]
    rows[where][lo:lo + 1] = [_id_tok(sig[pos]), _id_tok(sig[pos + 1])]
    rows[where + 1][hi:hi + 1] = [_id_tok(sig[pos]), _id_tok(sig[pos + 1])]
    d2 = SlicedDiagram(d.bottom, rows)
    if ports is not None:
        ports = [( (l, pos + 1) if (l, c) == (where + 1, pos) else
                   (l, pos) if (l, c) == (where + 1, pos + 1) else (l, c))
                 for (l, c) in ports]
    return _rebuild(t, d2, ports)


def _id_tok(ch):
    return "I+" if ch == "+" else "I-"


def _plain_x_row(d, row):
    """(position, token) when the row is one crossing among identities."""
    xs = [(p, tok) for tok, p, _ in d.layouts[row] if tok in ("X+", "X-")]
    if len(xs) != 1:
        return None
    if any(tok not in ("I+", "I-", "X+", "X-") for tok, _, _ in d.layouts[row]):
        return None
    return xs[0]


def _apply_r3(t, row):
    d = t.diagram
    if row + 3 > d.height:
        raise ValueError("inapplicable site: rows out of range")
    found = [_plain_x_row(d, r) for r in (row, row + 1, row + 2)]
    if any(f is None for f in found):
        raise ValueError("inapplicable site: not a braid window")
    (p0, t0), (p1, t1), (p2, t2) = found
    if not (p0 == p2 and abs(p1 - p0) == 1 and t0 == t1 == t2):
        raise ValueError("inapplicable site: not a braid relation pattern")
    rows = [list(r) for r in d.slices]
    for r, newp in zip((row, row + 1, row + 2), (p1, p0, p1)):
        sig = d.levels[r]
        pre = _identity_row(sig[:newp])
        suf = _identity_row(sig[newp + 2:])
        rows[r] = pre + [t0] + suf
    d2 = SlicedDiagram(d.bottom, rows)
    ports = None if isinstance(t, Opentangle) else t.marker_ports()
    return _rebuild(t, d2, ports)


### enumeration


def enumerate_sites(t, kind):
    """All applicable moves of one kind, in a deterministic order."""
    is_open = isinstance(t, Opentangle)
    d = t.diagram
    out = []
    if kind == "SO" and not is_open:
        out = [Move("SO", (k,)) for k in range(t.n)]
    elif kind in ("KI_add+", "KI_add-") and not is_open:
        out = [Move(kind, (l,)) for l in range(d.height + 1)]
    elif kind == "KI_remove" and not is_open:
        fr, _ = framings_and_linking(d, t.trace)
        for k, cid in enumerate(t.surgery_order):
            if fr[cid] in (1, -1) and _isolated_circle(t, cid):
                out.append(Move("KI_remove", (k,)))
    elif kind == "KII_slide" and not is_open:
        for k, cid in enumerate(t.surgery_order):
            if not _isolated_circle(t, cid):
                continue
            for lvl, sig in enumerate(d.levels):
                for c, ch in enumerate(sig):
                    if ch == "+" and t.trace.comp[(lvl, c)] != cid:
                        out.append(Move("KII_slide", (lvl, c), (k,)))
    elif kind == "COUPON" and not is_open:
        circles = [k for k, cid in enumerate(t.surgery_order)
                   if _isolated_circle(t, cid)]
        for k in circles:
            for side, groups in ((0, t.g), (1, t.h)):
                for i, gi in enumerate(groups):
                    if gi:
                        out.append(Move("COUPON", (side, i), (k,)))
    elif kind == "TWIST" and not is_open:
        for side, groups in ((0, t.g), (1, t.h)):
            for i, gi in enumerate(groups):
                for arc in range(gi):
                    for s in (1, -1):
                        out.append(Move("TWIST", (side, i, arc), (s,)))
    elif kind == "BA" and is_open:
        for row in range(d.height - 1):
            for tok, p, _ in d.layouts[row]:
                if tok not in ("X+", "X-"):
                    continue
                for dx in (1, -1):
                    hi = _token_index(d.layouts[row + 1], p + dx, (tok,))
                    if hi is not None and _ba_legs(t, row, p, dx) is not None:
                        out.append(Move("BA", (row, p, dx)))
    elif kind == "ESC" and is_open:
        gg = sum(t.g)
        for k in range(gg, gg + t.n - 1):
            for s in (1, -1):
                out.append(Move("ESC", (k,), (s,)))
    elif kind == "ROT" and is_open:
        gg, hh = sum(t.g), sum(t.h)
        for k in range(gg, gg + t.n + hh):
            for s in (1, -1):
                out.append(Move("ROT", (k,), (s,)))
    elif kind == "R1ribbon":
        for row, layout in enumerate(d.layouts):
            for tok, p, _ in layout:
                if tok in ("T+", "T-"):
                    out.append(Move("R1ribbon", (row, p), (0,)))
        for row in range(d.height - 2):
            for p in range(len(d.levels[row])):
                if _match_curl(d, row, p) is not None:
                    out.append(Move("R1ribbon", (row, p), (1,)))
    elif kind == "R2":
        for lvl in range(d.height + 1):
            for p in range(len(d.levels[lvl]) - 1):
                for s in (1, -1):
                    out.append(Move("R2", (lvl, p), (1, s)))
        for row in range(d.height - 1):
            for tok, p, _ in d.layouts[row]:
                if tok not in ("X+", "X-"):
                    continue
                hi = _token_index(d.layouts[row + 1], p, (_toggle(tok),))
                if hi is not None:
                    out.append(Move("R2", (row, p), (0,)))
    elif kind == "R3":
        for row in range(d.height - 2):
            found = [_plain_x_row(d, r) for r in (row, row + 1, row + 2)]
            if any(f is None for f in found):
                continue
            (p0, t0), (p1, t1), (p2, t2) = found
            if p0 == p2 and abs(p1 - p0) == 1 and t0 == t1 == t2:
                out.append(Move("R3", (row,)))
    return out


def apply_move(t, m):
    """Rewrite t by one move; raises ValueError on an inapplicable site."""
    is_open = isinstance(t, Opentangle)
    kind = m.kind
    try:
        if kind in COBORDISM_KINDS and is_open:
            raise ValueError("inapplicable site: cobordism move on opentangle")
        if kind in OPENTANGLE_KINDS and not is_open:
            raise ValueError("inapplicable site: opentangle move on cobordism")
        if kind == "SO":
            return _apply_so(t, m.site[0])
        if kind == "KI_add+":
            return _apply_ki_add(t, m.site[0], 1)
        if kind == "KI_add-":
            return _apply_ki_add(t, m.site[0], -1)
        if kind == "KI_remove":
            return _apply_ki_remove(t, m.site[0])
        if kind == "KII_slide":
            return _apply_kii(t, m.site[0], m.site[1], m.params[0])
        if kind == "COUPON":
            return _apply_coupon(t, m.site[0], m.site[1], m.params[0])
        if kind == "TWIST":
            return _apply_twist(t, m.site[0], m.site[1], m.site[2], m.params[0])
        if kind == "BA":
            return _apply_ba(t, m.site[0], m.site[1], m.site[2])
        if kind == "ESC":
            return _apply_esc(t, m.site[0], m.params[0])
        if kind == "ROT":
            return _apply_rot(t, m.site[0], m.params[0])
        if kind == "R1ribbon":
            return _apply_r1(t, m.site[0], m.site[1], m.params[0])
        if kind == "R2":
            return _apply_r2(t, m.site[0], m.site[1], m.params[0],
                             m.params[1] if len(m.params) > 1 else 1)
        if kind == "R3":
            return _apply_r3(t, m.site[0])
    except IndexError:
        raise ValueError("inapplicable site: malformed coordinates for %s"
                         % kind)
    raise ValueError("unknown move kind %r" % kind)


### random equivalents


def _added_width(t, m):
    if m.kind in ("KI_add+", "KI_add-"):
        return 2
    if m.kind == "KII_slide":
        return 4
    if m.kind == "COUPON":
        groups = t.g if m.site[0] == 0 else t.h
        return 4 * groups[m.site[1]] + 2
    if m.kind == "R1ribbon" and m.params[0] == 0:
        return 2
    return 0


def random_equivalent(t, seed, max_moves, kinds=None, budget=16, record=None):
    """Apply up to max_moves randomly chosen applicable moves, reproducibly
    from the seed.  Returns t unchanged when nothing applies; appends each
    applied Move to record when given."""
    rng = random.Random(seed)
    if kinds is None:
        kinds = OPENTANGLE_KINDS if isinstance(t, Opentangle) else COBORDISM_KINDS
    for _ in range(max_moves):
        width = max(len(sig) for sig in t.diagram.levels)
        options = []
        for kind in kinds:
            for m in enumerate_sites(t, kind):
                if width + _added_width(t, m) <= budget:
                    options.append(m)
        if not options:
            break
        m = rng.choice(options)
        t = apply_move(t, m)
        if record is not None:
            record.append(m)
    return t
