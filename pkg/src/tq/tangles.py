"""Sliced ribbon tangle diagrams: parsing, tracing, boundary roles.

A diagram is a bottom-to-top list of slices; each slice is a row of
generator tokens.  Token alphabet and the orientation they consume/emit
(read left to right at the level below/above, '+' = strand points up):

    I+ : '+' -> '+'        I- : '-' -> '-'
    X+ : d1 d2 -> d2 d1    (left input passes over)
    X- : d1 d2 -> d2 d1    (right input passes over)
    T+ / T- : d -> d       (positive / negative curl)
    A  : '+' '-' -> .      (pairing cap)
    At : '-' '+' -> .      (cap through the pivot)
    U  : . -> '-' '+'      (cup)
    Ut : . -> '+' '-'      (cup through the inverse pivot)

Boundary conventions for a cobordism tangle (g, n, h): 2|g| bottom points,
entrance pair k carrying ('-','+'); 2|h| top points, exit pair k carrying
('-','+'); exactly n closed components, the surgery link.  An opentangle
(g, n, h) has 2(|g|+n+|h|) bottom points, pairs 1..|g|+n carrying ('+','-')
joined below-to-below, then |h| pairs ('+','-') whose strands run to the
2|h| top points, pairs ('+','-'); no closed components.
"""

from fractions import Fraction

from .linalg import inertia_symmetric

TOKENS = ("I+", "I-", "X+", "X-", "A", "At", "U", "Ut", "T+", "T-")
ARITY = {"I+": (1, 1), "I-": (1, 1), "X+": (2, 2), "X-": (2, 2),
         "A": (2, 0), "At": (2, 0), "U": (0, 2), "Ut": (0, 2),
         "T+": (1, 1), "T-": (1, 1)}
CAP_IN = {"A": ("+", "-"), "At": ("-", "+")}
CUP_OUT = {"U": ("-", "+"), "Ut": ("+", "-")}


def slice_layout(sig, tokens):
    """Apply one slice to a signature.  Returns (out_signature, layout) where
    layout lists (token, in_position, out_position) per token."""
    out = []
    layout = []
    p = 0
    for tok in tokens:
        if tok not in ARITY:
            raise ValueError("unknown token %r" % (tok,))
        ain, _ = ARITY[tok]
        ins = tuple(sig[p:p + ain])
        if len(ins) < ain:
            raise ValueError("slice is wider than its input signature")
        layout.append((tok, p, len(out)))
        if tok in ("I+", "I-"):
            want = "+" if tok == "I+" else "-"
            if ins[0] != want:
                raise ValueError("identity token %s on a %r strand" % (tok, ins[0]))
            out.append(ins[0])
        elif tok in ("T+", "T-"):
            out.append(ins[0])
        elif tok in ("X+", "X-"):
            out.extend((ins[1], ins[0]))
        elif tok in CAP_IN:
            if ins != CAP_IN[tok]:
                raise ValueError("cap %s cannot consume %r" % (tok, ins))
        else:
            out.extend(CUP_OUT[tok])
        p += ain
    if p != len(sig):
        raise ValueError("slice consumes %d of %d strands" % (p, len(sig)))
    return tuple(out), layout


class SlicedDiagram:
    """Immutable validated diagram: bottom signature plus slices."""

    def __init__(self, bottom, slices):
        self.bottom = tuple(bottom)
        self.slices = tuple(tuple(s) for s in slices)
        levels = [self.bottom]
        layouts = []
        for tokens in self.slices:
            sig, layout = slice_layout(levels[-1], tokens)
            levels.append(sig)
            layouts.append(layout)
        self.levels = tuple(levels)
        self.layouts = tuple(layouts)

    @property
    def top(self):
        return self.levels[-1]

    @property
    def height(self):
        return len(self.slices)

    def __eq__(self, other):
        return (isinstance(other, SlicedDiagram)
                and self.bottom == other.bottom and self.slices == other.slices)

    def __hash__(self):
        return hash((self.bottom, self.slices))

    def __repr__(self):
        return "SlicedDiagram(%d strands, %d slices)" % (
            len(self.bottom), len(self.slices))


### component tracing


class Trace:
    """Connected components of a diagram.

    comp: (level, col) -> component id; ids are ordered by each component's
    lexicographically least port.  crossings: (level, col, token, (d1, d2),
    (comp_left_in, comp_right_in)).  twists: (token, comp).
    """

    def __init__(self, diagram):
        d = diagram
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for l, sig in enumerate(d.levels):
            for c in range(len(sig)):
                parent.setdefault((l, c), (l, c))
        raw_crossings = []
        raw_twists = []
        for l, layout in enumerate(d.layouts):
            sig = d.levels[l]
            for tok, p, q in layout:
                if tok in ("I+", "I-", "T+", "T-"):
                    union((l, p), (l + 1, q))
                    if tok[0] == "T":
                        raw_twists.append((tok, (l, p)))
                elif tok in ("X+", "X-"):
                    union((l, p), (l + 1, q + 1))
                    union((l, p + 1), (l + 1, q))
                    raw_crossings.append((l, p, tok, (sig[p], sig[p + 1])))
                elif tok in CAP_IN:
                    union((l, p), (l, p + 1))
                else:
                    union((l + 1, q), (l + 1, q + 1))

        reps = {}
        for port in parent:
            reps.setdefault(find(port), []).append(port)
        ordered = sorted(reps, key=lambda r: min(reps[r]))
        self.ids = {rep: i for i, rep in enumerate(ordered)}
        self.comp = {port: self.ids[find(port)] for port in parent}
        self.ports = [sorted(reps[rep]) for rep in ordered]
        self.n_components = len(ordered)

        height = d.height
        self.bottom_of = [[] for _ in ordered]
        self.top_of = [[] for _ in ordered]
        for c in range(len(d.bottom)):
            self.bottom_of[self.comp[(0, c)]].append(c)
        for c in range(len(d.top)):
            self.top_of[self.comp[(height, c)]].append(c)
        self.closed = [i for i in range(self.n_components)
                       if not self.bottom_of[i] and not self.top_of[i]]
        self.crossings = [(l, p, tok, dirs,
                           (self.comp[(l, p)], self.comp[(l, p + 1)]))
                          for l, p, tok, dirs in raw_crossings]
        self.twists = [(tok, self.comp[port]) for tok, port in raw_twists]

    def down_ports(self, diagram, cid):
        return [(l, c) for (l, c) in self.ports[cid]
                if diagram.levels[l][c] == "-"]


def crossing_sign(tok, dirs):
    s = 1 if dirs[0] == dirs[1] else -1
    return s if tok == "X+" else -s


def framings_and_linking(diagram, trace):
    """Per-component framing (writhe plus curls) and pairwise linking numbers
    over all components; linking halves the signed inter-crossing sum."""
    n = trace.n_components
    fr = [0] * n
    lk = [[0] * n for _ in range(n)]
    for _, _, tok, dirs, (ca, cb) in trace.crossings:
        s = crossing_sign(tok, dirs)
        if ca == cb:
            fr[ca] += s
        else:
            lk[ca][cb] += s
            lk[cb][ca] += s
    for tok, cid in trace.twists:
        fr[cid] += 1 if tok == "T+" else -1
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = fr[i]
        for j in range(n):
            if i != j:
                assert lk[i][j] % 2 == 0, "odd inter-component crossing sum"
                out[i][j] = lk[i][j] // 2
    return fr, out


### boundary roles


def _group_spans(tup):
    spans = []
    start = 0
    for gi in tup:
        spans.append((start, start + gi))
        start += gi
    return spans


class CobordismTangle:
    """Validated (g, n, h) cobordism tangle with an official surgery order."""

    def __init__(self, diagram, g, n, h, surgery_ports=None):
        self.diagram = diagram
        self.g = tuple(g)
        self.n = n
        self.h = tuple(h)
        tr = Trace(diagram)
        self.trace = tr
        gg, hh = sum(self.g), sum(self.h)
        if len(diagram.bottom) != 2 * gg:
            raise ValueError("expected %d bottom points, found %d"
                             % (2 * gg, len(diagram.bottom)))
        if len(diagram.top) != 2 * hh:
            raise ValueError("expected %d top points, found %d"
                             % (2 * hh, len(diagram.top)))
        self.roles = {}
        height = diagram.height
        for k in range(gg):
            a, b = 2 * k, 2 * k + 1
            if diagram.bottom[a] != "-" or diagram.bottom[b] != "+":
                raise ValueError("entrance pair %d must carry ('-','+')" % (k + 1))
            ca, cb = tr.comp[(0, a)], tr.comp[(0, b)]
            if ca != cb:
                raise ValueError("entrance pair %d is not a single arc" % (k + 1))
            if tr.top_of[ca] or len(tr.bottom_of[ca]) != 2:
                raise ValueError("entrance arc %d leaks to other endpoints" % (k + 1))
            self.roles[ca] = ("entrance", _which_group(self.g, k))
        for k in range(hh):
            a, b = 2 * k, 2 * k + 1
            if diagram.top[a] != "-" or diagram.top[b] != "+":
                raise ValueError("exit pair %d must carry ('-','+')" % (k + 1))
            ca, cb = tr.comp[(height, a)], tr.comp[(height, b)]
            if ca != cb:
                raise ValueError("exit pair %d is not a single arc" % (k + 1))
            if tr.bottom_of[ca] or len(tr.top_of[ca]) != 2:
                raise ValueError("exit arc %d leaks to other endpoints" % (k + 1))
            self.roles[ca] = ("exit", _which_group(self.h, k))
        if len(tr.closed) != n:
            raise ValueError("expected %d surgery components, found %d"
                             % (n, len(tr.closed)))
        if surgery_ports is None:
            order = list(tr.closed)
        else:
            assert len(surgery_ports) == n
            order = [tr.comp[p] for p in surgery_ports]
            assert sorted(order) == sorted(tr.closed), \
                "surgery markers must hit each closed component once"
        self.surgery_order = tuple(order)
        for j, cid in enumerate(self.surgery_order):
            self.roles[cid] = ("surgery", j)

    def marker_ports(self):
        """One canonical port per surgery component, in official order."""
        return [self.trace.ports[cid][0] for cid in self.surgery_order]

    def __repr__(self):
        return "CobordismTangle(g=%s, n=%d, h=%s)" % (self.g, self.n, self.h)


def _which_group(tup, arc_index):
    for i, (a, b) in enumerate(_group_spans(tup)):
        if a <= arc_index < b:
            return i
    raise ValueError("arc index %d outside grouping %s" % (arc_index, tup))


class Opentangle:
    """Validated (g, n, h) opentangle: no closed components; the first
    |g|+n bottom pairs are below-to-below arcs, the rest run to the top."""

    def __init__(self, diagram, g, n, h):
        self.diagram = diagram
        self.g = tuple(g)
        self.n = n
        self.h = tuple(h)
        tr = Trace(diagram)
        self.trace = tr
        gg, hh = sum(self.g), sum(self.h)
        if len(diagram.bottom) != 2 * (gg + n + hh):
            raise ValueError("expected %d bottom points, found %d"
                             % (2 * (gg + n + hh), len(diagram.bottom)))
        if len(diagram.top) != 2 * hh:
            raise ValueError("expected %d top points, found %d"
                             % (2 * hh, len(diagram.top)))
        if tr.closed:
            raise ValueError("opentangle has %d closed components" % len(tr.closed))
        height = diagram.height
        self.roles = {}
        for k in range(gg + n + hh):
            a, b = 2 * k, 2 * k + 1
            if diagram.bottom[a] != "+" or diagram.bottom[b] != "-":
                raise ValueError("bottom pair %d must carry ('+','-')" % (k + 1))
        for k in range(gg + n):
            a, b = 2 * k, 2 * k + 1
            ca, cb = tr.comp[(0, a)], tr.comp[(0, b)]
            if ca != cb or tr.top_of[ca] or len(tr.bottom_of[ca]) != 2:
                raise ValueError("bottom arc %d is not a below-to-below arc"
                                 % (k + 1))
            if k < gg:
                self.roles[ca] = ("entrance", _which_group(self.g, k))
            else:
                self.roles[ca] = ("surgery", k - gg)
        for k in range(hh):
            a, b = 2 * (gg + n + k), 2 * (gg + n + k) + 1
            ta, tb = 2 * k, 2 * k + 1
            if diagram.top[ta] != "+" or diagram.top[tb] != "-":
                raise ValueError("top pair %d must carry ('+','-')" % (k + 1))
            up = tr.comp[(0, a)]
            down = tr.comp[(0, b)]
            if up != tr.comp[(height, ta)]:
                raise ValueError("exit strand %d does not reach its top point"
                                 % (k + 1))
            if down != tr.comp[(height, tb)]:
                raise ValueError("returning exit strand %d mismatched" % (k + 1))
            self.roles[up] = ("exit_up", k)
            self.roles[down] = ("exit_down", k)

    def __repr__(self):
        return "Opentangle(g=%s, n=%d, h=%s)" % (self.g, self.n, self.h)


### DSL


def parse_tangle(text):
    """Parse the tangle DSL: header then one line per slice.  Returns
    (kind, g, n, h, SlicedDiagram); kind is 'cobtangle' or 'opentangle'."""
    lines = []
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((ln, body))
    if not lines:
        raise ValueError("empty tangle source")
    ln, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] not in ("cobtangle", "opentangle"):
        raise ValueError("line %d: bad header %r" % (ln, header))
    kind = parts[0]
    g = _parse_tuple(parts[1], "g", ln)
    if not parts[2].startswith("n="):
        raise ValueError("line %d: expected n=..., got %r" % (ln, parts[2]))
    n = int(parts[2][2:])
    h = _parse_tuple(parts[3], "h", ln)
    slices = [body.split() for _, body in lines[1:]]
    bottom = _infer_bottom(kind, g, n, h)
    try:
        diagram = SlicedDiagram(bottom, slices)
    except ValueError as e:
        raise ValueError("invalid diagram: %s" % e)
    return kind, g, n, h, diagram


def _parse_tuple(part, name, ln):
    prefix = name + "=("
    if not (part.startswith(prefix) and part.endswith(")")):
        raise ValueError("line %d: expected %s=(...), got %r" % (ln, name, part))
    inner = part[len(prefix):-1].strip().rstrip(",")
    if not inner:
        return ()
    return tuple(int(x) for x in inner.split(","))


def _infer_bottom(kind, g, n, h):
    if kind == "cobtangle":
        return ("-", "+") * sum(g)
    return ("+", "-") * (sum(g) + n + sum(h))


def print_tangle(t):
    """Inverse of parse_tangle, for CobordismTangle or Opentangle."""
    if isinstance(t, CobordismTangle):
        kind = "cobtangle"
    elif isinstance(t, Opentangle):
        kind = "opentangle"
    else:
        raise TypeError("cannot print %r" % (t,))
    head = "%s g=(%s) n=%d h=(%s)" % (
        kind, ",".join(map(str, t.g)), t.n, ",".join(map(str, t.h)))
    return "\n".join([head] + [" ".join(s) for s in t.diagram.slices]) + "\n"


def cobordism_from_text(text):
    kind, g, n, h, diagram = parse_tangle(text)
    if kind != "cobtangle":
        raise ValueError("expected a cobtangle, got %s" % kind)
    return CobordismTangle(diagram, g, n, h)


def opentangle_from_text(text):
    kind, g, n, h, diagram = parse_tangle(text)
    if kind != "opentangle":
        raise ValueError("expected an opentangle, got %s" % kind)
    return Opentangle(diagram, g, n, h)


### linking data


def linking_matrix(t):
    """Symmetric integer matrix over surgery components in official order:
    diagonal carries framings, off-diagonal linking numbers."""
    fr, lk = framings_and_linking(t.diagram, t.trace)
    order = t.surgery_order
    return [[lk[a][b] if a != b else fr[a] for b in order] for a in order]


def signature_counts(matrix):
    """(b_plus, b_minus, b_zero) of a symmetric integer matrix, exactly."""
    m = [[Fraction(x) for x in row] for row in matrix]
    return inertia_symmetric(m)


### component reversal (used by the closure maps)


def reverse_components(diagram, comp_ids, trace):
    """Reverse the orientation of the given components: flips signature
    characters on their ports and swaps I+/I-, A/At, U/Ut on them."""
    comp_ids = set(comp_ids)

    def flipped(l, c):
        return trace.comp[(l, c)] in comp_ids

    bottom = tuple(_flip(ch) if flipped(0, c) else ch
                   for c, ch in enumerate(diagram.bottom))
    new_slices = []
    for l, layout in enumerate(diagram.layouts):
        row = []
        for tok, p, q in layout:
            if tok in ("I+", "I-"):
                row.append(_flip_tok(tok) if flipped(l, p) else tok)
            elif tok in CAP_IN:
                row.append({"A": "At", "At": "A"}[tok] if flipped(l, p) else tok)
            elif tok in CUP_OUT:
                row.append({"U": "Ut", "Ut": "U"}[tok]
                           if flipped(l + 1, q) else tok)
            else:
                row.append(tok)
        new_slices.append(row)
    return SlicedDiagram(bottom, new_slices)


def _flip(ch):
    return "+" if ch == "-" else "-"


def _flip_tok(tok):
    return {"I+": "I-", "I-": "I+"}[tok]


def _identity_row(sig):
    return ["I+" if ch == "+" else "I-" for ch in sig]


### closure and opening


def close_opentangle(o):
    """Cup the surgery and exit bottom pairs, then reverse the entrance and
    exit components to the cobordism orientation convention."""
    gg, n, hh = sum(o.g), o.n, sum(o.h)
    d = o.diagram
    if n + hh:
        cups = []
        for k in range(gg):
            cups.extend(["I+", "I-"])
        cups.extend(["Ut"] * (n + hh))
        bottom = d.bottom[:2 * gg]
        slices = [cups] + [list(s) for s in d.slices]
        d = SlicedDiagram(bottom, slices)
    tr = Trace(d)
    to_reverse = set()
    for k in range(gg):
        to_reverse.add(tr.comp[(0, 2 * k)])
    height = d.height
    for c in range(2 * hh):
        to_reverse.add(tr.comp[(height, c)])
    d2 = reverse_components(d, to_reverse, tr)
    # official surgery order: the k-th cup closes bottom pair |g|+k
    tr2 = Trace(d2)
    ports = []
    if n:
        layout0 = d2.layouts[0]
        cup_ports = [(1, q) for tok, _, q in layout0 if tok in CUP_OUT]
        ports = cup_ports[:n]
    return CobordismTangle(d2, o.g, n, o.h, surgery_ports=ports if n else None)


def open_cobordism_tangle(t):
    """A preimage of close_opentangle: reverse the boundary components back,
    then cut each surgery component (official order) and each exit arc at
    its least downward port, routing both ends to new bottom pairs."""
    tr = t.trace
    gg, hh = sum(t.g), sum(t.h)
    boundary = [cid for cid, role in t.roles.items() if role[0] != "surgery"]
    d = reverse_components(t.diagram, boundary, tr)

    # markers for the components to cut, in the order their bottom pairs
    # must appear; ports survive the re-trace since the diagram only had
    # orientations flipped
    cut_markers = t.marker_ports()
    height = t.diagram.height
    for k in range(hh):
        cut_markers.append((height, 2 * k))

    for idx, marker in enumerate(cut_markers):
        tr = Trace(d)
        cid = tr.comp[marker]
        down = tr.down_ports(d, cid)
        assert down, "component to cut never flows downward"
        lvl, col = min(down)
        assert lvl > 0, "cut port cannot lie on the bottom boundary"
        w = len(d.levels[lvl])
        lower = [list(s) + ["I+", "I-"] for s in d.slices[:lvl]]
        bottom = d.bottom + ("+", "-")
        # legs rise at (w, w+1); travel left to (col+1, col+2), passing in
        # front of everything on the way
        stack = []
        sig = list(d.levels[lvl]) + ["+", "-"]
        for x in range(w - 1, col, -1):
            rowa = _identity_row(sig[:x]) + ["X-"] + _identity_row(sig[x + 2:])
            sig[x], sig[x + 1] = sig[x + 1], sig[x]
            stack.append(rowa)
            rowb = _identity_row(sig[:x + 1]) + ["X-"] + _identity_row(sig[x + 3:])
            sig[x + 1], sig[x + 2] = sig[x + 2], sig[x + 1]
            stack.append(rowb)
        assert sig[col] == "-" and sig[col + 1] == "+" and sig[col + 2] == "-"
        splice = _identity_row(sig[:col]) + ["At", "I-"] \
            + _identity_row(sig[col + 3:])
        stack.append(splice)
        upper = [list(s) for s in d.slices[lvl:]]
        d = SlicedDiagram(bottom, lower + stack + upper)
        # the insertion leaves columns at untouched levels alone but shifts
        # every level >= lvl up by the stack height
        grow = len(stack)
        cut_markers[idx + 1:] = [(l + grow, c) if l >= lvl else (l, c)
                                 for (l, c) in cut_markers[idx + 1:]]
    return Opentangle(d, t.g, t.n, t.h)


### encircling constructions


def ring_block(sig, a, m, frame=0):
    """Slices inserting one circle around columns [a, a+m) of a level with
    signature sig: cup at the left, lower leg travels right under the bundle,
    upper leg travels right over it, optional curls, cap at the right.
    The circle's framing is `frame`; its linking with each encircled strand
    is +1 ('+' strands) or -1 ('-' strands)."""
    sig = list(sig)
    rows = [_identity_row(sig[:a]) + ["Ut"] + _identity_row(sig[a:])]
    cur = sig[:a] + ["+", "-"] + sig[a:]
    for x in range(a + 1, a + 1 + m):
        rows.append(_identity_row(cur[:x]) + ["X-"] + _identity_row(cur[x + 2:]))
        cur[x], cur[x + 1] = cur[x + 1], cur[x]
    for x in range(a, a + m):
        rows.append(_identity_row(cur[:x]) + ["X+"] + _identity_row(cur[x + 2:]))
        cur[x], cur[x + 1] = cur[x + 1], cur[x]
    assert cur[a + m] == "+" and cur[a + m + 1] == "-"
    tw = "T+" if frame > 0 else "T-"
    for _ in range(abs(frame)):
        rows.append(_identity_row(cur[:a + m]) + [tw] + _identity_row(cur[a + m + 1:]))
    rows.append(_identity_row(cur[:a + m]) + ["A"] + _identity_row(cur[a + m + 2:]))
    return rows


def halo(t):
    """Add one 0-framed circle around each entrance boundary component and
    each exit boundary component; new circles are indexed after the existing
    surgery components (entrance halos first)."""
    d = t.diagram
    bottom_rows = []
    cur = list(d.bottom)
    entrance_ring_ports = []
    for (s0, s1) in _group_spans(t.g):
        level = len(bottom_rows)
        rows = ring_block(cur, 2 * s0, 2 * (s1 - s0))
        entrance_ring_ports.append((level + 1, 2 * s0))
        bottom_rows.extend(rows)
    top_rows = []
    shift = len(bottom_rows)
    cur_top = list(d.top)
    exit_ring_ports = []
    for (s0, s1) in _group_spans(t.h):
        level = shift + d.height + len(top_rows)
        rows = ring_block(cur_top, 2 * s0, 2 * (s1 - s0))
        exit_ring_ports.append((level + 1, 2 * s0))
        top_rows.extend(rows)
    slices = bottom_rows + [list(s) for s in d.slices] + top_rows
    new_d = SlicedDiagram(d.bottom, slices)
    old_ports = [(l + shift, c) for (l, c) in t.marker_ports()]
    ports = old_ports + entrance_ring_ports + exit_ring_ports
    return CobordismTangle(new_d, t.g, t.n + len(t.g) + len(t.h), t.h,
                           surgery_ports=ports)


def star_compose(t2, t1):
    """Stack t2 over t1 along matching boundaries; interface arcs fuse into
    surgery circles, and one 0-framed circle is added around each of the
    first s-1 entrance boundary components of t2."""
    if t1.h != t2.g:
        raise ValueError("boundary mismatch: t1 exits %s, t2 enters %s"
                         % (t1.h, t2.g))
    if t1.diagram.top != t2.diagram.bottom:
        raise ValueError("interface signatures differ")
    s = len(t2.g)
    mid_rows = []
    ring_ports = []
    cur = list(t1.diagram.top)
    base = t1.diagram.height
    for (s0, s1) in _group_spans(t2.g)[:max(0, s - 1)]:
        level = base + len(mid_rows)
        rows = ring_block(cur, 2 * s0, 2 * (s1 - s0))
        ring_ports.append((level + 1, 2 * s0))
        mid_rows.extend(rows)
    shift = base + len(mid_rows)
    slices = [list(x) for x in t1.diagram.slices] + mid_rows \
        + [list(x) for x in t2.diagram.slices]
    d = SlicedDiagram(t1.diagram.bottom, slices)
    ports = [p for p in t1.marker_ports()]
    ports += [(l + shift, c) for (l, c) in t2.marker_ports()]
    ports += ring_ports
    # fused interface circles, one per glued arc, marked at the interface
    ports += [(base, 2 * k) for k in range(sum(t1.h))]
    n = t1.n + t2.n + max(0, s - 1) + sum(t1.h)
    return CobordismTangle(d, t1.g, n, t2.h, surgery_ports=ports)


def disjoint_union(t1, t2):
    """Side-by-side juxtaposition; all signatures and orders concatenate."""
    d1, d2 = t1.diagram, t2.diagram
    height = max(d1.height, d2.height)
    w1 = {l: len(d1.levels[min(l, d1.height)]) for l in range(height + 1)}
    slices = []
    for l in range(height):
        left = list(d1.slices[l]) if l < d1.height else _identity_row(d1.top)
        right = list(d2.slices[l]) if l < d2.height else _identity_row(d2.top)
        slices.append(left + right)
    d = SlicedDiagram(d1.bottom + d2.bottom, slices)
    p1 = [(l, c) for (l, c) in t1.marker_ports()]
    p2 = [(l, c + w1[l]) for (l, c) in t2.marker_ports()]
    return CobordismTangle(d, t1.g + t2.g, t1.n + t2.n, t1.h + t2.h,
                           surgery_ports=p1 + p2)
