"""Evaluate tangle diagrams to linear maps between tensor powers of the
coend C.

Every arc is colored with the regular module H; an upward pass of a strand
carries dual coordinates (H*), a downward pass carries H coordinates.
Crossings act by the braiding of the two carried modules, twist tokens by
the ribbon element, caps and cups by the two-sided (co)evaluations (the
tilde forms route through the pivot).  Each bottom pair is fed through the
section sigma: C -> H* (x) H, each top pair is pushed forward along
iota_H: H* (x) H -> C, which realizes the universal morphism of the coend.

The machine keeps a sparse state: a dict from tuples of strand slots to
exact scalars.  A slot is either a resolved basis index or a lazy marker
(pair_id, side) for a bottom pair that no structural token has touched
yet; markers are expanded into the pair's source vector on first contact,
which keeps the live state small when many surgery pairs are parked on
identity lanes.
"""

import itertools

from .coend import Coend, regular_module, dual_module, braid_pos, braid_neg
from .linalg import SpMat
from .tangles import Opentangle, open_cobordism_tangle


class LinearMap:
    """Sparse matrix C^{(x) dom_power} -> C^{(x) cod_power}."""

    def __init__(self, dim, dom_power, cod_power, mat):
        self.dim = dim
        self.dom_power = dom_power
        self.cod_power = cod_power
        self.mat = mat
        assert mat.nrows == dim ** cod_power
        assert mat.ncols == dim ** dom_power

    def compose(self, other):
        assert self.dim == other.dim and self.dom_power == other.cod_power
        return LinearMap(self.dim, other.dom_power, self.cod_power,
                         self.mat @ other.mat)

    def tensor(self, other):
        assert self.dim == other.dim
        return LinearMap(self.dim, self.dom_power + other.dom_power,
                         self.cod_power + other.cod_power,
                         self.mat.kron(other.mat))

    def scalar(self):
        assert self.dom_power == 0 and self.cod_power == 0
        return self.mat.get(0, 0)

    def __eq__(self, other):
        return (isinstance(other, LinearMap) and self.dim == other.dim
                and self.dom_power == other.dom_power
                and self.cod_power == other.cod_power
                and self.mat == other.mat)

    def __repr__(self):
        return "LinearMap(C^%d -> C^%d, dim %d, %d entries)" % (
            self.dom_power, self.cod_power, self.dim, self.mat.nnz())


def _colmap(sp):
    """Column-indexed view of a sparse matrix: col -> [(row, val)]."""
    out = {}
    for r, row in sp.rows.items():
        for c, v in row.items():
            out.setdefault(c, []).append((r, v))
    return out


class EvalContext:
    """Per-backend token tables for the strand machine."""

    def __init__(self, cd):
        assert isinstance(cd, Coend)
        self.cd = cd
        h = cd.h
        self.h = h
        self.d = h.dim
        reg = regular_module(h)
        self.mods = {"-": reg, "+": dual_module(reg)}
        self.pivot_mat = h.left_mult(h.pivot())
        self.pivot_inv_mat = h.left_mult(h.pivot_inv())
        self.unit_entries = sorted(
            (r, v) for r, row in h.unit.rows.items() for v in row.values())
        self._tok = {}
        self._iota_cols = None

    def token_map(self, tok, dirs):
        """dict: input index tuple -> [(output index tuple, scalar)]."""
        key = (tok, dirs)
        if key in self._tok:
            return self._tok[key]
        d = self.d
        out = {}
        if tok in ("I+", "I-"):
            for i in range(d):
                out[(i,)] = [((i,), 1)]
        elif tok in ("T+", "T-"):
            m = self.mods[dirs[0]].twist(1 if tok == "T+" else -1)
            for c, hits in _colmap(m).items():
                out[(c,)] = [((r,), v) for r, v in hits]
        elif tok in ("X+", "X-"):
            a, b = self.mods[dirs[0]], self.mods[dirs[1]]
            m = braid_pos(a, b) if tok == "X+" else braid_neg(a, b)
            for c, hits in _colmap(m).items():
                out[(c // d, c % d)] = [((r // d, r % d), v) for r, v in hits]
        elif tok == "A":
            for i in range(d):
                out[(i, i)] = [((), 1)]
        elif tok == "At":
            # consumes (x at '-', l at '+'): value l(pivot x)
            for r, row in self.pivot_mat.rows.items():
                for c, v in row.items():
                    out.setdefault((c, r), []).append(((), v))
        elif tok == "Ut":
            # emits sum_i e^i (x) pivot^{-1} e_i
            hits = []
            for r, row in self.pivot_inv_mat.rows.items():
                for c, v in row.items():
                    hits.append(((c, r), v))
            out[()] = hits
        elif tok == "U":
            out[()] = [((j, j), 1) for j in range(d)]
        else:
            raise ValueError("unknown token %r" % tok)
        self._tok[key] = out
        return out

    def iota_cols(self):
        """iota_H as a column map from (a, b) slot pairs to C coordinates."""
        if self._iota_cols is None:
            cm = _colmap(self.cd.iota(self.mods["-"]))
            d = self.d
            self._iota_cols = {(c // d, c % d): hits for c, hits in cm.items()}
        return self._iota_cols


def _context(cd):
    ctx = getattr(cd, "_eval_ctx", None)
    if ctx is None:
        ctx = EvalContext(cd)
        cd._eval_ctx = ctx
    return ctx


def _expand(states, pair_ids, support):
    """Resolve the lazy markers of the given pairs in every state."""
    if not pair_ids:
        return states
    out = {}
    for tup, coef in states.items():
        branches = [(list(tup), coef)]
        for pid in pair_ids:
            idxs = [i for i, v in enumerate(tup)
                    if type(v) is tuple and v[0] == pid]
            if not idxs:
                continue
            nxt = []
            for lst, c in branches:
                for a, b, w in support[pid]:
                    nlst = list(lst)
                    for i in idxs:
                        nlst[i] = a if tup[i][1] == 0 else b
                    nxt.append((nlst, c * w))
            branches = nxt
        for lst, c in branches:
            key = tuple(lst)
            prev = out.get(key)
            s = c if prev is None else prev + c
            if s:
                out[key] = s
            elif prev is not None:
                del out[key]
    return out


def _slice_plan(layout, sig):
    """(structural token ops, positions they consume, pure-identity flag)."""
    ops = []
    needs = []
    identity_only = True
    for tok, p, q in layout:
        if tok in ("I+", "I-"):
            if ops and ops[-1][0] is None and ops[-1][1] + ops[-1][3] == p:
                prev = ops[-1]
                ops[-1] = (None, prev[1], prev[2], prev[3] + 1)
            else:
                ops.append((None, p, q, 1))
            continue
        identity_only = False
        if tok in ("T+", "T-"):
            ops.append((tok, p, q, 1))
            needs.append(p)
        elif tok in ("X+", "X-", "A", "At"):
            ops.append((tok, p, q, 2))
            needs.extend((p, p + 1))
        else:
            ops.append((tok, p, q, 0))
    dirs = tuple(sig)
    return ops, needs, identity_only, dirs


def _apply_ops(states, ops, dirs, ctx):
    plan = [(None if tok is None else ctx.token_map(tok, dirs[p:p + ain]),
             p, p + ain) for tok, p, _, ain in ops]
    active = [step for step in plan if step[0] is not None]
    new = {}
    if len(active) == 1:
        # one structural token among identities: splice its outputs in place
        tm, p, e = active[0]
        for tup, coef in states.items():
            hits = tm.get(tup[p:e])
            if hits is None:
                continue
            pre = tup[:p]
            suf = tup[e:]
            for outs, v in hits:
                key = pre + outs + suf
                c = coef * v
                prev = new.get(key)
                s = c if prev is None else prev + c
                if s:
                    new[key] = s
                elif prev is not None:
                    del new[key]
        return new
    for tup, coef in states.items():
        partial = [((), coef)]
        for tm, p, e in plan:
            if tm is None:
                seg = tup[p:e]
                partial = [(acc + seg, c) for acc, c in partial]
                continue
            hits = tm.get(tup[p:e])
            if hits is None:
                partial = []
                break
            if len(hits) == 1:
                outs, v = hits[0]
                partial = [(acc + outs, c * v) for acc, c in partial]
            else:
                partial = [(acc + outs, c * v)
                           for acc, c in partial for outs, v in hits]
        for outs, c in partial:
            prev = new.get(outs)
            s = c if prev is None else prev + c
            if s:
                new[outs] = s
            elif prev is not None:
                del new[outs]
    return new


def eval_opentangle_applied(o, cd, sources, max_strands=26):
    """Run the strand machine over o with one source per bottom pair.

    sources: list over bottom pairs; each entry is "basis" (enumerate the
    d coordinates of C, contributing a tensor factor to the domain) or an
    explicit coordinate list of a vector in C.  Returns a LinearMap from
    C^{(x) #basis pairs} to C^{(x) |h|}.
    """
    assert isinstance(o, Opentangle)
    ctx = _context(cd)
    d = ctx.d
    npairs = len(o.diagram.bottom) // 2
    assert len(sources) == npairs
    for sig in o.diagram.levels:
        if len(sig) > max_strands:
            raise ValueError("strand budget exceeded: %d > %d"
                             % (len(sig), max_strands))
    unit = ctx.unit_entries
    basis_pairs = [k for k, s in enumerate(sources) if
                   isinstance(s, str) and s == "basis"]
    support = {}
    for k, s in enumerate(sources):
        if k not in basis_pairs:
            vec = _vec_coords(s, d)
            support[k] = [(a, j, va * v) for a, va in enumerate(vec) if va
                          for j, v in unit]
    hh = sum(o.h)
    out = SpMat(d ** hh, d ** len(basis_pairs))
    iota = ctx.iota_cols()
    plans = [_slice_plan(lay, sig) for lay, sig in
             zip(o.diagram.layouts, o.diagram.levels)]

    start = tuple(x for k in range(npairs) for x in ((k, 0), (k, 1)))
    for combo in itertools.product(range(d), repeat=len(basis_pairs)):
        for k, c in zip(basis_pairs, combo):
            support[k] = [(c, j, v) for j, v in unit]
        states = {start: 1}
        for ops, needs, identity_only, dirs in plans:
            if identity_only:
                continue
            pids = set()
            for tup in states:
                for p in needs:
                    v = tup[p]
                    if type(v) is tuple:
                        pids.add(v[0])
            if pids:
                states = _expand(states, pids, support)
            states = _apply_ops(states, ops, dirs, ctx)
            if not states:
                break
        if states:
            live = {pid for tup in states for v in tup
                    if type(v) is tuple for pid in (v[0],)}
            states = _expand(states, live, support)
        col = 0
        for c in combo:
            col = col * d + c
        for tup, coef in states.items():
            assert len(tup) == 2 * hh
            partial = [(0, coef)]
            for k in range(hh):
                hits = iota.get((tup[2 * k], tup[2 * k + 1]), ())
                partial = [(r0 * d + m, c0 * v)
                           for r0, c0 in partial for m, v in hits]
            for r, c in partial:
                if c:
                    out.add_at(r, col, c)
    return LinearMap(d, len(basis_pairs), hh, out)


def eval_opentangle(o, cd, max_strands=26):
    """The universal morphism |O|: C^{(x)(|g|+n+|h|)} -> C^{(x)|h|}."""
    npairs = len(o.diagram.bottom) // 2
    return eval_opentangle_applied(o, cd, ["basis"] * npairs,
                                   max_strands=max_strands)


def eval_cobordism_tangle(t, cd, alpha, max_strands=26):
    """|T|_{C,alpha}: C^{(x)|g|} -> C^{(x)|h|} through any opentangle
    preimage; surgery and exit pairs are fed with alpha."""
    o = open_cobordism_tangle(t)
    return eval_applied_opentangle_of(o, sum(t.g), cd, alpha,
                                      max_strands=max_strands)


def eval_applied_opentangle_of(o, gg, cd, alpha, max_strands=26):
    """|O| with the first gg pairs as the domain and alpha everywhere else."""
    npairs = len(o.diagram.bottom) // 2
    al = _vec_coords(alpha, cd.h.dim)
    sources = ["basis"] * gg + [al] * (npairs - gg)
    return eval_opentangle_applied(o, cd, sources, max_strands=max_strands)


def _vec_coords(alpha, d):
    if isinstance(alpha, dict):
        return [alpha.get(i, 0) for i in range(d)]
    if isinstance(alpha, SpMat):
        assert alpha.ncols == 1 and alpha.nrows == d
        return [alpha.get(i, 0) for i in range(d)]
    al = list(alpha)
    assert len(al) == d
    return al
