"""Deterministic Buchberger engine over both coefficient domains.

One vector-polynomial engine serves scalars (rank-1 vectors) and module
computations (syzygies, kernels).  Extended-domain runs work over the
LCFraction field internally; finite-sum representatives are restored at the
public boundary via clear_denominators.  Everything is deterministic for a
fixed generator order and monomial order: pair selection is the normal
strategy (minimal lcm degree, ties by the monomial order, then indices), and
reduced bases are sorted by descending leading term.
"""

from __future__ import annotations

import functools
import heapq
from dataclasses import dataclass

from .errors import InvalidInput, ReservedVariableInUse
from .gaussian import GaussianRational, QI_ONE
from .levicivita import LC_ONE, LCFraction, LCNumber, _unit_inverse, lc_lcm
from .poly import (
    EXTENDED,
    MONO_ONE,
    STANDARD,
    Monomial,
    Poly,
    cmp_elimination,
    cmp_grevlex,
    cmp_lex,
)

_FRAC_ONE = LCFraction(LC_ONE)


class MonomialOrder:
    """grevlex, lex, or a block-elimination order over a variable set."""

    __slots__ = ("kind", "block", "_cmp")

    def __init__(self, kind="grevlex", block=()):
        block = tuple(sorted({int(b) for b in block}))
        if kind == "grevlex":
            cmp = cmp_grevlex
        elif kind == "lex":
            cmp = cmp_lex
        elif kind == "elimination":
            cmp = cmp_elimination(block)
        else:
            raise InvalidInput("unknown monomial order %r" % kind)
        if block and kind != "elimination":
            raise InvalidInput("only elimination orders take a block")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "block", block)
        object.__setattr__(self, "_cmp", cmp)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialOrder is immutable")

    def cmp(self, m, n):
        return self._cmp(m, n)

    def key(self):
        return functools.cmp_to_key(self._cmp)

    @property
    def name(self):
        if self.kind != "elimination":
            return self.kind
        return "elimination(%s)" % ",".join("z%d" % v for v in self.block)

    @staticmethod
    def from_name(text):
        text = text.strip()
        if text in ("grevlex", "lex"):
            return MonomialOrder(text)
        if text.startswith("elimination(") and text.endswith(")"):
            inner = text[len("elimination(") : -1].strip()
            block = []
            for piece in inner.split(","):
                piece = piece.strip()
                if not piece:
                    continue
                if piece[0] in "zw" and piece[1:].isdigit():
                    block.append(int(piece[1:]))
                elif piece.isdigit():
                    block.append(int(piece))
                else:
                    raise InvalidInput("bad block variable %r" % piece)
            return MonomialOrder("elimination", block)
        raise InvalidInput("unknown monomial order %r" % text)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        return "MonomialOrder(%r)" % self.name


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# --- internal vector-polynomial layer ----------------------------------------
#
# A vector polynomial is a dict {(position, Monomial): field coefficient}.
# The module order is position-over-term: smaller position ranks higher,
# monomials compared by the session order within a position.


def _field_one(domain):
    return QI_ONE if domain == STANDARD else _FRAC_ONE


def _to_field(c, domain):
    if domain == STANDARD:
        if not isinstance(c, GaussianRational):
            raise InvalidInput("standard coefficients must be GaussianRational")
        return c
    if isinstance(c, LCFraction):
        return c
    if isinstance(c, GaussianRational):
        return LCFraction(LCNumber.from_gaussian(c))
    return LCFraction(c)


class _DenseKeys:
    """Memoized integer sort keys for one engine run.

    Tuple comparison of mono(m) matches order.cmp over monomials supported on
    the ambient variables fixed at construction; module(pm) extends it
    position-over-term.  neg(m) is the elementwise negation, so a min-heap of
    (position, neg(m)) pops the largest module term first.
    """

    __slots__ = ("_vars", "_index", "_kind", "_block", "_pos", "_neg")

    def __init__(self, order, variables):
        vs = sorted(variables)
        self._vars = vs
        self._index = {v: i for i, v in enumerate(vs)}
        self._kind = order.kind
        self._block = frozenset(order.block)
        self._pos = {}
        self._neg = {}

    def mono(self, m):
        k = self._pos.get(m)
        if k is None:
            row = [0] * len(self._vars)
            idx = self._index
            for v, e in m.exps:
                row[idx[v]] = e
            if self._kind == "lex":
                k = tuple(row)
            else:
                k = (m.deg,) + tuple(-e for e in reversed(row))
                if self._kind == "elimination":
                    b = self._block
                    k = (sum(e for v, e in m.exps if v in b),) + k
            self._pos[m] = k
        return k

    def neg(self, m):
        k = self._neg.get(m)
        if k is None:
            k = tuple(-x for x in self.mono(m))
            self._neg[m] = k
        return k

    def module(self, pm):
        return (-pm[0], self.mono(pm[1]))


def _dense_keys(order, vec_groups):
    """Keys over the union of variables appearing in the given vector groups."""
    vs = set()
    for group in vec_groups:
        for vec in group:
            for _, m in vec:
                for v, _ in m.exps:
                    vs.add(v)
    return _DenseKeys(order, vs)


def _vec_from_polys(cols, domain):
    vec = {}
    for pos, f in enumerate(cols):
        if f.domain != domain:
            f = f.to_extended()
        for m, c in f.terms.items():
            vec[(pos, m)] = _to_field(c, domain)
    return vec


def _collapse(c):
    if isinstance(c, LCFraction):
        finite = c.to_lcnumber()
        return finite if finite is not None else c
    return c


def _vec_to_polys(vec, rank, domain):
    rows = [{} for _ in range(rank)]
    for (pos, m), c in vec.items():
        rows[pos][m] = _collapse(c) if domain == EXTENDED else c
    return [Poly(domain, r) for r in rows]


def _vp_axpy(acc, coeff, mono, vec):
    """acc += coeff * x^mono * vec, in place."""
    for (pos, m), c in vec.items():
        key = (pos, m.mul(mono))
        s = acc.get(key)
        p = coeff * c
        s = p if s is None else s + p
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)


def _vp_divmod(vec, basis, keys, track=True):
    """Full reduction of vec by basis entries (vec, lead_pm, lead_coeff).

    Returns (quotients, remainder); quotients[i] is {Monomial: coeff}.  The
    remainder has no term divisible by any basis leading term, so against a
    reduced basis it is the unique normal form.
    """
    p = dict(vec)
    rem = {}
    quots = [{} for _ in basis] if track else None
    neg = keys.neg
    push, pop = heapq.heappush, heapq.heappop
    # lazy-deletion heap: every live term of p has at least one entry, and
    # entries whose term is gone are skipped on pop
    heap = [(pos, neg(m), m) for pos, m in p]
    heapq.heapify(heap)
    while p:
        while True:
            pos, _, m = pop(heap)
            pm = (pos, m)
            if pm in p:
                break
        c = p[pm]
        hit = -1
        for idx, (_, (gpos, gm), _) in enumerate(basis):
            if gpos == pos and gm.divides(m):
                hit = idx
                break
        if hit < 0:
            rem[pm] = c
            del p[pm]
            continue
        g, (_, gm), gc = basis[hit]
        t = m.div(gm)
        q = c / gc
        if track:
            d = quots[hit]
            s = d.get(t)
            s = q if s is None else s + q
            if s:
                d[t] = s
            else:
                d.pop(t, None)
        for (gpos2, gm2), gc2 in g.items():
            key2 = (gpos2, gm2.mul(t))
            s = p.get(key2)
            if s is None:
                v = -(q * gc2)
                if v:
                    p[key2] = v
                    push(heap, (gpos2, neg(key2[1]), key2[1]))
            else:
                v = s - q * gc2
                if v:
                    p[key2] = v
                else:
                    del p[key2]
    return quots, rem


def _basis_view(G, one):
    return [(vec, lead, one) for vec, lead in G]


def _buchberger_vec(vecs, order, domain, keys=None, cofactors=True):
    """Reduced module Groebner basis with cofactor rows.

    Returns (G, U): G is a list of (vec, lead_pm) with monic leads, sorted by
    descending leading term; U[i] is a vector over the input positions with
    G[i] = sum over inputs of U[i] applied to vecs.  cofactors=False skips the
    U bookkeeping (it comes back empty); the basis itself is identical.
    """
    one = _field_one(domain)
    if keys is None:
        keys = _dense_keys(order, (vecs,))
    mkey = keys.module
    G = []
    U = []
    view = []
    scalar = all(pos == 0 for v in vecs for pos, _ in v)

    def insert(vec, row):
        lead = max(vec, key=mkey)
        c = vec[lead]
        if c != one:
            inv = one / c
            vec = {pm: inv * cc for pm, cc in vec.items()}
            if cofactors:
                row = {pm: inv * cc for pm, cc in row.items()}
        G.append((vec, lead))
        view.append((vec, lead, one))
        if cofactors:
            U.append(row)
        return len(G) - 1

    # normal selection: pairs pop by (lcm degree, lcm order key, i, j)
    pairs = []
    pending = set()

    def add_pairs(j):
        pos_j, mj = G[j][1]
        for i in range(j):
            if G[i][1][0] == pos_j:
                lcm = G[i][1][1].lcm(mj)
                heapq.heappush(pairs, (lcm.deg, keys.mono(lcm), i, j))
                pending.add((i, j))

    for i, v in enumerate(vecs):
        if not v:
            continue
        idx = insert(dict(v), {(i, MONO_ONE): one})
        add_pairs(idx)

    def chain_skip(i, j, pos, lcm):
        # Buchberger chain criterion: S(i,j) is redundant once some third
        # lead divides the pair lcm and both sub-pairs are already treated
        for k in range(len(G)):
            if k == i or k == j:
                continue
            kp, km = G[k][1]
            if kp != pos or not km.divides(lcm):
                continue
            a = (i, k) if i < k else (k, i)
            if a in pending:
                continue
            b = (j, k) if j < k else (k, j)
            if b not in pending:
                return True
        return False

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        gi, (pos, mi) = G[i]
        gj, (_, mj) = G[j]
        lcm = mi.lcm(mj)
        # product criterion is only sound for scalar (rank-1) inputs
        if scalar and lcm.deg == mi.deg + mj.deg:
            continue
        if chain_skip(i, j, pos, lcm):
            continue
        ti, tj = lcm.div(mi), lcm.div(mj)
        s = {}
        _vp_axpy(s, one, ti, gi)
        _vp_axpy(s, -one, tj, gj)
        if not s:
            continue
        quots, rem = _vp_divmod(s, view, keys, track=cofactors)
        if not rem:
            continue
        if cofactors:
            srow = {}
            _vp_axpy(srow, one, ti, U[i])
            _vp_axpy(srow, -one, tj, U[j])
            for t, qd in enumerate(quots):
                for mono, qc in qd.items():
                    _vp_axpy(srow, -qc, mono, U[t])
        else:
            srow = None
        add_pairs(insert(rem, srow))

    # minimal set: leads pairwise non-divisible
    order_asc = sorted(range(len(G)), key=lambda t: mkey(G[t][1]))
    kept = []
    for t in order_asc:
        pos, m = G[t][1]
        if any(
            G[k][1][0] == pos and G[k][1][1].divides(m) for k in kept
        ):
            continue
        kept.append(t)

    # inter-reduce tails against the current state; leads never change
    work = [
        [dict(G[t][0]), G[t][1], dict(U[t]) if cofactors else None] for t in kept
    ]
    for idx in range(len(work)):
        others = [
            (w[0], w[1], one) for k, w in enumerate(work) if k != idx
        ]
        quots, rem = _vp_divmod(work[idx][0], others, keys, track=cofactors)
        if cofactors:
            row = work[idx][2]
            pos = 0
            for k, w in enumerate(work):
                if k == idx:
                    continue
                for mono, qc in quots[pos].items():
                    _vp_axpy(row, -qc, mono, w[2])
                pos += 1
        work[idx][0] = rem

    work.sort(key=lambda w: mkey(w[1]), reverse=True)
    return (
        [(w[0], w[1]) for w in work],
        [w[2] for w in work] if cofactors else [],
    )


def _schreyer_rows(G, keys, domain):
    """Syzygy rows of a reduced module GB, one per same-position S-pair."""
    one = _field_one(domain)
    view = _basis_view(G, one)
    rows = []
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            gi, (pi, mi) = G[i]
            gj, (pj, mj) = G[j]
            if pi != pj:
                continue
            lcm = mi.lcm(mj)
            ti, tj = lcm.div(mi), lcm.div(mj)
            s = {}
            _vp_axpy(s, one, ti, gi)
            _vp_axpy(s, -one, tj, gj)
            quots, rem = _vp_divmod(s, view, keys)
            if rem:
                raise InvalidInput("internal: S-pair of a GB did not reduce")
            row = {}
            _vp_axpy(row, one, ti, {(i, MONO_ONE): one})
            _vp_axpy(row, -one, tj, {(j, MONO_ONE): one})
            for t, qd in enumerate(quots):
                for mono, qc in qd.items():
                    _vp_axpy(row, -qc, mono, {(t, MONO_ONE): one})
            if row:
                rows.append(row)
    return rows


def _syzygy_rows(vecs, order, domain):
    """Generating rows (rank len(vecs)) of the syzygy module of vecs."""
    one = _field_one(domain)
    rows = [
        {(i, MONO_ONE): one} for i, v in enumerate(vecs) if not v
    ]
    nz = [i for i, v in enumerate(vecs) if v]
    if not nz:
        return rows
    keys = _dense_keys(order, (vecs,))
    G, U = _buchberger_vec([vecs[i] for i in nz], order, domain, keys)
    U = [
        {(nz[p], m): c for (p, m), c in row.items()} for row in U
    ]
    view = _basis_view(G, one)
    # rows of (identity - V U), where V re-expresses inputs in the basis
    for i in nz:
        quots, rem = _vp_divmod(vecs[i], view, keys)
        if rem:
            raise InvalidInput("internal: generator outside its own basis")
        row = {(i, MONO_ONE): one}
        for t, qd in enumerate(quots):
            for mono, qc in qd.items():
                _vp_axpy(row, -qc, mono, U[t])
        if row:
            rows.append(row)
    for w in _schreyer_rows(G, keys, domain):
        row = {}
        for (t, mono), c in w.items():
            _vp_axpy(row, c, mono, U[t])
        if row:
            rows.append(row)
    return rows


def _canonical_rows(rows, order, domain):
    if not rows:
        return []
    G, _ = _buchberger_vec(rows, order, domain, cofactors=False)
    return [vec for vec, _ in G]


# --- public ideal API ---------------------------------------------------------


def _lub_domain(polys):
    return EXTENDED if any(p.domain == EXTENDED for p in polys) else STANDARD


class Ideal:
    """Finitely generated ideal with a cached reduced Groebner basis."""

    def __init__(self, generators, order=GREVLEX):
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Poly):
                raise InvalidInput("ideal generators must be Poly")
        domain = _lub_domain(gens)
        if domain == EXTENDED:
            gens = tuple(g.to_extended() for g in gens)
        self.generators = gens
        self.order = order
        self.domain = domain
        self._gb = None
        self._gb_polys = None
        self._gb_embedded = None

    def _basis(self):
        if self._gb is None:
            vecs = [_vec_from_polys([g], self.domain) for g in self.generators]
            self._gb = _buchberger_vec(vecs, self.order, self.domain)
        return self._gb

    def _basis_for(self, domain):
        G, _ = self._basis()
        if domain == self.domain or self.domain == EXTENDED:
            return G
        # a reduced GB stays one under coefficient field extension
        if self._gb_embedded is None:
            self._gb_embedded = [
                (
                    {pm: _to_field(c, EXTENDED) for pm, c in vec.items()},
                    lead,
                )
                for vec, lead in G
            ]
        return self._gb_embedded

    def groebner_basis(self):
        """Reduced basis as Polys, descending leading terms, denominators cleared."""
        if self._gb_polys is None:
            G, _ = self._basis()
            polys = [
                _vec_to_polys(vec, 1, self.domain)[0] for vec, _ in G
            ]
            if self.domain == EXTENDED:
                polys = [clear_denominators(p, self.order) for p in polys]
            self._gb_polys = polys
        return list(self._gb_polys)

    def normal_form(self, f):
        domain = EXTENDED if f.domain == EXTENDED else self.domain
        if f.domain != domain:
            f = f.to_extended()
        G = self._basis_for(domain)
        fvec = _vec_from_polys([f], domain)
        keys = _dense_keys(self.order, ([fvec], (g for g, _ in G)))
        _, rem = _vp_divmod(
            fvec,
            _basis_view(G, _field_one(domain)),
            keys,
            track=False,
        )
        return _vec_to_polys(rem, 1, domain)[0]

    def contains(self, f):
        return not self.normal_form(f)

    def is_proper(self):
        return not any(
            g.is_constant() and g for g in self.groebner_basis()
        )

    def support(self):
        vs = set()
        for g in self.generators:
            vs.update(g.support())
        return tuple(sorted(vs))

    def __repr__(self):
        return "Ideal(%d generators, %s)" % (len(self.generators), self.order.name)


def buchberger(gens, order=GREVLEX):
    """Reduced Groebner basis of the ideal generated by gens."""
    return Ideal(gens, order).groebner_basis()


def normal_form(f, ideal):
    return ideal.normal_form(f)


def ideal_member(f, ideal):
    return ideal.contains(f)


def ideal_member_cofactors(f, ideal):
    """None, or cofactors h with f = sum h_i * gen_i."""
    domain = EXTENDED if f.domain == EXTENDED else ideal.domain
    if domain != ideal.domain:
        work = Ideal([g.to_extended() for g in ideal.generators], ideal.order)
    else:
        work = ideal
    if f.domain != domain:
        f = f.to_extended()
    G, U = work._basis()
    fvec = _vec_from_polys([f], domain)
    keys = _dense_keys(work.order, ([fvec], (g for g, _ in G)))
    quots, rem = _vp_divmod(
        fvec,
        _basis_view(G, _field_one(domain)),
        keys,
    )
    if rem:
        return None
    row = {}
    for t, qd in enumerate(quots):
        for mono, qc in qd.items():
            _vp_axpy(row, qc, mono, U[t])
    return _vec_to_polys(row, len(ideal.generators), domain)


def is_proper(ideal):
    return ideal.is_proper()


def radical_member(g, ideal, order=GREVLEX):
    """True iff some power of g lies in the ideal (auxiliary-variable test)."""
    if ideal.domain != STANDARD or g.domain != STANDARD:
        raise InvalidInput("radical membership runs over the standard domain")
    if 0 in g.support() or 0 in ideal.support():
        raise ReservedVariableInUse("variable z0 is reserved for this test")
    z0 = Poly.variable(0)
    probe = Poly.constant(1) - z0 * g
    return not Ideal(list(ideal.generators) + [probe], order).is_proper()


def ideal_combine(kind, I, J):
    """sum, product, or intersection of two ideals."""
    gi, gj = list(I.generators), list(J.generators)
    if I.domain != J.domain:
        gi = [g.to_extended() for g in gi]
        gj = [g.to_extended() for g in gj]
    if kind == "sum":
        return Ideal(gi + gj, I.order)
    if kind == "product":
        return Ideal([f * g for f in gi for g in gj], I.order)
    if kind == "intersection":
        fresh = max((v for g in gi + gj for v in g.support()), default=0) + 1
        t = Poly.variable(fresh)
        one = Poly.constant(1)
        mixed = [t * f for f in gi] + [(one - t) * g for g in gj]
        return eliminate(Ideal(mixed, I.order), {fresh})
    raise InvalidInput("unknown ideal combination %r" % kind)


def eliminate(ideal, drop):
    """Generators of the ideal's intersection with the subring avoiding drop."""
    drop = frozenset(int(v) for v in drop)
    if not drop:
        return ideal
    basis = Ideal(
        ideal.generators, MonomialOrder("elimination", drop)
    ).groebner_basis()
    kept = [b for b in basis if not (set(b.support()) & drop)]
    return Ideal(kept, ideal.order)


def contraction(ideal, n):
    """Drop every variable of index above n from the ideal."""
    drop = {v for v in ideal.support() if v > n}
    return eliminate(ideal, drop)


# --- syzygies and module operations -------------------------------------------


@dataclass(frozen=True)
class SyzygyBasis:
    """Generators of {x : sum coefficients_i * x_i = 0}."""

    coefficients: tuple
    generators: tuple

    def check(self):
        for beta in self.generators:
            acc = Poly.zero(_lub_domain(list(self.coefficients)))
            for a, b in zip(self.coefficients, beta):
                acc = acc + a * b
            if acc:
                return False
        return True


def syzygy_basis(a, order=GREVLEX):
    """Canonical generating set of the syzygy module of the scalars a."""
    a = list(a)
    domain = _lub_domain(a)
    if domain == EXTENDED:
        a = [g.to_extended() for g in a]
    vecs = [_vec_from_polys([g], domain) for g in a]
    rows = _syzygy_rows(vecs, order, domain)
    canon = _canonical_rows(rows, order, domain)
    return SyzygyBasis(
        coefficients=tuple(a),
        generators=tuple(
            tuple(_vec_to_polys(row, len(a), domain)) for row in canon
        ),
    )


def module_syzygies(columns, order=GREVLEX):
    """Syzygy generators of a list of vectors (each a list of Poly)."""
    columns = [list(col) for col in columns]
    domain = _lub_domain([f for col in columns for f in col])
    vecs = [_vec_from_polys(col, domain) for col in columns]
    rows = _syzygy_rows(vecs, order, domain)
    canon = _canonical_rows(rows, order, domain)
    return [
        _vec_to_polys(row, len(columns), domain) for row in canon
    ]


def module_member(columns, target, order=GREVLEX):
    """None, or cofactors r with target = sum r_i * columns_i."""
    columns = [list(col) for col in columns]
    flat = [f for col in columns for f in col] + list(target)
    domain = _lub_domain(flat)
    vecs = [_vec_from_polys(col, domain) for col in columns]
    tvec = _vec_from_polys(list(target), domain)
    keys = _dense_keys(order, (vecs, [tvec]))
    G, U = _buchberger_vec(vecs, order, domain, keys)
    quots, rem = _vp_divmod(
        tvec,
        _basis_view(G, _field_one(domain)),
        keys,
    )
    if rem:
        return None
    row = {}
    for t, qd in enumerate(quots):
        for mono, qc in qd.items():
            _vp_axpy(row, qc, mono, U[t])
    return _vec_to_polys(row, len(columns), domain)


def clear_denominators(f, order=GREVLEX):
    """Finite-sum representative of an extended Poly, unit-normalized.

    Multiplies by the denominator lcm and then by the inverse of the leading
    coefficient's leading term, so the leading coefficient under the given
    order is 1 + infinitesimal.
    """
    if f.domain != EXTENDED or not f:
        return f
    dens = [
        c.den
        for c in f.terms.values()
        if isinstance(c, LCFraction) and not c.den.is_one()
    ]
    scale = LC_ONE
    for d in dens:
        scale = lc_lcm(scale, d)
    if not scale.is_one():
        f = f.scale(scale)
    cleaned = {}
    for m, c in f.terms.items():
        if isinstance(c, LCFraction):
            c = c.to_lcnumber()
            if c is None:
                raise InvalidInput("denominators did not clear")
        cleaned[m] = c
    f = Poly(EXTENDED, cleaned)
    lead_coeff = f.sorted_terms(order.cmp)[0][1]
    unit = _unit_inverse(LCNumber((lead_coeff.leading(),)))
    return f.scale(unit)
