"""Buchberger's algorithm over exact rationals, term orders and the ideal
of relations among monomial generators."""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Polynomial, UsageError, VarTable, _num

KINDS = ("lex", "grlex", "grevlex", "revlex")


@dataclass(frozen=True)
class TermOrder:
    """A monomial order on a fixed number of variables.

    ``priority`` lists variable indices from most to least significant
    (default: table order).  ``weights`` are compared first, in turn, before
    ``kind`` breaks ties; with all weights positive this is still a
    well-order.  ``blocks`` makes an elimination (product) order: each block
    is a (indices, TermOrder over those indices) pair, compared left to
    right.
    """

    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None
    weights: tuple[tuple[int, ...], ...] = ()
    blocks: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS and not self.blocks:
            raise UsageError(f"unknown term order kind {self.kind!r}; expected one of {KINDS}")
        for w in self.weights:
            if any(x < 0 for x in w):
                raise UsageError("weight vectors must be non-negative")
        if self.kind == "revlex" and not any(all(x > 0 for x in w) for w in self.weights):
            # plain reverse lex is not a well-order; it only breaks ties
            raise UsageError("revlex needs a strictly positive weight vector in front")

    @classmethod
    def block(cls, *parts: tuple[Sequence[int], TermOrder]) -> TermOrder:
        return cls(kind="block", blocks=tuple((tuple(ix), o) for ix, o in parts))

    def key(self, exp: Sequence) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self.blocks:
            out: tuple = ()
            for ix, o in self.blocks:
                out += o.key([exp[i] for i in ix])
            return out
        p = self.priority if self.priority is not None else range(len(exp))
        head = tuple(sum(a * b for a, b in zip(w, exp)) for w in self.weights)
        if self.kind == "lex":
            return head + tuple(exp[i] for i in p)
        deg = sum(exp)
        if self.kind == "grlex":
            return head + (deg,) + tuple(exp[i] for i in p)
        if self.kind == "revlex":
            return head + tuple(-exp[i] for i in reversed(tuple(p)))
        return head + (deg,) + tuple(-exp[i] for i in reversed(tuple(p)))

    def describe(self, table: VarTable | None = None) -> str:
        if self.blocks:
            return "block(" + "; ".join(
                f"{[table.names[i] if table else i for i in ix]}:{o.describe()}" for ix, o in self.blocks
            ) + ")"
        s = self.kind
        if self.priority is not None:
            s += ":" + ">".join(table.names[i] if table else str(i) for i in self.priority)
        for w in self.weights:
            s = "weight(" + ",".join(map(str, w)) + ")+" + s
        return s


def parse_order(text: str, table: VarTable) -> TermOrder:
    """Parse ``kind[:v1>v2>...]`` optionally prefixed by ``weight(w1,...)+``."""
    text = text.strip()
    weights = []
    while True:
        m = re.match(r"weight\(([-\d,\s]+)\)\+", text)
        if not m:
            break
        w = tuple(int(x) for x in m.group(1).split(","))
        if len(w) != len(table):
            raise UsageError(f"weight vector needs {len(table)} entries, got {len(w)}")
        weights.append(w)
        text = text[m.end():]
    kind, _, rest = text.partition(":")
    if kind not in KINDS:
        raise UsageError(f"unknown term order kind {kind!r}; expected one of {KINDS}")
    priority = None
    if rest:
        names = [s.strip() for s in rest.split(">")]
        for n in names:
            if n not in table.names:
                raise UsageError(f"order names unknown variable {n!r}")
        listed = [table.index(n) for n in names]
        if len(set(listed)) != len(listed):
            raise UsageError("order lists a variable twice")
        priority = tuple(listed + [i for i in range(len(table)) if i not in listed])
    return TermOrder(kind, priority, tuple(weights))


# -- internal sparse polynomials: dict exponent -> Fraction ---------------


def _lead(p: dict, key) -> tuple:
    return max(p, key=key)


def _divides(a: Sequence, b: Sequence) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Sequence, b: Sequence) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_scaled(p: dict, c, shift: Sequence, g: dict) -> None:
    """p -= c * X^shift * g, in place."""
    for e, v in g.items():
        t = tuple(x + y for x, y in zip(e, shift))
        nv = p.get(t, 0) - c * v
        if nv:
            p[t] = nv
        else:
            p.pop(t, None)


class _Basis:
    def __init__(self, key):
        self.key = key
        self.polys: list[dict] = []
        self.leads: list[tuple] = []

    def add(self, p: dict) -> int:
        lt = _lead(p, self.key)
        lc = p[lt]
        if lc != 1:
            p = {e: Fraction(v) / lc for e, v in p.items()}
            p = {e: _num(v) for e, v in p.items()}
        self.polys.append(p)
        self.leads.append(lt)
        return len(self.polys) - 1

    def reducer(self, t: tuple, active=None) -> int | None:
        for i, lt in enumerate(self.leads):
            if active is not None and i not in active:
                continue
            if _divides(lt, t):
                return i
        return None

    def reduce(self, p: dict, active=None, full: bool = True) -> dict:
        """Normal form of p; with full=False only the leading term is reduced."""
        p = dict(p)
        rem: dict = {}
        key = self.key
        while p:
            t = max(p, key=key)
            c = p[t]
            i = self.reducer(t, active)
            if i is None:
                if not full:
                    rem.update(p)
                    return rem
                rem[t] = c
                del p[t]
                continue
            lt = self.leads[i]
            _sub_scaled(p, c, tuple(x - y for x, y in zip(t, lt)), self.polys[i])
        return rem


def _spoly(f: dict, lf: tuple, g: dict, lg: tuple) -> dict:
    m = _lcm(lf, lg)
    p: dict = {}
    _sub_scaled(p, -1, tuple(x - y for x, y in zip(m, lf)), f)
    _sub_scaled(p, 1, tuple(x - y for x, y in zip(m, lg)), g)
    return p


@dataclass
class GrobnerBasis:
    table: VarTable
    order: TermOrder
    generators: list[Polynomial] = field(default_factory=list)

    def leading_term(self, p: Polynomial) -> tuple:
        return _lead(p.terms, self.order.key)

    @property
    def leading_terms(self) -> list[tuple]:
        return [self.leading_term(g) for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_dict(self) -> dict:
        return {
            "variables": list(self.table.names),
            "order": self.order.describe(self.table),
            "generators": [sorted_text(g, self.order) for g in self.generators],
        }


def sorted_text(p: Polynomial, order: TermOrder) -> str:
    """Polynomial text with terms in decreasing order (leading term first)."""
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, key=order.key, reverse=True):
        out.append(Polynomial._raw(p.table, {e: p.terms[e]}).to_text())
    text = out[0]
    for t in out[1:]:
        text += " - " + t[1:] if t.startswith("-") else " + " + t
    return text


def _to_dict(p: Polynomial) -> dict:
    return {e: Fraction(c) if not isinstance(c, int) else c for e, c in p.terms.items()}


class _Pairs:
    """Critical pairs with the Gebauer-Moller update, smallest lcm first."""

    def __init__(self, key):
        self.key = key
        self.leads: list[tuple] = []
        self.active: list[int] = []
        self.heap: list = []
        self.live: set = set()

    def add(self, lh: tuple) -> int:
        h = len(self.leads)
        self.leads.append(lh)
        leads = self.leads
        cands = [(g, _lcm(lh, leads[g])) for g in self.active]
        new_pairs = []
        for k, (g, m) in enumerate(cands):
            # drop (g,h) if another new pair's lcm properly divides m,
            # or equals m and comes earlier
            dominated = False
            for k2, (g2, m2) in enumerate(cands):
                if k2 == k or not _divides(m2, m):
                    continue
                if m2 != m or k2 < k:
                    dominated = True
                    break
            coprime = all(x == 0 or y == 0 for x, y in zip(lh, leads[g]))
            if not dominated and not coprime:
                new_pairs.append((g, m))
        for pair in list(self.live):
            i, j = pair
            m = _lcm(leads[i], leads[j])
            if _divides(lh, m) and _lcm(leads[i], lh) != m and _lcm(leads[j], lh) != m:
                self.live.discard(pair)
        for g, m in new_pairs:
            self.live.add((g, h))
            heapq.heappush(self.heap, (self.key(m), g, h))
        self.active = [g for g in self.active if not _divides(lh, leads[g])] + [h]
        return h

    def pop(self):
        while self.heap:
            _, i, j = heapq.heappop(self.heap)
            if (i, j) in self.live:
                self.live.discard((i, j))
                return i, j
        return None


def _is_pure_binomial(p: Polynomial) -> bool:
    return len(p.terms) == 2 and sorted(p.terms.values()) == [-1, 1]


def buchberger(gens: Sequence[Polynomial], order: TermOrder) -> GrobnerBasis:
    """Reduced Grobner basis of the ideal generated by ``gens``.

    Pairs are taken smallest-lcm first; the Gebauer-Moller update applies
    the coprime and chain criteria when a new element is added.  Ideals
    generated by differences of two monomials (toric ideals) take a
    specialised path in which every element stays such a difference.
    """
    gens = list(gens)
    if not gens:
        raise UsageError("buchberger needs at least one generator")
    table = gens[0].table
    for g in gens:
        if g.table != table:
            raise UsageError("generators live over different variable tables")
    if all(_is_pure_binomial(g) for g in gens):
        return _binomial_buchberger(gens, order)
    key = order.key
    B = _Basis(key)
    P = _Pairs(key)

    for g in gens:
        r = B.reduce(_to_dict(g))
        if r:
            B.add(r)
            P.add(B.leads[-1])
    while True:
        ij = P.pop()
        if ij is None:
            break
        i, j = ij
        s = B.reduce(_spoly(B.polys[i], B.leads[i], B.polys[j], B.leads[j]), P.active)
        if s:
            B.add(s)
            P.add(B.leads[-1])
    return _reduce_basis(B, table, order, P.active)


def _binomial_buchberger(gens: Sequence[Polynomial], order: TermOrder) -> GrobnerBasis:
    key = order.key
    table = gens[0].table
    P = _Pairs(key)
    tails: list[tuple] = []

    def nf(u: tuple, among) -> tuple:
        changed = True
        while changed:
            changed = False
            for i in among:
                a = P.leads[i]
                if _divides(a, u):
                    b = tails[i]
                    u = tuple(x - y + z for x, y, z in zip(u, a, b))
                    changed = True
                    break
        return u

    def insert(u: tuple, w: tuple):
        u, w = nf(u, P.active), nf(w, P.active)
        if u == w:
            return
        if key(u) < key(w):
            u, w = w, u
        tails.append(w)
        P.add(u)

    for g in gens:
        u, w = g.terms
        insert(u, w)
    while True:
        ij = P.pop()
        if ij is None:
            break
        i, j = ij
        m = _lcm(P.leads[i], P.leads[j])
        u = tuple(x - y + z for x, y, z in zip(m, P.leads[i], tails[i]))
        w = tuple(x - y + z for x, y, z in zip(m, P.leads[j], tails[j]))
        insert(u, w)
    keep: list[int] = []
    for i in sorted(P.active, key=lambda i: (key(P.leads[i]), i)):
        if not any(_divides(P.leads[j], P.leads[i]) for j in keep):
            keep.append(i)
    out = []
    for i in keep:
        w = nf(tails[i], keep)
        out.append(Polynomial(table, {P.leads[i]: 1, w: -1}))
    out.sort(key=lambda g: key(_lead(g.terms, key)))
    return GrobnerBasis(table, order, out)


def _reduce_basis(B: _Basis, table: VarTable, order: TermOrder, candidates) -> GrobnerBasis:
    keep: list[int] = []
    for i in sorted(candidates, key=lambda i: (order.key(B.leads[i]), i)):
        if not any(_divides(B.leads[j], B.leads[i]) for j in keep):
            keep.append(i)
    active = set(keep)
    out = []
    for i in keep:
        p = B.polys[i]
        lt = B.leads[i]
        tail = {e: c for e, c in p.items() if e != lt}
        tail = B.reduce(tail, active)
        tail[lt] = p[lt]
        out.append(Polynomial(table, tail))
    out.sort(key=lambda g: order.key(_lead(g.terms, order.key)))
    return GrobnerBasis(table, order, out)


def normal_form(p: Polynomial, gb: GrobnerBasis) -> Polynomial:
    if p.table != gb.table:
        raise UsageError("polynomial and basis use different variable tables")
    B = _Basis(gb.order.key)
    for g in gb.generators:
        B.add(_to_dict(g))
    return Polynomial(gb.table, B.reduce(_to_dict(p)))


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    lf, lg = _lead(f.terms, order.key), _lead(g.terms, order.key)
    df = {e: Fraction(c) / f.terms[lf] for e, c in f.terms.items()}
    dg = {e: Fraction(c) / g.terms[lg] for e, c in g.terms.items()}
    return Polynomial(f.table, _spoly(df, lf, dg, lg))


def is_groebner(gb: GrobnerBasis) -> bool:
    """Every S-polynomial of a pair of generators reduces to zero."""
    gens = gb.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not normal_form(s_polynomial(gens[i], gens[j], gb.order), gb).is_zero():
                return False
    return True


def is_reduced(gb: GrobnerBasis) -> bool:
    leads = gb.leading_terms
    for g, lt in zip(gb.generators, leads):
        if g.terms[lt] != 1:
            return False
        for e in g.terms:
            for k, other in enumerate(leads):
                if other is not lt and _divides(other, e):
                    return False
    return True


def forbidden_products(gb: GrobnerBasis) -> list[tuple]:
    """Leading monomials of a reduced basis (sorted by the order, smallest first)."""
    return sorted(set(gb.leading_terms), key=gb.order.key)


def is_standard(exp: Sequence, forbidden: Iterable[Sequence]) -> bool:
    return not any(_divides(f, exp) for f in forbidden)


# -- ideal of relations -------------------------------------------------


def relations_ideal(
    model: VarTable,
    images: Sequence[Sequence[int]],
    grading: VarTable,
    order: TermOrder | None = None,
    method: str = "saturation",
) -> GrobnerBasis:
    """Reduced basis of all relations among the monomials X^images[i].

    ``method="elimination"`` works over grading + model variables with
    generators ``e_i - X^{g(e_i)}`` and a block order putting the grading
    block first; the basis elements free of grading variables generate the
    elimination ideal.  ``method="saturation"`` (default) starts from a
    lattice basis of the integer relations among the images and saturates
    by one model variable at a time, which stays inside the model ring and
    is much faster on larger catalogues.  Both give the same reduced basis.
    ``order`` orders the model variables (default grevlex).
    """
    if len(images) != len(model):
        raise UsageError("one grading image per model variable is required")
    for img in images:
        if len(img) != len(grading) or any(x < 0 for x in img):
            raise UsageError("grading images must be non-negative exponent vectors")
        if not any(img):
            raise UsageError("every model variable needs a non-zero grading image")
    order = order or TermOrder("grevlex")
    if method == "saturation":
        return _toric_saturation(model, images, order)
    if method != "elimination":
        raise UsageError(f"unknown relations method {method!r}")
    ng, nm = len(grading), len(model)
    clash = set(grading.names) & set(model.names)
    gnames = tuple(f"_{n}" if n in clash else n for n in grading.names)
    big = VarTable(gnames + model.names)
    block = TermOrder.block((range(ng), TermOrder("grevlex")), (range(ng, ng + nm), order))
    gens = []
    for i, img in enumerate(images):
        e = [0] * (ng + nm)
        e[ng + i] = 1
        gens.append(Polynomial(big, {tuple(e): 1, tuple(img) + (0,) * nm: -1}))
    gb = buchberger(gens, block)
    out = []
    for g in gb.generators:
        if all(not any(e[:ng]) for e in g.terms):
            out.append(Polynomial(model, {e[ng:]: c for e, c in g.terms.items()}))
    out.sort(key=lambda g: order.key(_lead(g.terms, order.key)))
    return GrobnerBasis(model, order, out)


def integer_kernel(cols: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Z-basis of {u in Z^n : sum_i u_i cols[i] = 0}.

    Row-reduces [cols | I] with unimodular integer steps; rows whose left
    part vanishes carry the kernel basis.
    """
    n = len(cols)
    m = len(cols[0]) if n else 0
    rows = [list(cols[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(m):
        while True:
            live = [i for i in range(r, n) if rows[i][c] != 0]
            if not live:
                break
            p = min(live, key=lambda i: abs(rows[i][c]))
            rows[r], rows[p] = rows[p], rows[r]
            done = True
            for i in range(r + 1, n):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                r += 1
                break
    return [tuple(row[m:]) for row in rows[r:]]


def _toric_saturation(model: VarTable, images, order: TermOrder) -> GrobnerBasis:
    n = len(model)
    deg = tuple(sum(img) for img in images)
    gens = []
    for u in integer_kernel(images):
        plus = tuple(max(x, 0) for x in u)
        minus = tuple(max(-x, 0) for x in u)
        gens.append(Polynomial(model, {plus: 1, minus: -1}))
    if not gens:
        return GrobnerBasis(model, order, [])
    for i in range(n):
        # reverse lex with e_i last, after the positive grading: e_i divides
        # the leading term of a homogeneous element only if it divides all of it
        prio = tuple(j for j in range(n) if j != i) + (i,)
        gb = buchberger(gens, TermOrder("revlex", prio, (deg,)))
        gens = []
        for g in gb.generators:
            k = min(e[i] for e in g.terms)
            gens.append(Polynomial(model, {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in g.terms.items()}))
    return buchberger(gens, order)


def check_homogeneous(gb: GrobnerBasis, images: Sequence[Sequence]) -> None:
    """Every term of every relation has the same image; UsageError otherwise."""
    for g in gb.generators:
        degs = set()
        for e in g.terms:
            d = [0] * len(images[0])
            for i, k in enumerate(e):
                for j, x in enumerate(images[i]):
                    d[j] += k * x
            degs.add(tuple(d))
        if len(degs) > 1:
            raise UsageError(f"relation {g.to_text()} is not homogeneous under the grading")


def weight_order_for(
    table: VarTable,
    leading: Sequence[tuple[Sequence[int], Sequence[int]]],
    tie: str = "grevlex",
) -> TermOrder | None:
    """A positive integer weight order making each ``lhs`` beat its ``rhs``.

    Solves the feasibility LP  w.(lhs - rhs) >= 1, w >= 1  and rounds; the
    result is re-checked exactly.  Returns None when no such weights exist.
    """
    from scipy.optimize import linprog

    n = len(table)
    A = [[-(a - b) for a, b in zip(lhs, rhs)] for lhs, rhs in leading]
    res = linprog(
        c=[1] * n,
        A_ub=A or None,
        b_ub=[-1] * len(A) or None,
        bounds=[(1, None)] * n,
        method="highs",
    )
    if res.status != 0:
        return None
    for scale in (1, 2, 6, 12, 60, 840):
        w = tuple(max(1, round(x * scale)) for x in res.x)
        if all(sum(wi * (a - b) for wi, a, b in zip(w, lhs, rhs)) > 0 for lhs, rhs in leading):
            return TermOrder(tie, None, (w,))
    return None


def monomial_map_images(model: VarTable, grading: VarTable, images: Mapping[str, Mapping[str, int]]):
    """Exponent images from {model var: {grading var: exponent}} dictionaries."""
    return [grading.exponent(images[n]) for n in model.names]
