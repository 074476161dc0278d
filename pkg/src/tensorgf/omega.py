"""MacMahon's Omega operators on sums of geometric-factor rational
functions, and the crude generating function built from a vector basis."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Iterable, Sequence

from .algebra import Polynomial, RationalGF, UsageError, VarTable, _num, gf_sum, order_key
from .diophantine import BasisVector


class OmegaExpr:
    """A finite sum of RationalGF summands over one table."""

    def __init__(self, parts: Iterable[RationalGF], table: VarTable | None = None):
        self.parts = list(parts)
        if table is None:
            if not self.parts:
                raise UsageError("an empty OmegaExpr needs an explicit table")
            table = self.parts[0].table
        for p in self.parts:
            if p.table != table:
                raise UsageError("summands live over different variable tables")
        self.table = table

    @classmethod
    def of(cls, g: RationalGF) -> OmegaExpr:
        return cls([g])

    def to_gf(self, normalize: bool = True) -> RationalGF:
        if not self.parts:
            return RationalGF(Polynomial(self.table, {}))
        return gf_sum(self.parts, normalize=normalize)

    def remap(self, table: VarTable, images) -> OmegaExpr:
        return OmegaExpr([p.remap(table, images) for p in self.parts], table)

    def __repr__(self):
        return f"OmegaExpr({len(self.parts)} summands)"


# A term is (coef, numerator exponent, sorted tuple of denominator exponents).


def _terms_of(expr: OmegaExpr) -> list:
    out = []
    for g in _as_expr(expr).parts:
        dens = tuple(sorted(g.denominator, key=order_key))
        for e, c in g.numerator.terms.items():
            out.append((c, e, dens))
    return out


def _as_expr(e) -> OmegaExpr:
    if isinstance(e, OmegaExpr):
        return e
    if isinstance(e, RationalGF):
        return OmegaExpr.of(e)
    raise UsageError(f"expected an OmegaExpr or RationalGF, got {type(e).__name__}")


def _add(e: Sequence, f: Sequence) -> tuple:
    return tuple(_num(a + b) for a, b in zip(e, f))


def _scale(e: Sequence, k) -> tuple:
    return tuple(_num(a * k) for a in e)


def _without(dens: tuple, k: int) -> tuple:
    return dens[:k] + dens[k + 1:]


def _with(dens: tuple, *extra) -> tuple:
    return tuple(sorted(dens + tuple(extra), key=order_key))


def _pair_cost(s) -> tuple:
    return (0, s) if s >= 0 else (1, -s)


def _project(terms: list, vi: int, mode: str) -> dict:
    """Apply Omega (mode 'ge' or 'eq') in variable index vi to a list of terms.

    Returns {(exp, dens): coef} of output terms.
    """
    out: dict = defaultdict(int)
    pending: dict = defaultdict(int)
    for c, e, d in terms:
        pending[(e, d)] += c
    steps = 0
    while pending:
        (e, dens), c = pending.popitem()
        if c == 0:
            continue
        steps += 1
        if steps > 5_000_000:
            raise RuntimeError("Omega reduction did not terminate")
        for m in dens:
            if m[vi] != int(m[vi]):
                raise UsageError("the projected variable must have integral exponents")
        pos = [k for k, m in enumerate(dens) if m[vi] > 0]
        neg = [k for k, m in enumerate(dens) if m[vi] < 0]
        k = e[vi]
        if pos and neg:
            # prefer a pair whose product is already free of negative v
            # powers, as close to v^0 as possible
            i, j = min(
                ((i, j) for i in pos for j in neg),
                key=lambda ij: (_pair_cost(dens[ij[0]][vi] + dens[ij[1]][vi]), ij),
            )
            u, w = dens[i], dens[j]
            uw = _add(u, w)
            if not any(uw):
                raise UsageError("factors (1-U)(1-1/U) have no formal expansion")
            rest = tuple(x for n, x in enumerate(dens) if n not in (i, j))
            # 1/((1-U)(1-W)) = 1/(1-UW) * (1/(1-U) + 1/(1-W) - 1)
            pending[(e, _with(rest, uw, u))] += c
            pending[(e, _with(rest, uw, w))] += c
            pending[(e, _with(rest, uw))] -= c
            continue
        if not neg:
            if k >= 0:
                if mode == "ge":
                    out[(e, dens)] += c
                elif k == 0:
                    out[(e, tuple(m for m in dens if m[vi] == 0))] += c
                continue
            if not pos:
                continue  # only negative powers of v remain
            # peel the factor with the largest v-exponent
            i = max(pos, key=lambda n: (dens[n][vi], n))
            u = dens[i]
            t_max = ceil(Fraction(-k, u[vi]))
            rest = _without(dens, i)
            for t in range(t_max):
                pending[(_add(e, _scale(u, t)), rest)] += c
            pending[(_add(e, _scale(u, t_max)), dens)] += c
            continue
        # only non-positive v-exponents in the denominator
        if k < 0:
            continue
        if mode == "eq" and k == 0:
            out[(e, tuple(m for m in dens if m[vi] == 0))] += c
            continue
        i = min(neg, key=lambda n: (dens[n][vi], n))
        w = dens[i]
        t_max = floor(Fraction(k, -w[vi]))
        rest = _without(dens, i)
        for t in range(t_max + 1):
            pending[(_add(e, _scale(w, t)), rest)] += c
    return out


def _collect(table: VarTable, out: dict) -> OmegaExpr:
    by_den: dict = defaultdict(dict)
    for (e, dens), c in out.items():
        if c:
            num = by_den[dens]
            num[e] = num.get(e, 0) + c
    parts = []
    for dens in sorted(by_den, key=lambda d: [order_key(m) for m in d]):
        num = Polynomial(table, by_den[dens])
        if not num.is_zero():
            parts.append(RationalGF(num, dens))
    return OmegaExpr(parts, table)


def omega_ge(expr, v: str) -> OmegaExpr:
    """Keep the terms whose exponent of v is >= 0 (v stays, only with v^k, k >= 0)."""
    expr = _as_expr(expr)
    vi = expr.table.index(v)
    return _collect(expr.table, _project(_terms_of(expr), vi, "ge"))


def omega_eq(expr, v: str) -> OmegaExpr:
    """Keep the terms of v-degree zero; the result does not involve v."""
    expr = _as_expr(expr)
    vi = expr.table.index(v)
    return _collect(expr.table, _project(_terms_of(expr), vi, "eq"))


def has_negative_power(expr, v: str) -> bool:
    expr = _as_expr(expr)
    vi = expr.table.index(v)
    for g in expr.parts:
        if any(m[vi] < 0 for m in g.denominator) or any(e[vi] < 0 for e in g.numerator.terms):
            return True
    return False


def integralize(expr) -> OmegaExpr:
    """Restrict to the terms with integral exponents.

    Every factor 1/(1-u) with fractional u is rewritten as
    (1 + u + ... + u^(d-1)) / (1 - u^d); once all denominators are integral
    only numerator monomials with integral exponents can contribute.
    """
    expr = _as_expr(expr)
    table = expr.table
    out: dict = defaultdict(int)
    for c, e, dens in _terms_of(expr):
        nums = {e: c}
        new_dens = []
        for m in dens:
            d = 1
            for x in m:
                d = lcm(d, Fraction(x).denominator)
            if d == 1:
                new_dens.append(m)
                continue
            new_dens.append(_scale(m, d))
            grown: dict = defaultdict(int)
            for ee, cc in nums.items():
                for t in range(d):
                    grown[_add(ee, _scale(m, t))] += cc
            nums = grown
        key = tuple(sorted(new_dens, key=order_key))
        for ee, cc in nums.items():
            if all(Fraction(x).denominator == 1 for x in ee):
                out[(tuple(int(x) for x in ee), key)] += cc
    return _collect(table, out)


def crude_gf(basis: Sequence[BasisVector], table: VarTable | None = None) -> OmegaExpr:
    """1 / prod(1 - X^eps_i) with one grading variable per system variable.

    ``table`` defaults to the basis' variable names.
    """
    if not basis:
        raise UsageError("crude_gf needs at least one basis vector")
    names = basis[0].names
    table = table or VarTable(tuple(names))
    if tuple(table.names) != tuple(names):
        raise UsageError("table must list the basis variables in order")
    dens = [tuple(_num(x) for x in b.entries) for b in basis]
    return OmegaExpr.of(RationalGF(Polynomial.constant(table, 1), dens))


def project_nonnegative(expr, variables: Sequence[str]) -> OmegaExpr:
    """Omega_>= in each listed variable in turn."""
    expr = _as_expr(expr)
    for v in variables:
        expr = omega_ge(expr, v)
    return expr


def specialize(expr, keep: Sequence[str], table: VarTable | None = None) -> OmegaExpr:
    """Set every variable not in ``keep`` to 1; the result is over ``keep``."""
    expr = _as_expr(expr)
    target = table or VarTable(tuple(keep))
    images = []
    for n in expr.table.names:
        images.append(target.unit(n) if n in keep else target.zero())
    out = []
    for g in expr.parts:
        for m in g.denominator:
            if not any(m[expr.table.index(n)] for n in keep):
                raise UsageError(
                    "a denominator factor involves only specialized variables; setting them to 1 diverges"
                )
        out.append(g.remap(target, images))
    return OmegaExpr(out, target)
