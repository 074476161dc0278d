"""Multigraded Poincare series of a quotient Q[e1..es]/I and the grading
substitution that turns it into a tensor-product generating function."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Polynomial, RationalGF, UsageError, VarTable
from .grobner import GrobnerBasis, check_homogeneous, forbidden_products, is_standard


@dataclass
class QuotientModel:
    model: VarTable
    grading: VarTable
    images: tuple[tuple[int, ...], ...]
    relations: GrobnerBasis

    def __post_init__(self):
        self.images = tuple(tuple(x) for x in self.images)
        if len(self.images) != len(self.model):
            raise UsageError("one grading image per model variable is required")
        if self.relations.table != self.model:
            raise UsageError("relations must live over the model variables")
        check_homogeneous(self.relations, self.images)

    @property
    def forbidden(self) -> list[tuple]:
        return forbidden_products(self.relations)

    @classmethod
    def free(cls, model: VarTable, grading: VarTable, images, order=None) -> QuotientModel:
        from .grobner import TermOrder

        return cls(model, grading, images, GrobnerBasis(model, order or TermOrder("grevlex"), []))


def _minimalize(gens) -> frozenset:
    gens = sorted(set(gens), key=sum)
    out: list = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return frozenset(out)


def kpolynomial(table: VarTable, gens: Sequence[Sequence[int]]) -> Polynomial:
    """Numerator K with sum over standard monomials = K / prod(1 - x_i).

    Pivot recursion: K(I) = K(I + <x>) + x * K(I : x) for a variable x
    shared by several generators; pairwise coprime generators give
    prod(1 - m).
    """
    n = len(table)
    memo: dict = {}
    one = Polynomial.constant(table, 1)

    def rec(G: frozenset) -> Polynomial:
        if G in memo:
            return memo[G]
        counts = [0] * n
        for g in G:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
        j = max(range(n), key=lambda i: counts[i]) if n else 0
        if not G or counts[j] <= 1:
            out = one
            for g in G:
                out = out * (one - Polynomial.monomial(table, g))
            memo[G] = out
            return out
        x = tuple(1 if i == j else 0 for i in range(n))
        plus = _minimalize(list(G) + [x])
        colon = _minimalize(tuple(max(0, e - x[i]) for i, e in enumerate(g)) for g in G)
        out = rec(plus) + rec(colon).shift(x)
        memo[G] = out
        return out

    return rec(_minimalize(tuple(g) for g in gens))


def poincare_series(m: QuotientModel) -> RationalGF:
    """Series over the model variables counting standard monomials."""
    table = m.model
    k = kpolynomial(table, m.forbidden)
    units = [table.unit(nm) for nm in table.names]
    return RationalGF(k, units)


def grade_substitute(series: RationalGF, m: QuotientModel) -> RationalGF:
    if series.table != m.model:
        raise UsageError("series is not over the model variables")
    return series.remap(m.grading, m.images).normalized()


def standard_monomial_count(m: QuotientModel, degree: Sequence[int]) -> int:
    """Number of standard monomials whose grading image is ``degree``."""
    degree = tuple(degree)
    if len(degree) != len(m.grading):
        raise UsageError(f"degree needs {len(m.grading)} entries")
    for nm, img in zip(m.model.names, m.images):
        if not any(img):
            raise UsageError(f"model variable {nm} has zero grading; degree fibres are infinite")
    forb = m.forbidden
    s = len(m.model)
    count = 0
    exp = [0] * s

    def rec(i: int, rest: tuple):
        nonlocal count
        if i == s:
            if not any(rest) and is_standard(exp, forb):
                count += 1
            return
        img = m.images[i]
        k = 0
        r = rest
        while all(x >= 0 for x in r):
            exp[i] = k
            rec(i + 1, r)
            k += 1
            r = tuple(a - b for a, b in zip(r, img))
        exp[i] = 0

    rec(0, degree)
    return count
