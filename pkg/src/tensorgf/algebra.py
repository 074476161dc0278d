"""Exact multivariate Laurent polynomials and rational generating functions.

A :class:`RationalGF` is a polynomial numerator over a product of geometric
factors ``(1 - X^m)``.  Everything is exact: coefficients are ``int`` or
``Fraction`` and exponents are integers (``Fraction`` exponents are tolerated
so the omega module can rationalise fractional basis vectors).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

KINDS = ("model", "grading", "auxiliary")


class UsageError(ValueError):
    """Bad input: mismatched tables, malformed syntax, unsupported request."""


class DivergentExpansionError(ValueError):
    """A formal expansion was requested that has infinitely many terms per degree."""


def _num(x):
    """Collapse integral Fractions to int so dict keys and prints stay canonical."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]
    kinds: tuple[str, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        kinds = tuple(self.kinds) or ("grading",) * len(names)
        if len(kinds) != len(names):
            raise UsageError("one kind per variable is required")
        for k in kinds:
            if k not in KINDS:
                raise UsageError(f"unknown variable kind {k!r}")
        object.__setattr__(self, "kinds", kinds)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r}") from None

    def zero(self) -> tuple:
        return (0,) * len(self.names)

    def unit(self, name: str) -> tuple:
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return tuple(e)

    def exponent(self, powers: Mapping[str, int]) -> tuple:
        e = [0] * len(self.names)
        for name, p in powers.items():
            e[self.index(name)] += p
        return tuple(e)

    def extend(self, names: Iterable[str], kind: str = "auxiliary") -> VarTable:
        extra = [n for n in names if n not in self.names]
        return VarTable(self.names + tuple(extra), self.kinds + (kind,) * len(extra))


def order_key(exp: Sequence) -> tuple:
    """Canonical print order: total degree, then lex in table order."""
    return (sum(exp), tuple(-e for e in exp))


def _fmt_exp(e) -> str:
    e = _num(e)
    if isinstance(e, Fraction):
        return f"({e.numerator}/{e.denominator})"
    return str(e)


def format_monomial(table: VarTable, exp: Sequence) -> str:
    parts = []
    for name, e in zip(table.names, exp):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{_fmt_exp(e)}")
    return "*".join(parts) if parts else "1"


def _fmt_coef(c) -> str:
    c = _num(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class Polynomial:
    """Finite map exponent vector -> nonzero exact coefficient over a VarTable."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VarTable, terms: Mapping | None = None):
        self.table = table
        clean = {}
        n = len(table)
        for exp, c in (terms or {}).items():
            if c == 0:
                continue
            exp = tuple(_num(e) for e in exp)
            if len(exp) != n:
                raise UsageError(f"exponent {exp} does not match table of size {n}")
            clean[exp] = _num(clean.get(exp, 0) + c) if exp in clean else _num(c)
            if clean[exp] == 0:
                del clean[exp]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, table, terms):
        p = cls.__new__(cls)
        p.table = table
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, table: VarTable, c=1) -> Polynomial:
        return cls(table, {table.zero(): c})

    @classmethod
    def monomial(cls, table: VarTable, exp: Sequence, c=1) -> Polynomial:
        return cls(table, {tuple(exp): c})

    @classmethod
    def var(cls, table: VarTable, name: str) -> Polynomial:
        return cls(table, {table.unit(name): 1})

    def _check(self, other: Polynomial):
        if self.table != other.table:
            raise UsageError("polynomials live over different variable tables")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.table, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = _num(v)
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial._raw(self.table, {})
            return Polynomial._raw(self.table, {e: _num(c * other) for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e, 0) + c1 * c2
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        return Polynomial._raw(self.table, {e: _num(c) for e, c in terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise UsageError("negative powers of polynomials are not polynomials")
        result = Polynomial.constant(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.table, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.table.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=lambda t: order_key(t[0])))

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coefficient(self, exp: Sequence):
        return self.terms.get(tuple(exp), 0)

    def has_negative_exponents(self) -> bool:
        return any(x < 0 for e in self.terms for x in e)

    def shift(self, exp: Sequence) -> Polynomial:
        """Multiply by the monomial X^exp."""
        return Polynomial._raw(
            self.table,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()},
        )

    def remap(self, table: VarTable, images: Sequence[Sequence]) -> Polynomial:
        """Apply the monomial map sending variable i to X^images[i] over `table`."""
        if len(images) != len(self.table):
            raise UsageError("one image per variable is required")
        n = len(table)
        terms: dict = {}
        for e, c in self.terms.items():
            out = [0] * n
            for k, ek in enumerate(e):
                if ek:
                    img = images[k]
                    for j in range(n):
                        out[j] += ek * img[j]
            key = tuple(_num(x) for x in out)
            v = terms.get(key, 0) + c
            if v:
                terms[key] = _num(v)
            else:
                terms.pop(key, None)
        return Polynomial._raw(table, terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self):
            mono = format_monomial(self.table, e)
            neg = c < 0
            a = -c if neg else c
            if mono == "1":
                body = _fmt_coef(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coef(a)}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.table != b.table:
        raise UsageError("cannot multiply polynomials over different variable tables")
    return a * b


def _is_zero_vector(m) -> bool:
    return all(x == 0 for x in m)


def divide_by_factor(p: Polynomial, m: Sequence) -> Polynomial | None:
    """Return p / (1 - X^m) when the division is exact, else None.

    Terms are grouped into classes e + Z*m; within a class p is X^e f(X^m)
    and (1 - z) divides f(z) exactly when the coefficients sum to zero.
    """
    m = tuple(m)
    piv = next(i for i, x in enumerate(m) if x != 0)
    classes: dict = {}
    for e, c in p.terms.items():
        t = Fraction(e[piv]) / m[piv]
        t = t.numerator // t.denominator  # floor
        base = tuple(_num(a - t * b) for a, b in zip(e, m))
        classes.setdefault(base, {})[t] = c
    out: dict = {}
    for base, coeffs in classes.items():
        if sum(coeffs.values()) != 0:
            return None
        lo, hi = min(coeffs), max(coeffs)
        # f(z) = (1 - z) q(z);  q_k = sum_{j<=k} f_j
        run = 0
        for k in range(lo, hi):
            run += coeffs.get(k, 0)
            if run:
                e = tuple(_num(a + k * b) for a, b in zip(base, m))
                out[e] = _num(run)
    return Polynomial._raw(p.table, out)


def factor_product(table: VarTable, factors: Iterable[Sequence]) -> Polynomial:
    out = Polynomial.constant(table, 1)
    for m in factors:
        out = out * Polynomial(table, {table.zero(): 1, tuple(m): -1})
    return out


class RationalGF:
    """numerator / prod (1 - X^m) with an exact polynomial numerator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Polynomial, denominator: Iterable[Sequence] = ()):
        den = []
        for m in denominator:
            m = tuple(_num(x) for x in m)
            if len(m) != len(numerator.table):
                raise UsageError("denominator monomial does not match the table")
            if _is_zero_vector(m):
                raise UsageError("geometric factor (1 - 1) is identically zero")
            den.append(m)
        self.numerator = numerator
        self.denominator = tuple(sorted(den, key=order_key))

    @property
    def table(self) -> VarTable:
        return self.numerator.table

    @classmethod
    def one(cls, table: VarTable) -> RationalGF:
        return cls(Polynomial.constant(table, 1))

    @classmethod
    def geometric(cls, table: VarTable, factors: Iterable[Sequence], numerator=None) -> RationalGF:
        num = numerator if numerator is not None else Polynomial.constant(table, 1)
        return cls(num, factors)

    def __repr__(self):
        return f"RationalGF({self.to_text()!r})"

    def __mul__(self, other):
        if isinstance(other, RationalGF):
            return RationalGF(self.numerator * other.numerator, self.denominator + other.denominator)
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalGF(self.numerator * other, self.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return RationalGF(-self.numerator, self.denominator)

    def __add__(self, other):
        if not isinstance(other, RationalGF):
            other = RationalGF(Polynomial.constant(self.table, 1) * other)
        return gf_sum([self, other])

    def __sub__(self, other):
        return self + (-other)

    def normalized(self) -> RationalGF:
        """Cancel every denominator factor that divides the numerator."""
        num = self.numerator
        if num.is_zero():
            return RationalGF(num)
        kept = []
        for m in self.denominator:
            q = divide_by_factor(num, m)
            if q is None:
                kept.append(m)
            else:
                num = q
        return RationalGF(num, kept)

    def remap(self, table: VarTable, images: Sequence[Sequence]) -> RationalGF:
        """Monomial substitution x_i -> X^images[i] applied to numerator and factors."""
        n = len(table)
        den = []
        for m in self.denominator:
            out = [0] * n
            for k, mk in enumerate(m):
                if mk:
                    for j in range(n):
                        out[j] += mk * images[k][j]
            if _is_zero_vector(out):
                raise UsageError("substitution sends a geometric factor to (1 - 1)")
            den.append(out)
        return RationalGF(self.numerator.remap(table, images), den)

    def to_text(self) -> str:
        num = self.numerator.to_text()
        if not self.denominator:
            return num
        den = "".join(f"(1-{format_monomial(self.table, m)})" for m in self.denominator)
        return f"({num}) / [{den}]"

    def to_compact(self) -> str:
        """Short form used for omega results, e.g. ``1/((1-L*M)(1-L*x))``."""
        num = self.numerator.to_text()
        if len(self.numerator) > 1:
            num = f"({num})"
        if not self.denominator:
            return num
        den = "".join(f"(1-{format_monomial(self.table, m)})" for m in self.denominator)
        if len(self.denominator) == 1:
            return f"{num}/{den}"
        return f"{num}/({den})"

    def __eq__(self, other):
        if not isinstance(other, RationalGF):
            return NotImplemented
        return gf_equal(self, other)

    __hash__ = None


def _multiset_sub(a: Sequence, b: Sequence) -> list:
    rest = list(a)
    for m in b:
        rest.remove(m)
    return rest


def _common(a: Sequence, b: Sequence) -> list:
    rest = list(b)
    out = []
    for m in a:
        if m in rest:
            rest.remove(m)
            out.append(m)
    return out


def gf_sum(parts: Sequence[RationalGF], normalize: bool = True) -> RationalGF:
    """Sum over the multiset-union of the summands' denominators."""
    if not parts:
        raise UsageError("empty sum has no variable table")
    table = parts[0].table
    den: list = []
    for p in parts:
        if p.table != table:
            raise UsageError("summands live over different variable tables")
        need = list(p.denominator)
        for m in _common(den, p.denominator):
            need.remove(m)
        den.extend(need)
    den.sort(key=order_key)
    grouped: dict = {}
    for p in parts:
        if not p.numerator.is_zero():
            key = tuple(sorted(p.denominator, key=order_key))
            grouped[key] = grouped[key] + p.numerator if key in grouped else p.numerator
    num = Polynomial(table)
    for d, n in grouped.items():
        if not n.is_zero():
            num = num + n * factor_product(table, _multiset_sub(den, d))
    out = RationalGF(num, den)
    return out.normalized() if normalize else out


def gf_equal(a: RationalGF, b: RationalGF) -> bool:
    """Equality as formal rational functions, decided by clearing denominators."""
    if a.table != b.table:
        return False
    shared = _common(a.denominator, b.denominator)
    da = _multiset_sub(a.denominator, shared)
    db = _multiset_sub(b.denominator, shared)
    lhs = a.numerator * factor_product(a.table, db)
    rhs = b.numerator * factor_product(a.table, da)
    return lhs == rhs


def _check_expandable(g: RationalGF, weight: Sequence) -> None:
    for m in g.denominator:
        w = sum(a * b for a, b in zip(m, weight))
        if w <= 0:
            raise DivergentExpansionError(
                f"factor (1-{format_monomial(g.table, m)}) has no positive degree; "
                "its formal expansion diverges"
            )


def series(g: RationalGF, bound: int, weight: Sequence | None = None) -> dict:
    """Formal expansion of g keeping terms of weighted degree <= bound.

    Laurent exponents are allowed as long as every denominator factor has
    strictly positive weighted degree; numerator terms of any weight are
    kept, so the truncation is exact for every coefficient of degree <= bound.
    """
    weight = tuple(weight) if weight is not None else (1,) * len(g.table)
    _check_expandable(g, weight)

    def wdeg(e):
        return sum(a * b for a, b in zip(e, weight))

    cur = {e: c for e, c in g.numerator.terms.items() if wdeg(e) <= bound}
    for m in g.denominator:
        step = wdeg(m)
        nxt: dict = {}
        for e, c in cur.items():
            d = wdeg(e)
            k = 0
            f = e
            while d + k * step <= bound:
                nxt[f] = nxt.get(f, 0) + c
                f = tuple(a + b for a, b in zip(f, m))
                k += 1
        cur = nxt
    return {e: _num(c) for e, c in cur.items() if c != 0}


def gf_expand(g: RationalGF, bound: int) -> dict:
    """Coefficients of every monomial of total degree <= bound.

    Only non-negative exponents are accepted: this is the expansion of a
    final generating function, not of an intermediate Laurent expression.
    """
    for e in list(g.numerator.terms) + list(g.denominator):
        if any(x < 0 for x in e):
            raise DivergentExpansionError(
                "gf_expand needs non-negative exponents; "
                f"got {format_monomial(g.table, e)}"
            )
    return series(g, bound)


def box_expand(g: RationalGF, upper: Sequence[int]) -> dict:
    """Coefficients of every monomial with exponent vector <= upper componentwise."""
    upper = tuple(upper)
    for e in list(g.numerator.terms) + list(g.denominator):
        if any(x < 0 for x in e):
            raise DivergentExpansionError("box expansion needs non-negative exponents")
    _check_expandable(g, (1,) * len(upper))

    def fits(e):
        return all(a <= b for a, b in zip(e, upper))

    cur = {e: c for e, c in g.numerator.terms.items() if fits(e)}
    for m in g.denominator:
        nxt: dict = {}
        for e, c in cur.items():
            f = e
            while fits(f):
                nxt[f] = nxt.get(f, 0) + c
                f = tuple(a + b for a, b in zip(f, m))
        cur = nxt
    return {e: _num(c) for e, c in cur.items() if c != 0}


def exponent_denominator(exps: Iterable[Sequence]) -> int:
    """Least common denominator of a collection of (possibly Fraction) exponents."""
    d = 1
    for e in exps:
        for x in e:
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
    return d
