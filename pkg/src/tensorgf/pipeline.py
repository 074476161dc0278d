"""From an algebra to its tensor-product generating function.

Two routes are offered.  ``hilbert-grobner`` computes the Hilbert basis of
the coupling system (the elementary couplings), the ideal of relations among
them, a forbidden set, and the Poincare series of the resulting model.
``vector-omega`` builds the crude generating function of a vector basis of
the equality system and removes negative powers with Omega.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import tables
from .algebra import Polynomial, RationalGF, UsageError, VarTable, box_expand, gf_equal
from .cache import Cache, cached
from .diophantine import (
    HilbertBasis,
    LinearSystem,
    _rref,
    count_solutions,
    hilbert_basis,
    slack_closure,
    vector_basis,
)
from .grobner import (
    GrobnerBasis,
    TermOrder,
    forbidden_products,
    normal_form,
    parse_order,
    relations_ideal,
    sorted_text,
    weight_order_for,
)
from .hilbert import QuotientModel, grade_substitute, poincare_series
from .omega import OmegaExpr, crude_gf, has_negative_power, integralize, omega_ge, specialize
from .rules import (
    Weight,
    bz_triangle_count,
    bz_triangle_system,
    diamond_system,
    lr_system,
    multiplicity,
    sp4_diamonds,
    sp4_system,
    su_size,
)
from .textio import names_in, parse_gf, parse_polynomial

ROUTES = ("hilbert-grobner", "vector-omega")
DEFAULT_DEGREE_BOUND = 60


class ValidationError(RuntimeError):
    """A computed object disagrees with the table it is matched against."""


@dataclass(frozen=True)
class AlgebraSpec:
    """What to compute.

    ``order`` is a TermOrder or an order string over the coupling labels;
    without it the order is chosen so that the published forbidden set named
    by ``forbidden`` comes out (grevlex when there is none).  ``free`` names
    the free variables of the vector-omega route.
    """

    algebra: str
    route: str = "hilbert-grobner"
    order: TermOrder | str | None = None
    forbidden: str = "published"
    free: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.route not in ROUTES:
            raise UsageError(f"unknown route {self.route!r}; expected one of {ROUTES}")
        instance(self.algebra)
        if self.free is not None:
            object.__setattr__(self, "free", tuple(self.free))

    def describe(self) -> dict:
        order = self.order.describe() if isinstance(self.order, TermOrder) else self.order
        return {
            "algebra": self.algebra,
            "route": self.route,
            "order": order,
            "forbidden": self.forbidden,
            "free": list(self.free) if self.free else None,
        }


@dataclass(frozen=True)
class Instance:
    """Everything fixed about one algebra: systems, grading, published data."""

    name: str
    system: LinearSystem
    grading: VarTable
    weight_map: dict
    weight_blocks: tuple
    couplings: tuple = ()
    relations: tuple = ()
    forbidden: dict = field(default_factory=dict)
    gf: dict = field(default_factory=dict)
    omega_system: LinearSystem | None = None
    omega_map: dict | None = None
    omega_free: tuple | None = None

    def image(self, solution: Sequence[int], system: LinearSystem | None = None, wmap=None) -> tuple:
        system = system or self.system
        wmap = wmap or self.weight_map
        out = [0] * len(self.grading)
        for var, g in wmap.items():
            out[self.grading.index(g)] += solution[system.index(var)]
        return tuple(out)

    @property
    def model_labels(self) -> tuple:
        return tuple(c[0] for c in self.couplings)


def _flat(dynkin) -> tuple:
    return tuple(x for w in dynkin for x in w)


def _su_instance(N: int) -> Instance:
    r = N - 1
    if r == 1:
        names = ["L", "M", "N"]
        blocks = (("L",), ("M",), ("N",))
    else:
        blocks = tuple(tuple(f"{c}{k}" for k in range(1, N)) for c in "LMN")
        names = [x for b in blocks for x in b]
    wmap = {}
    for p, b in zip(("lam", "mu", "nu"), blocks):
        for k, g in enumerate(b, 1):
            wmap[f"{p}{k}"] = g
    data = {
        2: dict(couplings=[(lab, _flat(d), None) for lab, d in tables.SU2_COUPLINGS], gf=tables.SU2_GF),
        3: dict(
            couplings=[(lab, _flat(d), None) for lab, d in tables.SU3_COUPLINGS],
            relations=tables.SU3_RELATIONS,
            forbidden=tables.SU3_FORBIDDEN,
            gf=tables.SU3_GF,
        ),
        4: dict(
            couplings=[(lab, _flat(d), None) for lab, d in tables.SU4_COUPLINGS],
            relations=tables.SU4_RELATIONS,
            forbidden=tables.SU4_FORBIDDEN,
            gf=tables.SU4_GF,
        ),
    }.get(N, {})
    extra: dict = {}
    if N == 2:
        extra = dict(omega_free=("n11", "n12", "a1"))
    elif N == 3:
        # triangle equalities; zeta is the conjugate of nu, so its labels swap
        extra = dict(
            omega_system=bz_triangle_system(),
            omega_map={"lam1": "L1", "lam2": "L2", "mu1": "M1", "mu2": "M2", "zeta1": "N2", "zeta2": "N1"},
            omega_free=("m13", "m23", "l13", "l23", "n12", "n13", "n23"),
        )
    return Instance(
        name=f"su{N}",
        system=lr_system(N),
        grading=VarTable(tuple(names), ("grading",) * len(names)),
        weight_map=wmap,
        weight_blocks=blocks,
        couplings=tuple(tuple(c) for c in data.get("couplings", ())),
        relations=tuple(data.get("relations", ())),
        forbidden=dict(data.get("forbidden", {})),
        gf=dict(data.get("gf", {})),
        **extra,
    )


def _sp4_instance() -> Instance:
    blocks = (("L1", "L2"), ("M1", "M2"), ("N1", "N2"))
    wmap = {f"{p}{k}": f"{c}{k}" for p, c in zip(("lam", "mu", "nu"), "LMN") for k in (1, 2)}
    return Instance(
        name="sp4",
        system=sp4_system(),
        grading=VarTable(tuple(x for b in blocks for x in b), ("grading",) * 6),
        weight_map=wmap,
        weight_blocks=blocks,
        couplings=tuple(
            (lab, _flat(d), {"s1": v[0] // 2, "s2": v[1] // 2, "p": v[2], "q": v[3]}, "four-vector", v)
            for lab, d, v in tables.SP4_COUPLINGS
        ),
        relations=tuple(tables.SP4_RELATIONS),
        forbidden=dict(tables.SP4_FORBIDDEN),
        gf=dict(tables.SP4_GF),
        omega_system=diamond_system(),
        omega_map=wmap,
        omega_free=("s1", "s2", "p", "q", "a1", "a3", "a6", "a8"),
    )


QUADRUPLE_VECTOR = ("lam1", "n11", "n12", "m11", "m12")


def quadruple_system() -> LinearSystem:
    """lam x mu x nu > zeta for su(2): two LR steps chained."""
    return slack_closure(
        ["lam1 - n12 >= 0", "lam1 + n11 - n12 - m12 >= 0"],
        ["mu1 = n11 + n12", "nu1 = m11 + m12", "zeta1 = lam1 + n11 - n12 + m11 - m12"],
        names=("lam1", "mu1", "nu1", "zeta1") + QUADRUPLE_VECTOR[1:],
        slack_prefix="a",
    )


def _quadruple_instance() -> Instance:
    wmap = {"lam1": "L", "mu1": "M", "nu1": "N", "zeta1": "P"}
    return Instance(
        name="su2-quadruple",
        system=quadruple_system(),
        grading=VarTable(("L", "M", "N", "P"), ("grading",) * 4),
        weight_map=wmap,
        weight_blocks=(("L",), ("M",), ("N",), ("P",)),
        couplings=tuple(
            (lab, _flat(d), dict(zip(QUADRUPLE_VECTOR, v)), "five-vector", v)
            for lab, d, v in tables.QUADRUPLE_COUPLINGS
        ),
        relations=tuple(tables.QUADRUPLE_RELATIONS),
        forbidden=dict(tables.QUADRUPLE_FORBIDDEN),
        gf=dict(tables.QUADRUPLE_GF),
        omega_free=("a1", "a2", "m11", "n12", "m12"),
    )


MAGIC_CELLS = tuple("abcdefghi")


def magic_square_system() -> LinearSystem:
    """3x3 non-negative integer squares whose rows and columns all sum to t."""
    rows = ["a + b + c = t", "d + e + f = t", "g + h + i = t",
            "a + d + g = t", "b + e + h = t", "c + f + i = t"]
    return slack_closure([], rows, names=MAGIC_CELLS + ("t",))


def _magic_instance() -> Instance:
    names = tuple(c.upper() for c in MAGIC_CELLS) + ("T",)
    return Instance(
        name="magic-square-3",
        system=magic_square_system(),
        grading=VarTable(names, ("grading",) * len(names)),
        weight_map={c: c.upper() for c in MAGIC_CELLS + ("t",)},
        weight_blocks=tuple((n,) for n in names),
        couplings=tuple((lab, v, None) for lab, v in tables.MAGIC_COUPLINGS),
        relations=tuple(tables.MAGIC_RELATIONS),
        forbidden=dict(tables.MAGIC_FORBIDDEN),
        gf=dict(tables.MAGIC_GF),
        omega_free=("e", "f", "h", "i", "t"),
    )


ALGEBRAS = ("su2", "su3", "su4", "suN", "sp4", "su2-quadruple", "magic-square-3")


@lru_cache(maxsize=None)
def instance(algebra: str) -> Instance:
    if algebra == "sp4":
        return _sp4_instance()
    if algebra == "su2-quadruple":
        return _quadruple_instance()
    if algebra == "magic-square-3":
        return _magic_instance()
    if re.fullmatch(r"su\d+", algebra):
        N = su_size(algebra)
        if N >= 2:
            return _su_instance(N)
    raise UsageError(f"unsupported algebra {algebra!r}; expected one of su2, su3, su4, suN, sp4, "
                     "su2-quadruple, magic-square-3")


# -- couplings -----------------------------------------------------------


@dataclass(frozen=True)
class ElementaryCoupling:
    label: str
    grading: tuple[int, ...]
    solution: tuple[int, ...]
    extra_name: str | None = None
    extra: tuple | None = None

    def monomial(self, table: VarTable) -> str:
        return Polynomial.monomial(table, self.grading).to_text()


@dataclass
class CouplingCatalog:
    spec: AlgebraSpec
    instance: Instance
    couplings: list[ElementaryCoupling]
    relations: GrobnerBasis

    @property
    def model(self) -> VarTable:
        return self.relations.table

    @property
    def grading(self) -> VarTable:
        return self.instance.grading

    @property
    def images(self) -> list[tuple]:
        return [c.grading for c in self.couplings]

    @property
    def forbidden(self) -> list[tuple]:
        return forbidden_products(self.relations)

    def forbidden_text(self) -> list[str]:
        return [Polynomial.monomial(self.model, f).to_text() for f in self.forbidden]

    def quotient(self) -> QuotientModel:
        return QuotientModel(self.model, self.grading, self.images, self.relations)

    def by_label(self, label: str) -> ElementaryCoupling:
        for c in self.couplings:
            if c.label == label:
                return c
        raise KeyError(label)

    def to_dict(self) -> dict:
        out = []
        for c in self.couplings:
            d = {
                "label": c.label,
                "grading": c.monomial(self.grading),
                "exponent": list(c.grading),
                "solution": dict(zip(self.instance.system.names, c.solution)),
            }
            if c.extra_name:
                d[c.extra_name] = list(c.extra)
            out.append(d)
        return {
            "algebra": self.spec.algebra,
            "grading": list(self.grading.names),
            "couplings": out,
            "relations": self.relations.to_dict(),
            "forbidden": self.forbidden_text(),
        }


def cached_hilbert_basis(system: LinearSystem, cache: Cache | None) -> HilbertBasis:
    sols = cached(cache, "hilbert", system.to_dict(), lambda: [list(s) for s in hilbert_basis(system)])
    return HilbertBasis(system, tuple(tuple(s) for s in sols))


def _label(inst: Instance, sols) -> list[ElementaryCoupling]:
    if not inst.couplings:
        sols = sorted(sols, key=lambda s: (sum(inst.image(s)), tuple(-x for x in inst.image(s))))
        return [ElementaryCoupling(f"E{k}", inst.image(s), tuple(s)) for k, s in enumerate(sols, 1)]
    out = []
    used = set()
    for entry in inst.couplings:
        label, grading, check = entry[0], tuple(entry[1]), entry[2]
        hits = [s for s in sols if inst.image(s) == grading]
        if check:
            hits = [s for s in hits if all(_check_value(inst, s, k, v) for k, v in check.items())]
        if len(hits) != 1:
            raise ValidationError(f"{inst.name}: coupling {label} matches {len(hits)} basis elements")
        used.add(hits[0])
        extra = (entry[3], tuple(entry[4])) if len(entry) > 3 else (None, None)
        out.append(ElementaryCoupling(label, grading, tuple(hits[0]), *extra))
    left = [s for s in sols if s not in used]
    if left:
        raise ValidationError(f"{inst.name}: {len(left)} basis elements match no published coupling, e.g. {left[0]}")
    return out


def _check_value(inst: Instance, sol, var: str, value) -> bool:
    return sol[inst.system.index(var)] == value


def resolve_order(spec: AlgebraSpec, model: VarTable) -> TermOrder:
    if isinstance(spec.order, TermOrder):
        return spec.order
    if isinstance(spec.order, str) and spec.order not in ("", "published"):
        return parse_order(spec.order, model)
    inst = instance(spec.algebra)
    if spec.forbidden not in inst.forbidden:
        if inst.forbidden and spec.forbidden != "published":
            raise UsageError(
                f"{spec.algebra} has no forbidden set {spec.forbidden!r}; choose from {sorted(inst.forbidden)}"
            )
        return TermOrder("grevlex")
    chosen = {parse_polynomial(m, model).terms.popitem()[0] for m in inst.forbidden[spec.forbidden]}
    pairs = []
    for lhs, rhs in inst.relations:
        a = _exp(lhs, model)
        b = _exp(rhs, model)
        if a in chosen:
            pairs.append((a, b))
        elif b in chosen:
            pairs.append((b, a))
        else:
            raise ValidationError(f"relation {lhs} = {rhs} has no side in the forbidden set {spec.forbidden!r}")
    order = weight_order_for(model, pairs)
    if order is None:
        raise ValidationError(f"no weight order makes the forbidden set {spec.forbidden!r} leading")
    return order


def _exp(text: str, table: VarTable) -> tuple:
    p = parse_polynomial(text, table)
    if not p.is_monomial():
        raise UsageError(f"{text!r} is not a monomial")
    return next(iter(p.terms))


def elementary_couplings(spec: AlgebraSpec | str, cache: Cache | None = None) -> CouplingCatalog:
    spec = _spec(spec)
    inst = instance(spec.algebra)
    hb = cached_hilbert_basis(inst.system, cache)
    couplings = _label(inst, list(hb.solutions))
    model = VarTable(tuple(c.label for c in couplings), ("model",) * len(couplings))
    order = resolve_order(spec, model)
    # relations among the full solution vectors; equal gradings alone do
    # not make two products of couplings equal
    vectors = [c.solution for c in couplings]
    support = [j for j in range(inst.system.nvars) if any(v[j] for v in vectors)]
    images = [tuple(v[j] for j in support) for v in vectors]
    space = VarTable(tuple(inst.system.names[j] for j in support))

    def produce():
        gb = relations_ideal(model, images, space, order)
        return [[[list(e), str(c)] for e, c in sorted(g.terms.items())] for g in gb.generators]

    payload = {"model": list(model.names), "images": [list(i) for i in images], "order": order.describe(model)}
    raw = cached(cache, "relations", payload, produce)
    gens = [Polynomial(model, {tuple(e): _frac(c) for e, c in g}) for g in raw]
    return CouplingCatalog(spec, inst, couplings, GrobnerBasis(model, order, gens))


def _frac(text: str):
    f = Fraction(text)
    return int(f) if f.denominator == 1 else f


def _spec(spec) -> AlgebraSpec:
    return AlgebraSpec(spec) if isinstance(spec, str) else spec


def published_relations_of(catalog: CouplingCatalog) -> list[Polynomial]:
    return [
        parse_polynomial(f"{lhs} - ({rhs})", catalog.model) for lhs, rhs in catalog.instance.relations
    ]


def relation_check(catalog: CouplingCatalog) -> dict:
    """Normal forms of the published relations in the computed ideal."""
    return {
        sorted_text(p, catalog.relations.order): normal_form(p, catalog.relations).to_text()
        for p in published_relations_of(catalog)
    }


# -- generating functions ------------------------------------------------


def model_series(catalog: CouplingCatalog) -> RationalGF:
    """Poincare series over the coupling labels (standard monomials)."""
    return poincare_series(catalog.quotient())


def label_images(catalog_or_inst) -> tuple[VarTable, list[tuple]]:
    inst = catalog_or_inst.instance if isinstance(catalog_or_inst, CouplingCatalog) else catalog_or_inst
    labels = tuple(c[0] for c in inst.couplings)
    return VarTable(labels, ("model",) * len(labels)), [tuple(c[1]) for c in inst.couplings]


def published_gf(algebra: str, which: str = "published", over_labels: bool = False) -> RationalGF:
    """A published closed form, over the grading variables unless asked otherwise."""
    inst = instance(algebra)
    if which not in inst.gf:
        raise UsageError(f"no published generating function {which!r} for {algebra}")
    text = inst.gf[which]
    if all(n in inst.grading.names for n in names_in(text)):
        if over_labels:
            raise UsageError(f"the published form for {algebra} is written in grading variables")
        return parse_gf(text, inst.grading)
    table, images = label_images(inst)
    g = parse_gf(text, table)
    return g if over_labels else g.remap(inst.grading, images).normalized()


def generating_function(spec: AlgebraSpec | str, cache: Cache | None = None) -> RationalGF:
    spec = _spec(spec)
    if spec.route == "vector-omega":
        return omega_route(spec)
    cat = elementary_couplings(spec, cache)
    return grade_substitute(model_series(cat), cat.quotient())


def default_free(system: LinearSystem, weights: Sequence[str]) -> tuple[str, ...]:
    """Free variables whose complement contains all the weights if possible."""
    order = [system.index(w) for w in weights] + [
        j for j in range(system.nvars) if system.names[j] not in weights
    ]
    _, pivots = _rref([[Fraction(r[j]) for j in order] for r in system.rows], range(len(order)))
    pivot_cols = {order[c] for _, c in pivots}
    return tuple(n for j, n in enumerate(system.names) if j not in pivot_cols)


def omega_route(spec: AlgebraSpec) -> RationalGF:
    inst = instance(spec.algebra)
    system = inst.omega_system or inst.system
    wmap = inst.omega_map or inst.weight_map
    free = spec.free or inst.omega_free or default_free(system, list(wmap))
    basis = vector_basis(system, free)
    expr = integralize(crude_gf(basis))
    known = set(free)
    while True:
        known = _implied_nonnegative(system, known)
        todo = [v for v in system.names if v not in known and has_negative_power(expr, v)]
        if not todo:
            break
        # prefer the variable that settles the most others, then the cheapest
        v = min(todo, key=lambda n: (-len(_implied_nonnegative(system, known | {n})),
                                     _negative_factors(expr, n), system.index(n)))
        expr = omega_ge(expr, v)
        known.add(v)
    keep = list(wmap)
    out = specialize(expr, keep)
    images = [inst.grading.unit(wmap[n]) for n in keep]
    return OmegaExpr([p.remap(inst.grading, images) for p in out.parts], inst.grading).to_gf()


def _implied_nonnegative(system: LinearSystem, known: set) -> set:
    """Close ``known`` under rows writing one variable as a non-negative
    combination of known ones; those need no projection."""
    known = set(known)
    changed = True
    while changed:
        changed = False
        for row in system.rows:
            nz = [j for j, a in enumerate(row) if a]
            for j in nz:
                name = system.names[j]
                if name in known:
                    continue
                if all(row[k] * row[j] < 0 and system.names[k] in known for k in nz if k != j):
                    known.add(name)
                    changed = True
    return known


def _negative_factors(expr: OmegaExpr, v: str) -> int:
    vi = expr.table.index(v)
    return sum(1 for g in expr.parts for m in g.denominator if m[vi] < 0)


# -- coefficients and validation -----------------------------------------


def _target(g: RationalGF, weights) -> tuple:
    exp = []
    for w in weights:
        exp.extend(w.labels if isinstance(w, Weight) else tuple(w))
    if len(exp) != len(g.table):
        raise UsageError(f"expected {len(g.table)} labels in total, got {len(exp)}")
    if any(x < 0 for x in exp):
        raise UsageError("labels must be non-negative")
    return tuple(exp)


def tensor_coefficient(g: RationalGF, *weights, bound: int = DEFAULT_DEGREE_BOUND) -> int:
    """Coefficient of L^lam M^mu N^nu (weights in grading-block order)."""
    exp = _target(g, weights)
    if sum(exp) > bound:
        raise UsageError(f"total degree {sum(exp)} exceeds the expansion bound {bound}")
    return box_expand(g, exp).get(exp, 0)


@dataclass
class ValidationReport:
    spec: AlgebraSpec
    bound: int
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.describe(),
            "label_bound": self.bound,
            "checked": self.checked,
            "mismatches": self.mismatches,
            "ok": self.ok,
        }


def cross_validate(spec: AlgebraSpec | str, bound: int, cache: Cache | None = None,
                   g: RationalGF | None = None) -> ValidationReport:
    """Direct counts against GF coefficients for all labels <= bound."""
    spec = _spec(spec)
    inst = instance(spec.algebra)
    g = g if g is not None else generating_function(spec, cache)
    rep = ValidationReport(spec, bound)
    if inst.name == "magic-square-3":
        return _validate_magic(inst, g, rep)
    coeffs = box_expand(g, (bound,) * len(inst.grading))
    alg = inst.name
    blocks = inst.weight_blocks
    ranges = [range(bound + 1)] * len(inst.grading)
    for exp in itertools.product(*ranges):
        parts, k = [], 0
        for b in blocks:
            parts.append(exp[k:k + len(b)])
            k += len(b)
        counts = {"gf": coeffs.get(tuple(exp), 0)}
        if alg == "su2-quadruple":
            fixed = dict(zip(("lam1", "mu1", "nu1", "zeta1"), exp))
            counts["direct"] = count_solutions(inst.system, fixed)
        else:
            lam, mu, nu = (Weight(alg, p) for p in parts)
            counts["direct"] = multiplicity(lam, mu, nu)
            if alg == "su3":
                counts["triangles"] = bz_triangle_count(lam, mu, nu.conjugate())
            elif alg == "sp4":
                counts["diamonds"] = len(sp4_diamonds(lam, mu, nu))
        rep.checked += 1
        if len(set(counts.values())) != 1:
            rep.mismatches.append({"labels": [list(p) for p in parts], **counts})
    return rep


def _validate_magic(inst: Instance, g: RationalGF, rep: ValidationReport) -> ValidationReport:
    t_table = VarTable(("T",))
    images = [(1,) if n == "T" else (0,) for n in inst.grading.names]
    gt = g.remap(t_table, images)
    coeffs = box_expand(gt, (rep.bound,))
    for t in range(rep.bound + 1):
        direct = count_solutions(inst.system, {"t": t})
        rep.checked += 1
        if coeffs.get((t,), 0) != direct:
            rep.mismatches.append({"t": t, "gf": coeffs.get((t,), 0), "direct": direct})
    return rep


def report(spec: AlgebraSpec | str, bound: int = 1, cache: Cache | None = None) -> dict:
    """Couplings, relations, forbidden set, GF and validation in one document."""
    spec = _spec(spec)
    doc: dict = {"spec": spec.describe()}
    if spec.route == "hilbert-grobner":
        cat = elementary_couplings(spec, cache)
        doc.update(cat.to_dict())
        if cat.instance.relations:
            nf = relation_check(cat)
            doc["published_relations"] = {k: v == "0" for k, v in nf.items()}
        g = grade_substitute(model_series(cat), cat.quotient())
    else:
        g = generating_function(spec, cache)
    doc["generating_function"] = g.to_text()
    inst = instance(spec.algebra)
    if "published" in inst.gf:
        doc["matches_published"] = {w: gf_equal(g, published_gf(spec.algebra, w)) for w in inst.gf}
    doc["validation"] = cross_validate(spec, bound, cache, g=g).to_dict()
    return doc
