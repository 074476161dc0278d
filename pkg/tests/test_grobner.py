from __future__ import annotations

import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorgf.algebra import Polynomial, UsageError, VarTable
from tensorgf.grobner import (
    GrobnerBasis,
    TermOrder,
    buchberger,
    check_homogeneous,
    forbidden_products,
    integer_kernel,
    is_groebner,
    is_reduced,
    is_standard,
    normal_form,
    parse_order,
    relations_ideal,
    s_polynomial,
    sorted_text,
    weight_order_for,
)
from tensorgf.pipeline import AlgebraSpec, elementary_couplings
from tensorgf.textio import parse_polynomial

XYZT = VarTable(("x", "y", "z", "t"))


def P(text, table=XYZT):
    return parse_polynomial(text, table)


@pytest.fixture(scope="module")
def toy():
    return buchberger([P("x*y - t"), P("z*y - t")], TermOrder("lex"))


def test_toy_basis(toy):
    assert [sorted_text(g, toy.order) for g in toy.generators] == ["y*z - t", "x*t - z*t", "x*y - t"]
    assert is_groebner(toy) and is_reduced(toy)


def test_toy_normal_forms(toy):
    assert normal_form(P("x*y*t"), toy) == P("t^2")
    # x*y*z -> t*z by x*y -> t, and z*t is standard
    assert normal_form(P("x*y*z"), toy) == P("z*t")
    assert normal_form(P("y^2*t"), toy) == P("y^2*t")
    assert normal_form(P("x*t"), toy) == P("z*t")


def test_toy_membership(toy):
    f = P("x^2 + 3*z") * P("x*y - t") - P("t - y") * P("z*y - t")
    assert normal_form(f, toy).is_zero()
    assert not normal_form(P("x*y"), toy).is_zero()


def test_monomial_generator():
    gb = buchberger([P("x^2*y")], TermOrder("grevlex"))
    assert gb.generators == [P("x^2*y")]
    assert normal_form(P("x^3*y + z"), gb) == P("z")


def test_order_keys():
    lex = TermOrder("lex")
    grevlex = TermOrder("grevlex")
    assert lex.key((1, 0, 0, 0)) > lex.key((0, 3, 0, 0))
    assert grevlex.key((0, 3, 0, 0)) > grevlex.key((1, 0, 0, 0))
    # grevlex: x*t < y*z in degree two (t is the smallest variable)
    assert grevlex.key((0, 1, 1, 0)) > grevlex.key((1, 0, 0, 1))


def test_parse_order():
    o = parse_order("weight(1,1,1,2)+lex:t>x", XYZT)
    assert o.weights == ((1, 1, 1, 2),)
    assert o.priority == (3, 0, 1, 2)
    assert o.describe(XYZT) == "weight(1,1,1,2)+lex:t>x>y>z"
    for bad in ("fancy", "lex:w", "lex:x>x", "weight(1,2)+lex"):
        with pytest.raises(UsageError):
            parse_order(bad, XYZT)


def test_revlex_needs_weight():
    with pytest.raises(UsageError):
        TermOrder("revlex")


def test_weight_order_for():
    t = VarTable(("a", "b", "c"))
    o = weight_order_for(t, [((1, 1, 0), (0, 0, 2)), ((0, 0, 2), (1, 0, 1))])
    assert o is not None
    assert o.key((1, 1, 0)) > o.key((0, 0, 2)) > o.key((1, 0, 1))
    # a cycle has no weight order
    assert weight_order_for(t, [((1, 0, 0), (0, 1, 0)), ((0, 1, 0), (1, 0, 0))]) is None


def test_integer_kernel():
    cols = [(1, 0), (0, 1), (1, 1), (2, 1)]
    ker = integer_kernel(cols)
    assert len(ker) == 2
    for u in ker:
        assert all(sum(u[i] * cols[i][j] for i in range(4)) == 0 for j in range(2))


# -- against sympy ------------------------------------------------------------------

_sx = sympy.symbols("x y z t")


def _to_sympy(p: Polynomial):
    return sum(sympy.Rational(c) * sympy.prod(s ** k for s, k in zip(_sx, e)) for e, c in p.terms.items())


_mono = st.tuples(*[st.integers(0, 2)] * 4)
_poly = st.dictionaries(_mono, st.integers(-3, 3).filter(bool), min_size=1, max_size=3).map(
    lambda d: Polynomial(XYZT, d)
)


@settings(max_examples=25, deadline=None)
@given(st.lists(_poly, min_size=1, max_size=3), st.sampled_from(["lex", "grlex", "grevlex"]))
def test_matches_sympy(gens, kind):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    ours = buchberger(gens, TermOrder(kind))
    theirs = sympy.groebner([_to_sympy(g) for g in gens], *_sx, order=kind)
    mine = {sympy.expand(_to_sympy(g)) for g in ours.generators}
    assert mine == {sympy.expand(g / sympy.Poly(g, *_sx).LC(order=kind)) for g in theirs.exprs}
    assert is_groebner(ours) and is_reduced(ours)


@settings(max_examples=25, deadline=None)
@given(st.lists(_poly, min_size=1, max_size=3), _poly, _poly)
def test_normal_form_properties(gens, a, b):
    gb = buchberger(gens, TermOrder("grevlex"))
    for f, g in itertools.combinations(gb.generators, 2):
        assert normal_form(s_polynomial(f, g, gb.order), gb).is_zero()
    combo = a * gens[0] + b * gens[-1]
    assert normal_form(combo, gb).is_zero()
    once = normal_form(a, gb)
    assert normal_form(once, gb) == once
    forb = forbidden_products(gb)
    assert all(is_standard(e, forb) for e in once.terms)


# -- ideals of relations ---------------------------------------------------------------


def test_elimination_equals_saturation():
    m = VarTable(("e1", "e2", "e3", "e4"))
    g = VarTable(("u", "v"))
    images = [(2, 0), (1, 1), (0, 2), (1, 0)]
    a = relations_ideal(m, images, g, method="saturation")
    b = relations_ideal(m, images, g, method="elimination")
    assert {p.to_text() for p in a} == {p.to_text() for p in b}
    assert any(p == parse_polynomial("e2^2 - e1*e3", m) or p == parse_polynomial("e1*e3 - e2^2", m) for p in a)


def test_unknown_method():
    m = VarTable(("e1",))
    with pytest.raises(UsageError):
        relations_ideal(m, [(1,)], VarTable(("u",)), method="magic")


def test_zero_image_rejected():
    m = VarTable(("e1", "e2"))
    with pytest.raises(UsageError):
        relations_ideal(m, [(1,), (0,)], VarTable(("u",)))


@pytest.mark.parametrize(
    "spec, count",
    [("su2", 0), ("su2-quadruple", 1), ("magic-square-3", 1), ("su3", 1), ("sp4", 9), ("su4", 15)],
)
def test_relation_counts(spec, count):
    cat = elementary_couplings(spec)
    assert len(cat.relations) == count
    check_homogeneous(cat.relations, cat.images)


def _names(cat):
    return {frozenset(n for n, k in zip(cat.model.names, e) for _ in range(k)) for e in cat.forbidden}


def test_sp4_forbidden_sets():
    cat = elementary_couplings("sp4")
    expected = {f"C{i}*C{j}" for i, j in [(1, 2), (1, 3), (2, 3)]}
    expected |= {f"D{i}*D{j}" for i, j in [(1, 2), (1, 3), (2, 3)]}
    expected |= {f"C{i}*D{i}" for i in (1, 2, 3)}
    assert set(cat.forbidden_text()) == expected
    alt = elementary_couplings(AlgebraSpec("sp4", forbidden="alternate"))
    assert set(alt.forbidden_text()) == {
        "A1*A3*B2", "C3*D3", "A3*D3", "C2*D2", "C1*D1", "A1*D1", "D2*D3", "D1*D3", "D1*D2",
    }


def test_quadruple_forbidden():
    assert elementary_couplings("su2-quadruple").forbidden_text() == ["E3*E4"]


def test_empty_basis_has_no_forbidden_products():
    gb = GrobnerBasis(XYZT, TermOrder("grevlex"), [])
    assert forbidden_products(gb) == []
    assert is_groebner(gb) and is_reduced(gb)


def test_inhomogeneous_relation_detected():
    gb = GrobnerBasis(XYZT, TermOrder("grevlex"), [P("x*y - t")])
    with pytest.raises(UsageError, match="not homogeneous"):
        check_homogeneous(gb, [(1,), (1,), (1,), (1,)])
