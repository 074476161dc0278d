"""Published coupling tables, relations, forbidden sets and closed forms.

Labels follow the source tables; D'_i is spelled ``Dp{i}`` so that it is a
plain identifier in expressions.  Dynkin data are (lam, mu, nu) with
lam x mu > nu, except for the quadruple su(2) product where the fourth entry
is the final representation.  Generating functions are written over the
labels with ``1/(1-X)`` for a tilde factor; every label stands for its
grading monomial.
"""

from __future__ import annotations


def _tilde(*labels: str) -> str:
    return "".join(f"(1-{x})" for x in labels)


def _term(num: str, tildes: str) -> str:
    t = tildes.split()
    return f"{num or '1'}/({_tilde(*t)})"


SU2_COUPLINGS = [
    ("E1", ((1,), (1,), (0,))),
    ("E2", ((1,), (0,), (1,))),
    ("E3", ((0,), (1,), (1,))),
]

# nu = zeta* swaps the two labels of the third weight.
SU3_COUPLINGS = [
    ("E1", ((1, 0), (0, 1), (0, 0))),
    ("E2", ((1, 0), (0, 0), (1, 0))),
    ("E3", ((0, 0), (1, 0), (1, 0))),
    ("E4", ((0, 1), (1, 0), (0, 0))),
    ("E5", ((0, 1), (0, 0), (0, 1))),
    ("E6", ((0, 0), (0, 1), (0, 1))),
    ("E7", ((1, 0), (1, 0), (0, 1))),
    ("E8", ((0, 1), (0, 1), (1, 0))),
]
SU3_RELATIONS = [("E7*E8", "E1*E3*E5")]
SU3_FORBIDDEN = {"published": ["E7*E8"]}
SU3_GF = {"published": f"(1 - E7*E8)/({_tilde(*[f'E{i}' for i in range(1, 9)])})"}

SU4_COUPLINGS = [
    ("A1", ((0, 0, 0), (0, 0, 1), (0, 0, 1))),
    ("A2", ((0, 0, 1), (1, 0, 0), (0, 0, 0))),
    ("A3", ((1, 0, 0), (0, 0, 0), (1, 0, 0))),
    ("B1", ((0, 0, 0), (0, 1, 0), (0, 1, 0))),
    ("B2", ((0, 1, 0), (0, 1, 0), (0, 0, 0))),
    ("B3", ((0, 1, 0), (0, 0, 0), (0, 1, 0))),
    ("C1", ((0, 0, 0), (1, 0, 0), (1, 0, 0))),
    ("C2", ((1, 0, 0), (0, 0, 1), (0, 0, 0))),
    ("C3", ((0, 0, 1), (0, 0, 0), (0, 0, 1))),
    ("Dp1", ((0, 1, 0), (1, 0, 0), (0, 0, 1))),
    ("Dp2", ((1, 0, 0), (1, 0, 0), (0, 1, 0))),
    ("Dp3", ((1, 0, 0), (0, 1, 0), (0, 0, 1))),
    ("D1", ((0, 1, 0), (0, 0, 1), (1, 0, 0))),
    ("D2", ((0, 0, 1), (0, 0, 1), (0, 1, 0))),
    ("D3", ((0, 0, 1), (0, 1, 0), (1, 0, 0))),
    ("E1", ((1, 0, 1), (0, 1, 0), (0, 1, 0))),
    ("E2", ((0, 1, 0), (0, 1, 0), (1, 0, 1))),
    ("E3", ((0, 1, 0), (1, 0, 1), (0, 1, 0))),
]

_CYCLIC = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]

SU4_RELATIONS = []
for i, j, k in _CYCLIC:
    SU4_RELATIONS += [
        (f"Dp{j}*D{k}", f"C{i}*E{i}"),
        (f"D{j}*Dp{k}", f"B{i}*C{j}*C{k}"),
        (f"E{i}*E{j}", f"B{k}*D{k}*Dp{k}"),
        (f"D{i}*E{i}", f"C{j}*B{k}*D{k}"),
        (f"Dp{i}*E{i}", f"B{j}*Dp{j}*C{k}"),
    ]
SU4_FORBIDDEN = {
    "published": sorted(
        {f"E{i}*E{j}" for i, j, _ in _CYCLIC}
        | {f"Dp{i}*E{i}" for i in (1, 2, 3)}
        | {f"D{i}*E{i}" for i in (1, 2, 3)}
        | {f"D{j}*Dp{i}" for i, j, _ in _CYCLIC}
        | {f"Dp{j}*D{i}" for i, j, _ in _CYCLIC}
    )
}
_SU4_TERMS = [
    ("", "Dp1 Dp2 Dp3"),
    ("E1", "E1 Dp2 Dp3"),
    ("D3", "D3 Dp3 E1"),
    ("D2", "D2 D3 E1"),
    ("D1", "D1 D2 D3"),
    ("E3", "E3 D1 D2"),
    ("Dp1", "Dp1 D1 E3"),
    ("Dp2*E3", "Dp2 E3 Dp1"),
    ("E2", "E2 Dp1 Dp3"),
    ("E2*D1", "E2 D1 Dp1"),
    ("E2*D3", "E2 D3 Dp3"),
    ("D1*D3*E2", "D1 D3 E2"),
    ("D2*Dp2", "D2 Dp2 E1"),
    ("D2*Dp2*E3", "D2 Dp2 E3"),
]
SU4_GF = {
    "published": "1/("
    + _tilde(*[f"{x}{i}" for i in (1, 2, 3) for x in "ABC"])
    + ") * ("
    + " + ".join(_term(n, t) for n, t in _SU4_TERMS)
    + ")"
}

# four-vector [r1, r2, p, q] with r_i = 2 s_i
SP4_COUPLINGS = [
    ("A1", ((0, 0), (1, 0), (1, 0)), (0, 0, 0, 0)),
    ("A2", ((1, 0), (0, 0), (1, 0)), (0, 0, 0, 0)),
    ("A3", ((1, 0), (1, 0), (0, 0)), (0, 0, 1, 1)),
    ("B1", ((0, 0), (0, 1), (0, 1)), (0, 0, 0, 0)),
    ("B2", ((0, 1), (0, 0), (0, 1)), (0, 0, 0, 0)),
    ("B3", ((0, 1), (0, 1), (0, 0)), (2, 2, 0, 0)),
    ("C1", ((0, 1), (1, 0), (1, 0)), (0, 0, 0, 1)),
    ("C2", ((1, 0), (0, 1), (1, 0)), (0, 2, 1, 0)),
    ("C3", ((1, 0), (1, 0), (0, 1)), (0, 0, 1, 0)),
    ("D1", ((2, 0), (0, 1), (0, 1)), (0, 2, 2, 0)),
    ("D2", ((0, 1), (2, 0), (0, 1)), (2, 0, 0, 0)),
    ("D3", ((0, 1), (0, 1), (2, 0)), (0, 2, 0, 0)),
]
SP4_RELATIONS = [
    ("C1*C2", "A3*D3"),
    ("C2*C3", "A1*D1"),
    ("C3*C1", "A1*A3*B2"),
    ("D1*D2", "B3*C3^2"),
    ("D2*D3", "A1^2*B2*B3"),
    ("D1*D3", "B2*C2^2"),
    ("C1*D1", "A3*B2*C2"),
    ("C2*D2", "A1*B3*C3"),
    ("C3*D3", "A1*B2*C2"),
]
SP4_FORBIDDEN = {
    "published": ["C1*C2", "C2*C3", "C1*C3", "D1*D2", "D2*D3", "D1*D3", "C1*D1", "C2*D2", "C3*D3"],
    "alternate": ["D1*D2", "D2*D3", "D1*D3", "C1*D1", "C2*D2", "C3*D3", "A1*D1", "A3*D3", "A1*A3*B2"],
}
_AB = "A1 A2 A3 B1 B2 B3"
SP4_GF = {
    "published": f"1/({_tilde(*_AB.split())}) * ("
    + " + ".join(
        _term(n, t)
        for n, t in [
            ("", "C1 D2"),
            ("D3", "C1 D3"),
            ("C2*D1", "C2 D1"),
            ("C2", "C2 D3"),
            ("D1", "C3 D1"),
            ("C3", "C3 D2"),
        ]
    )
    + ")",
    # the product over i covers both the A and the C factors
    "alternate": f"1/({_tilde('B1', 'B2', 'B3')}) * ("
    + " + ".join(
        [
            _term("(1 - A1*A3*B2)", "A1 A2 A3 C1 C2 C3"),
            _term("D3", "D3 A1 A2 C1 C2"),
            _term("D1", "D1 A2 A3 C2 C3"),
            _term("D2*(1 - A1*A3*B2)", "D2 A1 A2 A3 C1 C3"),
        ]
    )
    + ")",
}

# (lam1, n11, n12, m11, m12) for each coupling
QUADRUPLE_COUPLINGS = [
    ("E1", ((1,), (1,), (0,), (0,)), (1, 0, 1, 0, 0)),
    ("E2", ((1,), (0,), (1,), (0,)), (1, 0, 0, 0, 1)),
    ("E3", ((1,), (0,), (0,), (1,)), (1, 0, 0, 0, 0)),
    ("E4", ((0,), (1,), (1,), (0,)), (0, 1, 0, 0, 1)),
    ("E5", ((0,), (1,), (0,), (1,)), (0, 1, 0, 0, 0)),
    ("E6", ((0,), (0,), (1,), (1,)), (0, 0, 0, 1, 0)),
]
QUADRUPLE_RELATIONS = [("E3*E4", "E2*E5")]
QUADRUPLE_FORBIDDEN = {"published": ["E3*E4"]}
QUADRUPLE_GF = {"published": "(1 - L*M*N*P)/((1-L*P)(1-M*P)(1-N*P)(1-L*M)(1-L*N)(1-M*N))"}
QUADRUPLE_MODEL_GF = "1/((1-E1)(1-E2)(1-E5)(1-E6)) * (1/(1-E3) + E4/(1-E4))"

# (a, b, c, d, e, f, g, h, i, t)
MAGIC_COUPLINGS = [
    ("E1", (0, 0, 1, 0, 1, 0, 1, 0, 0, 1)),
    ("E2", (0, 1, 0, 0, 0, 1, 1, 0, 0, 1)),
    ("E3", (0, 0, 1, 1, 0, 0, 0, 1, 0, 1)),
    ("E4", (1, 0, 0, 0, 0, 1, 0, 1, 0, 1)),
    ("E5", (0, 1, 0, 1, 0, 0, 0, 0, 1, 1)),
    ("E6", (1, 0, 0, 0, 1, 0, 0, 0, 1, 1)),
]
MAGIC_RELATIONS = [("E1*E4*E5", "E2*E3*E6")]
MAGIC_FORBIDDEN = {"published": ["E1*E4*E5"]}
MAGIC_GF = {
    "published": "1/((1-E2)(1-E3)(1-E6)) * (1/((1-E1)(1-E4)) + E5/((1-E1)(1-E5)) + E4*E5/((1-E4)(1-E5)))"
}

SU2_GF = {"published": "1/((1-L*M)(1-L*N)(1-M*N))"}
