"""Algebra-specific coupling descriptions: LR tableaux for su(N), BZ
triangles for su(3) and diamonds for sp(4), plus direct multiplicities."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import UsageError
from .diophantine import LinearSystem, count_solutions, enumerate_solutions, slack_closure


@dataclass(frozen=True)
class Weight:
    algebra: str
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if self.rank != len(self.labels):
            raise UsageError(f"{self.algebra} weights need {self.rank} Dynkin labels, got {self.labels}")
        if any(x < 0 for x in self.labels):
            raise UsageError(f"Dynkin labels must be non-negative: {self.labels}")

    @property
    def rank(self) -> int:
        return algebra_rank(self.algebra)

    def conjugate(self) -> Weight:
        """Highest weight of the conjugate representation (label reversal for su(N))."""
        if self.algebra == "sp4":
            return self
        return Weight(self.algebra, self.labels[::-1])

    def __str__(self):
        return f"{self.algebra}:({','.join(map(str, self.labels))})"


def algebra_rank(algebra: str) -> int:
    if algebra == "sp4":
        return 2
    m = re.fullmatch(r"su(\d+)", algebra)
    if m and int(m.group(1)) >= 2:
        return int(m.group(1)) - 1
    raise UsageError(f"unsupported algebra {algebra!r} (expected su2, su3, ..., or sp4)")


def su_size(algebra: str) -> int:
    m = re.fullmatch(r"su(\d+)", algebra)
    if not m:
        raise UsageError(f"{algebra!r} is not an su(N) algebra")
    return int(m.group(1))


def parse_weight(text: str, algebra: str | None = None) -> Weight:
    """Accept ``su3:(1,1)``, ``sp4:(2,0)`` or bare ``1,1`` with an algebra given."""
    text = text.strip()
    m = re.fullmatch(r"([a-z]+\d+)\s*:\s*\(?(.*?)\)?", text)
    if m:
        alg, body = m.group(1), m.group(2)
        if algebra is not None and alg != algebra:
            raise UsageError(f"weight {text!r} is not a {algebra} weight")
        algebra = alg
    else:
        body = text.strip("()")
    if algebra is None:
        raise UsageError(f"weight {text!r} names no algebra")
    if not re.fullmatch(r"\s*\d+(\s*,\s*\d+)*\s*", body):
        good = re.match(r"\s*(\d+\s*(,\s*\d+\s*)*)?(,\s*)?", body).end()
        pos = text.find(body) + good
        raise UsageError(
            f"malformed weight {text!r} at position {pos}: expected comma-separated non-negative integers"
        )
    return Weight(algebra, tuple(int(x) for x in body.split(",")))


def _same_algebra(*ws: Weight) -> str:
    algs = {w.algebra for w in ws}
    if len(algs) != 1:
        raise UsageError(f"weights belong to different algebras: {sorted(algs)}")
    return algs.pop()


@dataclass(frozen=True)
class CouplingSystem:
    """A homogeneous system together with the weight values to fix."""

    system: LinearSystem
    fixed: Mapping[str, int]

    def count(self) -> int:
        return count_solutions(self.system, self.fixed)

    def solutions(self):
        return enumerate_solutions(self.system, self.fixed)


# -- su(N) Littlewood-Richardson ----------------------------------------


def n_name(i: int, j: int, N: int) -> str:
    return f"n{i}{j}" if N <= 9 else f"n{i}_{j}"


def n_indices(N: int) -> list[tuple[int, int]]:
    """(i, j) with 1 <= i <= N-1 and i <= j <= N: i is the filling, j the row."""
    return [(i, j) for i in range(1, N) for j in range(i, N + 1)]


def lr_inequalities(N: int) -> list[dict]:
    """The LR conditions as forms ``>= 0`` over lam_k and n_ij."""
    lam = [f"lam{k}" for k in range(1, N)]
    n = lambda i, j: n_name(i, j, N)  # noqa: E731
    forms = []
    for j in range(2, N + 1):
        for k in range(1, j):
            f: dict = {lam[j - 2]: 1}
            for i in range(1, k):
                f[n(i, j - 1)] = f.get(n(i, j - 1), 0) + 1
            for i in range(1, k + 1):
                f[n(i, j)] = f.get(n(i, j), 0) - 1
            forms.append(f)
    for i in range(2, N):
        for k in range(i, N + 1):
            f = {}
            for j in range(i, k + 1):
                f[n(i - 1, j - 1)] = f.get(n(i - 1, j - 1), 0) + 1
                f[n(i, j)] = f.get(n(i, j), 0) - 1
            forms.append(f)
    return forms


def lr_weight_equations(N: int) -> list[dict]:
    """mu and nu as linear functions of lam and n, written as forms ``= 0``."""
    n = lambda i, j: n_name(i, j, N)  # noqa: E731
    eqs = []
    for i in range(1, N):
        f = {n(i, j): 1 for j in range(i, N + 1)}
        for j in range(i, N):
            f[f"mu{j}"] = f.get(f"mu{j}", 0) - 1
        eqs.append(f)
    for j in range(1, N):
        f: dict = {f"nu{j}": 1, f"lam{j}": -1}
        for i in range(1, N):
            if i <= j + 1:
                f[n(i, j + 1)] = f.get(n(i, j + 1), 0) + 1
        for i in range(1, min(j, N - 1) + 1):
            f[n(i, j)] = f.get(n(i, j), 0) - 1
        eqs.append({k: v for k, v in f.items() if v})
    return eqs


def lr_system(N: int) -> LinearSystem:
    """LR system over (lam, mu, nu, n_ij, slacks); no weights fixed."""
    if N < 2:
        raise UsageError("su(N) needs N >= 2")
    names = (
        [f"lam{k}" for k in range(1, N)]
        + [f"mu{k}" for k in range(1, N)]
        + [f"nu{k}" for k in range(1, N)]
        + [n_name(i, j, N) for i, j in n_indices(N)]
    )
    return slack_closure(lr_inequalities(N), lr_weight_equations(N), names=names, slack_prefix="a")


def _fix(prefix: str, w: Weight) -> dict:
    return {f"{prefix}{k}": v for k, v in enumerate(w.labels, 1)}


def lr_constraints(N: int, lam: Weight, mu: Weight, nu: Weight) -> CouplingSystem:
    alg = _same_algebra(lam, mu, nu)
    if alg != f"su{N}":
        raise UsageError(f"weights are {alg} weights, not su{N}")
    fixed = {**_fix("lam", lam), **_fix("mu", mu), **_fix("nu", nu)}
    return CouplingSystem(lr_system(N), fixed)


@dataclass(frozen=True)
class LRTableau:
    N: int
    lam: tuple[int, ...]
    n: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def make(cls, N: int, lam: Sequence[int], n: Mapping[tuple[int, int], int]) -> LRTableau:
        full = {ij: int(n.get(ij, 0)) for ij in n_indices(N)}
        extra = set(n) - set(full)
        if extra:
            raise UsageError(f"no entries n_ij for {sorted(extra)} in su({N})")
        return cls(N, tuple(int(x) for x in lam), tuple(sorted(full.items())))

    @classmethod
    def empty(cls, N: int) -> LRTableau:
        return cls.make(N, (0,) * (N - 1), {})

    @property
    def entries(self) -> dict:
        return dict(self.n)

    def _values(self) -> dict:
        vals = {f"lam{k}": v for k, v in enumerate(self.lam, 1)}
        vals.update({n_name(i, j, self.N): v for (i, j), v in self.n})
        return vals

    def is_valid(self) -> bool:
        vals = self._values()
        if any(v < 0 for v in vals.values()):
            return False
        for f in lr_inequalities(self.N):
            if sum(c * vals.get(k, 0) for k, c in f.items()) < 0:
                return False
        return True

    @property
    def mu(self) -> tuple[int, ...]:
        e = self.entries
        rows = [sum(e[(i, j)] for j in range(i, self.N + 1)) for i in range(1, self.N)] + [0]
        return tuple(rows[k] - rows[k + 1] for k in range(self.N - 1))

    @property
    def nu(self) -> tuple[int, ...]:
        e = self.entries
        N = self.N
        out = []
        for j in range(1, N):
            v = self.lam[j - 1]
            v -= sum(e[(i, j + 1)] for i in range(1, N) if i <= j + 1)
            v += sum(e[(i, j)] for i in range(1, min(j, N - 1) + 1))
            out.append(v)
        return tuple(out)

    def rows(self) -> list[str]:
        """Box layout: blanks for the lam boxes, then the filling digits."""
        e = self.entries
        out = []
        for j in range(1, self.N + 1):
            blanks = sum(self.lam[j - 1:]) if j <= self.N - 1 else 0
            row = " " * blanks + "".join(str(i) * e.get((i, j), 0) for i in range(1, self.N))
            out.append(row)
        while out and not out[-1]:
            out.pop()
        return out

    def to_text(self) -> str:
        return "\n".join(f"|{r}|" for r in self.rows())


def stretched_product(t1: LRTableau, t2: LRTableau) -> LRTableau:
    if t1.N != t2.N:
        raise UsageError("stretched product needs tableaux of the same su(N)")
    e1, e2 = t1.entries, t2.entries
    return LRTableau.make(
        t1.N,
        tuple(a + b for a, b in zip(t1.lam, t2.lam)),
        {ij: e1[ij] + e2[ij] for ij in e1},
    )


def lr_tableaux(lam: Weight, mu: Weight, nu: Weight | None = None) -> list[LRTableau]:
    """All LR tableaux for lam x mu (restricted to the component nu if given)."""
    N = su_size(lam.algebra)
    _same_algebra(lam, mu, *(nu and [nu] or []))
    sys = lr_system(N)
    fixed = {**_fix("lam", lam), **_fix("mu", mu)}
    if nu is not None:
        fixed.update(_fix("nu", nu))
    idx = {ij: sys.index(n_name(*ij, N)) for ij in n_indices(N)}
    out = []
    for x in enumerate_solutions(sys, fixed):
        out.append(LRTableau.make(N, lam.labels, {ij: x[k] for ij, k in idx.items()}))
    return out


def lr_decompose(lam: Weight, mu: Weight) -> Counter:
    """Multiset of irreducible components of lam x mu (Weight -> multiplicity)."""
    alg = _same_algebra(lam, mu)
    return Counter(Weight(alg, t.nu) for t in lr_tableaux(lam, mu))


# -- su(3) BZ triangles --------------------------------------------------

TRIANGLE_ENTRIES = ("m13", "n12", "l23", "m23", "m12", "n13", "l12", "n23", "l13")


def bz_triangle_system() -> LinearSystem:
    """Label equations and hexagon conditions over (lam, mu, zeta, l, m, n)."""
    names = ("lam1", "lam2", "mu1", "mu2", "zeta1", "zeta2",
             "l12", "l13", "l23", "m12", "m13", "m23", "n12", "n13", "n23")
    eqs = [
        "lam1 = m13 + n12", "lam2 = m23 + n13",
        "mu1 = n13 + l12", "mu2 = n23 + l13",
        "zeta1 = l13 + m12", "zeta2 = l23 + m13",
        "n12 + m23 = n23 + m12", "l12 + m23 = l23 + m12", "l12 + n23 = l23 + n12",
    ]
    return slack_closure([], eqs, names=names)


@dataclass(frozen=True)
class BZTriangleSu3:
    m13: int
    n12: int
    l23: int
    m23: int
    m12: int
    n13: int
    l12: int
    n23: int
    l13: int

    @property
    def lam(self):
        return (self.m13 + self.n12, self.m23 + self.n13)

    @property
    def mu(self):
        return (self.n13 + self.l12, self.n23 + self.l13)

    @property
    def zeta(self):
        return (self.l13 + self.m12, self.l23 + self.m13)

    def is_valid(self) -> bool:
        if any(getattr(self, k) < 0 for k in TRIANGLE_ENTRIES):
            return False
        return (
            self.n12 + self.m23 == self.n23 + self.m12
            and self.l12 + self.m23 == self.l23 + self.m12
        )

    def to_text(self) -> str:
        return (
            f"      {self.m13}\n"
            f"    {self.n12}   {self.l23}\n"
            f"  {self.m23}       {self.m12}\n"
            f"{self.n13}   {self.l12}   {self.n23}   {self.l13}"
        )


def bz_triangles(lam: Weight, mu: Weight, zeta: Weight) -> list[BZTriangleSu3]:
    """All su(3) triangles with side labels lam, mu, zeta (zeta = nu*)."""
    if _same_algebra(lam, mu, zeta) != "su3":
        raise UsageError("BZ triangles are implemented for su3 only")
    sys = bz_triangle_system()
    fixed = {"lam1": lam.labels[0], "lam2": lam.labels[1], "mu1": mu.labels[0],
             "mu2": mu.labels[1], "zeta1": zeta.labels[0], "zeta2": zeta.labels[1]}
    idx = {k: sys.index(k) for k in TRIANGLE_ENTRIES}
    return [BZTriangleSu3(**{k: x[i] for k, i in idx.items()}) for x in enumerate_solutions(sys, fixed)]


def bz_triangle_count(lam: Weight, mu: Weight, zeta: Weight) -> int:
    return len(bz_triangles(lam, mu, zeta))


# -- sp(4) ---------------------------------------------------------------

SP4_INEQUALITIES = (
    "lam1 - p >= 0",
    "lam2 - s1 >= 0",
    "lam2 - s1 - q + p >= 0",
    "lam2 - s2 - q + p >= 0",
    "mu1 - q >= 0",
    "mu1 - q - 2*s1 + 2*s2 >= 0",
    "mu1 - p - 2*s1 + 2*s2 >= 0",
    "mu2 - s2 >= 0",
)
SP4_WEIGHT_EQUATIONS = (
    "nu1 = 2*s2 - 2*s1 - 2*p + lam1 + mu1",
    "nu2 = p - q - 2*s2 + lam2 + mu2",
)
SP4_NAMES = ("lam1", "lam2", "mu1", "mu2", "nu1", "nu2", "s1", "s2", "p", "q")


def sp4_system() -> LinearSystem:
    """BZ inequalities for sp(4) with r_i = 2 s_i, closed with slacks a1..a8."""
    return slack_closure(SP4_INEQUALITIES, SP4_WEIGHT_EQUATIONS, names=SP4_NAMES, slack_prefix="a")


def sp4_constraints(lam: Weight, mu: Weight, nu: Weight) -> CouplingSystem:
    if _same_algebra(lam, mu, nu) != "sp4":
        raise UsageError("sp4_constraints needs sp4 weights")
    return CouplingSystem(sp4_system(), {**_fix("lam", lam), **_fix("mu", mu), **_fix("nu", nu)})


DIAMOND_EQUATIONS = (
    "lam1 = p + a1", "nu2 = a4 + a8",
    "lam2 = s1 + a2", "a2 + p = a3 + q",
    "mu1 = q + a5", "a3 + s1 = a4 + s2",
    "mu2 = s2 + a8", "a5 + 2*s2 = a6 + 2*s1",
    "nu1 = a1 + a7", "a6 + q = a7 + p",
)
DIAMOND_VERTICES = ("s1", "s2", "p", "q", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8")


def diamond_system() -> LinearSystem:
    names = SP4_NAMES + tuple(f"a{k}" for k in range(1, 9))
    return slack_closure([], DIAMOND_EQUATIONS, names=names)


@dataclass(frozen=True)
class SpDiamond:
    s1: int
    s2: int
    p: int
    q: int
    a1: int
    a2: int
    a3: int
    a4: int
    a5: int
    a6: int
    a7: int
    a8: int
    lam: tuple[int, int]
    mu: tuple[int, int]
    nu: tuple[int, int]

    def values(self) -> dict:
        return {k: getattr(self, k) for k in DIAMOND_VERTICES}

    def is_valid(self) -> bool:
        v = self.values()
        if any(x < 0 for x in v.values()):
            return False
        v.update(lam1=self.lam[0], lam2=self.lam[1], mu1=self.mu[0], mu2=self.mu[1],
                 nu1=self.nu[0], nu2=self.nu[1])
        sys = diamond_system()
        return sys.satisfied_by([v[n] for n in sys.names])


def sp4_diamonds(lam: Weight, mu: Weight, nu: Weight) -> list[SpDiamond]:
    if _same_algebra(lam, mu, nu) != "sp4":
        raise UsageError("diamonds are defined for sp4 weights")
    sys = diamond_system()
    fixed = {**_fix("lam", lam), **_fix("mu", mu), **_fix("nu", nu)}
    idx = {k: sys.index(k) for k in DIAMOND_VERTICES}
    return [
        SpDiamond(**{k: x[i] for k, i in idx.items()}, lam=lam.labels, mu=mu.labels, nu=nu.labels)
        for x in enumerate_solutions(sys, fixed)
    ]


# Plain-text version of the diamond figure: outer corners a6 (top), s1
# (right), a3 (bottom), q (left); the inner diamond a5, s2, a2, p; and the
# four centre points a7, a8, a4, a1.
_DIAMOND_TEMPLATE = """\
                  a6={a6}
                 /      \\
        q={q}   a5={a5}   s1={s1}
               a7={a7}
        p={p}  a1={a1}  a8={a8}  s2={s2}
                    a4={a4}
                  a2={a2}
                 \\      /
                  a3={a3}
lam=({lam1},{lam2}) mu=({mu1},{mu2}) nu=({nu1},{nu2})
lam1=p+a1 lam2=s1+a2 mu1=q+a5 mu2=s2+a8 nu1=a1+a7 nu2=a4+a8"""


def render_diamond(d: SpDiamond) -> str:
    return _DIAMOND_TEMPLATE.format(
        **d.values(), lam1=d.lam[0], lam2=d.lam[1], mu1=d.mu[0], mu2=d.mu[1], nu1=d.nu[0], nu2=d.nu[1]
    )


def parse_diamond(text: str) -> SpDiamond:
    vals = {}
    for k in DIAMOND_VERTICES:
        m = re.search(rf"(?<![a-z0-9]){k}=(\d+)(?![+\d])", text)
        if not m:
            raise UsageError(f"diamond text has no value for {k}")
        vals[k] = int(m.group(1))
    w = re.search(r"lam=\((\d+),(\d+)\) mu=\((\d+),(\d+)\) nu=\((\d+),(\d+)\)", text)
    if not w:
        raise UsageError("diamond text has no weight line")
    g = [int(x) for x in w.groups()]
    return SpDiamond(**vals, lam=(g[0], g[1]), mu=(g[2], g[3]), nu=(g[4], g[5]))


# -- dispatch ------------------------------------------------------------


def sp4_decompose(lam: Weight, mu: Weight) -> Counter:
    if _same_algebra(lam, mu) != "sp4":
        raise UsageError("sp4_decompose needs sp4 weights")
    sys = sp4_system()
    i1, i2 = sys.index("nu1"), sys.index("nu2")
    fixed = {**_fix("lam", lam), **_fix("mu", mu)}
    return Counter(Weight("sp4", (x[i1], x[i2])) for x in enumerate_solutions(sys, fixed))


def decompose(lam: Weight, mu: Weight) -> Counter:
    """Components of lam x mu with multiplicities."""
    if _same_algebra(lam, mu) == "sp4":
        return sp4_decompose(lam, mu)
    return lr_decompose(lam, mu)


def multiplicity(lam: Weight, mu: Weight, nu: Weight) -> int:
    """Multiplicity of nu in lam x mu."""
    alg = _same_algebra(lam, mu, nu)
    if alg == "sp4":
        return sp4_constraints(lam, mu, nu).count()
    N = su_size(alg)
    return lr_constraints(N, lam, mu, nu).count()
