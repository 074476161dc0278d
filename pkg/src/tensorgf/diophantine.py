"""Homogeneous linear Diophantine systems over non-negative integers.

Systems are always stored as equalities ``A x = 0``; inequalities are turned
into equalities by :func:`slack_closure`.  The Hilbert basis uses the
Contejean-Devie completion with componentwise-domination pruning.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterator, Mapping, Sequence

from .algebra import UsageError, _num

Form = Mapping[str, int]


@dataclass(frozen=True)
class LinearSystem:
    names: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    notes: tuple[str, ...] = ()
    free: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        rows = tuple(tuple(int(a) for a in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "free", frozenset(self.free))
        notes = tuple(self.notes) or ("",) * len(rows)
        object.__setattr__(self, "notes", notes)
        if len(set(self.names)) != len(self.names):
            raise UsageError("duplicate variable names")
        for r in rows:
            if len(r) != len(self.names):
                raise UsageError("row length differs from the number of variables")
        if len(notes) != len(rows):
            raise UsageError("one provenance note per row is required")
        used = {j for r in rows for j, a in enumerate(r) if a}
        for j, name in enumerate(self.names):
            if j not in used and name not in self.free:
                raise UsageError(f"variable {name!r} is in no row and not flagged free")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r}") from None

    def residual(self, x: Sequence) -> tuple:
        return tuple(sum(a * b for a, b in zip(r, x)) for r in self.rows)

    def satisfied_by(self, x: Sequence) -> bool:
        return all(v == 0 for v in self.residual(x))

    def rank(self) -> int:
        return len(_rref([list(map(Fraction, r)) for r in self.rows], range(self.nvars))[1])

    def to_dict(self) -> dict:
        return {
            "variables": list(self.names),
            "rows": [list(r) for r in self.rows],
            "notes": list(self.notes),
            "free": sorted(self.free),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> LinearSystem:
        return cls(tuple(d["variables"]), tuple(map(tuple, d["rows"])), tuple(d.get("notes", ())), frozenset(d.get("free", ())))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = []
        for r, note in zip(self.rows, self.notes):
            lhs = format_form({n: a for n, a in zip(self.names, r) if a})
            lines.append(f"{lhs} = 0" + (f"    # {note}" if note else ""))
        return "\n".join(lines)


def format_form(form: Form) -> str:
    out = []
    for name, a in form.items():
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        body = name if mag == 1 else f"{mag}*{name}"
        if not out:
            out.append(("-" if a < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out) or "0"


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([A-Za-z_][A-Za-z_0-9]*)?")


def parse_form(text: str) -> tuple[dict, str]:
    """Parse ``"lam1 - n12 >= 0"`` into ({'lam1': 1, 'n12': -1}, '>=').

    Both sides may carry terms; a nonzero constant is a usage error because
    the systems are homogeneous.
    """
    for rel in (">=", "<=", "="):
        if rel in text:
            lhs, rhs = text.split(rel, 1)
            break
    else:
        raise UsageError(f"no relation (>=, <=, =) in {text!r}")
    form: dict = {}
    for side, sgn in ((lhs, 1), (rhs, -1)):
        pos = 0
        side = side.strip()
        if not side:
            raise UsageError(f"empty side in {text!r}")
        while pos < len(side):
            m = _TERM.match(side, pos)
            if not m or m.end() == pos:
                raise UsageError(f"cannot parse {side[pos:]!r} in {text!r}")
            s, coef, name = m.groups()
            c = int(coef) if coef else 1
            if s == "-":
                c = -c
            if name is None:
                if coef is None:
                    raise UsageError(f"dangling sign in {text!r}")
                if c != 0:
                    raise UsageError(f"non-homogeneous form {text!r}")
            else:
                form[name] = form.get(name, 0) + sgn * c
            pos = m.end()
    if rel == "<=":
        form = {k: -v for k, v in form.items()}
        rel = ">="
    return form, rel


def slack_closure(
    inequalities: Sequence,
    equalities: Sequence = (),
    names: Sequence[str] = (),
    slack_prefix: str = "a",
    notes: Sequence[str] = (),
) -> LinearSystem:
    """Turn ``form >= 0`` rows into ``form - slack = 0`` with one new slack each.

    Forms are dicts ``{name: coeff}`` or strings like ``"lam1 - n12 >= 0"``.
    A key ``1`` (or the string constant) marks an affine term and is rejected
    unless zero.  Equalities pass through verbatim.
    """
    ineqs, eqs = [], []
    for f in inequalities:
        if isinstance(f, str):
            form, rel = parse_form(f)
            (eqs if rel == "=" else ineqs).append(form)
        else:
            ineqs.append(dict(f))
    for f in equalities:
        if isinstance(f, str):
            form, rel = parse_form(f)
            if rel != "=":
                raise UsageError(f"{f!r} is not an equality")
            eqs.append(form)
        else:
            eqs.append(dict(f))
    for form in ineqs + eqs:
        if form.get(1, 0) or form.get("1", 0):
            raise UsageError(f"non-homogeneous form {form}")
        form.pop(1, None)
        form.pop("1", None)
    var_names = list(names)
    for form in ineqs + eqs:
        for n in form:
            if n not in var_names:
                var_names.append(n)
    slacks = []
    k = 1
    for _ in ineqs:
        while f"{slack_prefix}{k}" in var_names:
            k += 1
        slacks.append(f"{slack_prefix}{k}")
        var_names.append(f"{slack_prefix}{k}")
        k += 1
    notes = list(notes)
    rows, row_notes = [], []
    for i, form in enumerate(ineqs):
        row = [form.get(n, 0) for n in var_names]
        row[var_names.index(slacks[i])] = -1
        rows.append(row)
        base = notes[i] if i < len(notes) and notes[i] else format_form(form) + " >= 0"
        row_notes.append(f"{base} [slack {slacks[i]}]")
    for i, form in enumerate(eqs):
        rows.append([form.get(n, 0) for n in var_names])
        j = len(ineqs) + i
        row_notes.append(notes[j] if j < len(notes) and notes[j] else format_form(form) + " = 0")
    used = {n for form in ineqs + eqs for n, a in form.items() if a}
    free = {n for n in var_names if n not in used and n not in slacks}
    return LinearSystem(tuple(var_names), tuple(map(tuple, rows)), tuple(row_notes), frozenset(free))


@dataclass(frozen=True)
class HilbertBasis:
    system: LinearSystem
    solutions: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def project(self, names: Sequence[str]) -> list[tuple[int, ...]]:
        idx = [self.system.index(n) for n in names]
        return [tuple(s[i] for i in idx) for s in self.solutions]

    def to_dict(self) -> dict:
        return {"variables": list(self.system.names), "solutions": [list(s) for s in self.solutions]}


def _dominates(b: Sequence, q: Sequence) -> bool:
    return all(x <= y for x, y in zip(b, q))


def hilbert_basis(sys: LinearSystem, method: str = "cuts") -> HilbertBasis:
    """Minimal generating set of {x in N^n : A x = 0}.

    ``method="cuts"`` (default) eliminates unit-pivot variables and then
    intersects the orthant with one half-space at a time (Pottier's
    algorithm).  ``method="completion"`` is the Contejean-Devie frontier
    search on the raw system; it is slower but shares no code with the
    default, so the two are used to check each other.
    """
    if method == "completion":
        sols = _completion_basis(sys)
    elif method == "cuts":
        sols = _cut_basis(sys)
    else:
        raise UsageError(f"unknown Hilbert basis method {method!r}")
    return HilbertBasis(sys, tuple(sorted(sols)))


def _completion_basis(sys: LinearSystem) -> list[tuple[int, ...]]:
    n = sys.nvars
    cols = [tuple(r[j] for r in sys.rows) for j in range(n)]
    basis: list[tuple[int, ...]] = []
    frontier: dict = {}
    for j in range(n):
        e = [0] * n
        e[j] = 1
        frontier[tuple(e)] = cols[j]
    zero = tuple(0 for _ in sys.rows)
    while frontier:
        for p, d in frontier.items():
            if d == zero and not any(_dominates(b, p) for b in basis):
                basis.append(p)
        nxt: dict = {}
        for p, d in frontier.items():
            if d == zero:
                continue
            for j in range(n):
                cj = cols[j]
                if sum(a * b for a, b in zip(d, cj)) >= 0:
                    continue
                q = p[:j] + (p[j] + 1,) + p[j + 1:]
                if q in nxt:
                    continue
                if any(_dominates(b, q) for b in basis):
                    continue
                nxt[q] = tuple(a + b for a, b in zip(d, cj))
        frontier = nxt
    return basis


def _eliminate_units(sys: LinearSystem):
    """Solve rows for variables with a +-1 coefficient.

    Returns (kept, images, rest): the surviving variable indices, an integer
    row over ``kept`` for every original variable, and the equations (over
    ``kept``) that had no unit pivot left.
    """
    n = sys.nvars
    rows = [list(r) for r in sys.rows if any(r)]
    # image[j]: dict kept-var -> coeff, expressing x_j
    image = {j: {j: 1} for j in range(n)}
    eliminated = set()
    while True:
        pick = None
        for r in rows:
            for j, a in enumerate(r):
                if abs(a) == 1 and j not in eliminated:
                    pick = (r, j)
                    break
            if pick:
                break
        if pick is None:
            break
        r, p = pick
        a = r[p]
        expr = {j: -a * c for j, c in enumerate(r) if c and j != p}
        rows.remove(r)
        for other in rows:
            c = other[p]
            if c:
                other[p] = 0
                for j, v in expr.items():
                    other[j] += c * v
        for j, img in image.items():
            c = img.pop(p, 0)
            if c:
                for k, v in expr.items():
                    img[k] = img.get(k, 0) + c * v
                    if img[k] == 0:
                        del img[k]
        eliminated.add(p)
        rows = [r for r in rows if any(r)]
    kept = [j for j in range(n) if j not in eliminated]
    pos = {j: i for i, j in enumerate(kept)}
    images = [tuple(image[j].get(k, 0) for k in kept) for j in range(n)]
    rest = [tuple(r[k] for k in kept) for r in rows]
    assert all(set(image[j]) <= set(pos) for j in range(n))
    return kept, images, rest


def _reducible(z, lz, side, pool) -> bool:
    # pool entries: (ext, lam); z reducible if z - w stays in the cone
    for w, lw in pool:
        if w is z:
            continue
        if side > 0 and not 0 <= lw <= lz:
            continue
        if side < 0 and not lz <= lw <= 0:
            continue
        if side == 0 and lw != 0:
            continue
        if all(a >= b for a, b in zip(z, w)):
            return True
    return False


def _cut(elems: list, form) -> list:
    """Hilbert basis of C & {form >= 0} from the Hilbert basis of C.

    Elements are extended vectors (coordinates followed by the values of
    the forms cut so far), so membership of a difference in C is a plain
    componentwise test.
    """
    lam = lambda v: sum(a * b for a, b in zip(form, v))  # noqa: E731
    tagged = [(e, lam(e)) for e in elems]
    if all(l >= 0 for _, l in tagged):
        return [e + (l,) for e, l in tagged]
    pos = [t for t in tagged if t[1] > 0]
    neg = [t for t in tagged if t[1] < 0]
    zero = [t for t in tagged if t[1] == 0]
    new_pos, new_neg = list(pos), list(neg)
    seen = {e for e, _ in tagged}
    while new_pos or new_neg:
        cands = {}
        for x in pos:
            for y in new_neg:
                z = tuple(a + b for a, b in zip(x[0], y[0]))
                cands.setdefault(z, x[1] + y[1])
        for x in new_pos:
            for y in neg:
                if any(y is t for t in new_neg):
                    continue
                z = tuple(a + b for a, b in zip(x[0], y[0]))
                cands.setdefault(z, x[1] + y[1])
        new_pos, new_neg = [], []
        for z in sorted(cands, key=sum):
            if z in seen:
                continue
            lz = cands[z]
            if lz > 0:
                if _reducible(z, lz, 1, pos + zero):
                    continue
                t = (z, lz)
                pos.append(t)
                new_pos.append(t)
            elif lz < 0:
                if _reducible(z, lz, -1, neg + zero):
                    continue
                t = (z, lz)
                neg.append(t)
                new_neg.append(t)
            else:
                if _reducible(z, 0, 0, zero):
                    continue
                zero.append((z, 0))
            seen.add(z)
    keep = pos + zero
    out = []
    for z, lz in keep:
        if not _reducible(z, lz, 1, keep):
            out.append(z + (lz,))
    return out


def _cut_basis(sys: LinearSystem) -> list[tuple[int, ...]]:
    kept, images, rest = _eliminate_units(sys)
    d = len(kept)
    if d == 0:
        return []
    elems = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        elems.append(tuple(e))
    forms = []
    for img in images:
        if sum(1 for c in img if c) > 1 or any(c < 0 for c in img):
            forms.append(img)
    for r in rest:
        forms.append(r)
        forms.append(tuple(-c for c in r))
    for f in forms:
        if not elems:
            return []
        ext = tuple(f) + (0,) * (len(elems[0]) - d)
        elems = _cut(elems, ext)
    out = set()
    for e in elems:
        y = e[:d]
        x = tuple(sum(a * b for a, b in zip(img, y)) for img in images)
        out.add(x)
    return [x for x in out if any(x)]


def decompose(x: Sequence[int], basis: Sequence[Sequence[int]]) -> list[int] | None:
    """Write x as a non-negative integer combination of basis vectors, or None."""
    basis = [tuple(b) for b in basis if any(b)]

    def rec(rest, start):
        if not any(rest):
            return []
        for k in range(start, len(basis)):
            b = basis[k]
            if _dominates(b, rest):
                sub = rec(tuple(r - c for r, c in zip(rest, b)), k)
                if sub is not None:
                    return [k] + sub
        return None

    picks = rec(tuple(x), 0)
    if picks is None:
        return None
    coeffs = [0] * len(basis)
    for k in picks:
        coeffs[k] += 1
    return coeffs


# -- bounded enumeration ---------------------------------------------------


def _propagate(rows, lo, hi) -> bool:
    """Tighten integer bounds in place; False when infeasible.  None = +inf."""
    changed = True
    rounds = 0
    while changed and rounds < 200:
        changed = False
        rounds += 1
        for r in rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            for j, aj in nz:
                smin = 0
                smax = 0
                for k, a in nz:
                    if k == j:
                        continue
                    if a > 0:
                        smin = None if smin is None else smin + a * lo[k]
                        smax = None if smax is None or hi[k] is None else smax + a * hi[k]
                    else:
                        smax = None if smax is None else smax + a * lo[k]
                        smin = None if smin is None or hi[k] is None else smin + a * hi[k]
                # aj * y_j = -(sum of others) in [-smax, -smin]
                if aj > 0:
                    new_hi = None if smin is None else floor(Fraction(-smin, aj))
                    new_lo = None if smax is None else ceil(Fraction(-smax, aj))
                else:
                    new_hi = None if smax is None else floor(Fraction(-smax, aj))
                    new_lo = None if smin is None else ceil(Fraction(-smin, aj))
                if new_lo is not None and new_lo > lo[j]:
                    lo[j] = new_lo
                    changed = True
                if new_hi is not None and (hi[j] is None or new_hi < hi[j]):
                    hi[j] = new_hi
                    changed = True
                if hi[j] is not None and lo[j] > hi[j]:
                    return False
    return True


def _rref(mat, col_order):
    """Row-reduce a Fraction matrix choosing pivots in col_order; returns (mat, pivots)."""
    mat = [row[:] for row in mat]
    pivots = []
    r = 0
    for c in col_order:
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def bounds(sys: LinearSystem, fixed: Mapping[str, int]):
    """Interval bounds for every variable given the fixed assignment (None if infeasible)."""
    n = sys.nvars
    lo = [0] * n
    hi: list = [None] * n
    for name, v in fixed.items():
        j = sys.index(name)
        if v < 0:
            return None
        lo[j] = hi[j] = int(v)
    if not _propagate(sys.rows, lo, hi):
        return None
    return lo, hi


def enumerate_solutions(sys: LinearSystem, fixed: Mapping[str, int]) -> Iterator[tuple[int, ...]]:
    """Yield every non-negative integer solution with the given variables fixed.

    Raises UsageError naming a variable whose range stays unbounded.
    """
    b = bounds(sys, fixed)
    if b is None:
        return
    lo, hi = b
    for j, h in enumerate(hi):
        if h is None:
            raise UsageError(f"variable {sys.names[j]!r} is unbounded once {sorted(fixed)} are fixed")
    n = sys.nvars
    unknown = [j for j in range(n) if lo[j] != hi[j]]
    known = {j: lo[j] for j in range(n) if lo[j] == hi[j]}
    # reduced system over the unknowns: A_U y_U = -A_K y_K
    mat = []
    for r in sys.rows:
        rhs = -sum(r[j] * v for j, v in known.items())
        row = [Fraction(r[j]) for j in unknown] + [Fraction(rhs)]
        if any(row[:-1]):
            mat.append(row)
        elif rhs != 0:
            return
    order = sorted(range(len(unknown)), key=lambda k: -(hi[unknown[k]] - lo[unknown[k]]))
    red, pivots = _rref(mat, order) if mat else ([], [])
    for row in red[len(pivots):]:
        if row[-1] != 0:
            return
    pivot_cols = {c for _, c in pivots}
    free = [k for k in range(len(unknown)) if k not in pivot_cols]
    ranges = [range(lo[unknown[k]], hi[unknown[k]] + 1) for k in free]
    base = [0] * n
    for j, v in known.items():
        base[j] = v
    for values in itertools.product(*ranges):
        x = base[:]
        for k, v in zip(free, values):
            x[unknown[k]] = v
        ok = True
        for r, c in pivots:
            row = red[r]
            val = row[-1] - sum(row[k] * v for k, v in zip(free, values))
            if val.denominator != 1:
                ok = False
                break
            j = unknown[c]
            v = int(val)
            if v < lo[j] or v > hi[j]:
                ok = False
                break
            x[j] = v
        if ok:
            yield tuple(x)


def count_solutions(sys: LinearSystem, fixed: Mapping[str, int]) -> int:
    return sum(1 for _ in enumerate_solutions(sys, fixed))


@dataclass(frozen=True)
class BasisVector:
    names: tuple[str, ...]
    entries: tuple
    free_var: str

    def __getitem__(self, name: str):
        return self.entries[self.names.index(name)]

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.entries))


def vector_basis(sys: LinearSystem, free_vars: Sequence[str]) -> list[BasisVector]:
    """One rational solution per free variable (that variable 1, other free ones 0)."""
    free_idx = [sys.index(v) for v in free_vars]
    if len(set(free_idx)) != len(free_idx):
        raise UsageError("free variables must be distinct")
    dep = [j for j in range(sys.nvars) if j not in free_idx]
    mat = [[Fraction(r[j]) for j in dep] + [Fraction(0)] * len(free_idx) for r in sys.rows]
    for row, r in zip(mat, sys.rows):
        for k, j in enumerate(free_idx):
            row[len(dep) + k] = Fraction(-r[j])
    red, pivots = _rref(mat, range(len(dep)))
    if len(pivots) != len(dep) or any(c >= len(dep) for _, c in pivots):
        raise UsageError(
            f"free variables {list(free_vars)} do not determine the others uniquely "
            f"(need {sys.nvars - sys.rank()} free variables with a nonsingular complement)"
        )
    for row in red[len(pivots):]:
        if any(row):
            raise UsageError("inconsistent system")
    out = []
    for k, j in enumerate(free_idx):
        x = [Fraction(0)] * sys.nvars
        x[j] = Fraction(1)
        for r, c in pivots:
            x[dep[c]] = red[r][len(dep) + k]
        out.append(BasisVector(sys.names, tuple(_num(v) for v in x), sys.names[j]))
    return out
