"""Brute-force oracles that share no code with the package.

Multiplicities come from the Racah-Speiser algorithm fed with weight
multiplicities counted as semistandard tableaux; dimensions from the Weyl
formula; Hilbert bases and magic squares by plain enumeration.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache


def partition(dynkin, N):
    """Dynkin labels of su(N) -> partition with N parts (last one 0)."""
    return tuple(sum(dynkin[i:]) for i in range(N - 1)) + (0,)


def weyl_dim_su(dynkin):
    N = len(dynkin) + 1
    out = Fraction(1)
    for i in range(N):
        for j in range(i + 1, N):
            out *= Fraction(sum(a + 1 for a in dynkin[i:j]), j - i)
    return int(out)


def weyl_dim_sp4(dynkin):
    a, b = dynkin
    return (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) // 6


@lru_cache(maxsize=None)
def ssyt_contents(shape, N):
    """Counter of contents (how many 1s, 2s, ..., Ns) over all SSYT of shape."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    out = Counter()
    fill = {}

    def rec(k):
        if k == len(cells):
            content = [0] * N
            for v in fill.values():
                content[v - 1] += 1
            out[tuple(content)] += 1
            return
        r, c = cells[k]
        lo = 1
        if c > 0:
            lo = max(lo, fill[(r, c - 1)])
        if r > 0:
            lo = max(lo, fill[(r - 1, c)] + 1)
        for v in range(lo, N + 1):
            fill[(r, c)] = v
            rec(k + 1)
        fill.pop((r, c), None)

    rec(0)
    return out


def racah_speiser_su(lam, mu):
    """Counter {nu Dynkin: multiplicity} for lam x mu in su(N)."""
    N = len(lam) + 1
    shape = tuple(x for x in partition(lam, N) if x)
    m = partition(mu, N)
    rho = tuple(range(N - 1, -1, -1))
    out = Counter()
    for content, mult in ssyt_contents(shape, N).items():
        x = [a + b + r for a, b, r in zip(m, content, rho)]
        if len(set(x)) < N:
            continue
        # sign of the sorting permutation
        sign = 1
        y = list(x)
        for i in range(N):
            for j in range(N - 1 - i):
                if y[j] < y[j + 1]:
                    y[j], y[j + 1] = y[j + 1], y[j]
                    sign = -sign
        nu = [a - r for a, r in zip(y, rho)]
        out[tuple(nu[i] - nu[i + 1] for i in range(N - 1))] += sign * mult
    return Counter({k: v for k, v in out.items() if v})


def minimal_solutions(rows, nvars, box):
    """All minimal non-zero non-negative solutions with entries <= box."""
    sols = []
    for x in itertools.product(range(box + 1), repeat=nvars):
        if any(x) and all(sum(a * b for a, b in zip(r, x)) == 0 for r in rows):
            sols.append(x)
    sols.sort(key=sum)
    minimal = []
    for s in sols:
        if not any(all(a <= b for a, b in zip(m, s)) for m in minimal):
            minimal.append(s)
    return set(minimal)


def magic_square_count(t):
    """3x3 non-negative integer matrices with all row and column sums t."""
    count = 0
    for a, b, d, e in itertools.product(range(t + 1), repeat=4):
        c = t - a - b
        f = t - d - e
        g = t - a - d
        h = t - b - e
        i = t - g - h
        if min(c, f, g, h, i) >= 0 and c + f + i == t:
            count += 1
    return count


def standard_count(forbidden, images, degree):
    """Monomials prod e_i^k_i with sum k_i images[i] = degree avoiding all forbidden."""
    n = len(images)
    bound = max(degree) + 1
    count = 0
    for k in itertools.product(range(bound), repeat=n):
        d = tuple(sum(k[i] * images[i][j] for i in range(n)) for j in range(len(degree)))
        if d != tuple(degree):
            continue
        if any(all(a <= b for a, b in zip(f, k)) for f in forbidden):
            continue
        count += 1
    return count


def coefficient_by_product(factors, numerator, target):
    """Coefficient of target in numerator / prod(1 - m) by direct enumeration."""
    total = 0
    ranges = []
    for m in factors:
        steps = [t // x for t, x in zip(target, m) if x > 0]
        ranges.append(range(min(steps) + 1 if steps else 1))
    for ks in itertools.product(*ranges):
        base = tuple(sum(k * m[j] for k, m in zip(ks, factors)) for j in range(len(target)))
        for e, c in numerator.items():
            if tuple(a + b for a, b in zip(base, e)) == tuple(target):
                total += c
    return total


