"""Independent oracles: dense linear algebra and monomial combinatorics.

Nothing here calls the Groebner engine.
"""

from itertools import combinations, product

import sympy

from evolab.groebner import ModuleElement


def monomials_up_to(n, D):
    return [e for e in product(range(D + 1), repeat=n) if sum(e) <= D]


def brute_force_syzygies(gens, D):
    """Basis of {(a_i) : deg a_i <= D, sum a_i g_i = 0} by a rational nullspace."""
    ring = gens[0].ring
    n = ring.nvars
    mons = monomials_up_to(n, D)
    cols = [(i, m) for i in range(len(gens)) for m in mons]
    rows = {}
    entries = {}
    for j, (i, m) in enumerate(cols):
        for e, c in gens[i].terms.items():
            key = tuple(a + b for a, b in zip(e, m))
            r = rows.setdefault(key, len(rows))
            entries[(r, j)] = sympy.Rational(c.numerator, c.denominator)
    A = sympy.zeros(len(rows), len(cols))
    for (r, j), c in entries.items():
        A[r, j] = c
    out = []
    for v in A.nullspace():
        comps = [dict() for _ in gens]
        for j, c in enumerate(v):
            if c != 0:
                i, m = cols[j]
                comps[i][m] = ring.field.convert(sympy_to_fraction(c))
        out.append(ModuleElement([ring.from_dict(t) for t in comps]))
    return out


def sympy_to_fraction(c):
    from fractions import Fraction

    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_minimal_primes(gens, n):
    """Minimal vertex covers of the generators' supports (as frozensets)."""
    covers = []
    for k in range(n + 1):
        for S in combinations(range(n), k):
            S = frozenset(S)
            if any(c <= S for c in covers):
                continue
            if all(any(g[i] for i in S) for g in gens):
                covers.append(S)
    return covers


def localize(e, S):
    """Set the variables outside S to 1."""
    return tuple(a if i in S else 0 for i, a in enumerate(e))


def monomial_power_gens(gens, d, n):
    out = {(0,) * n}
    for _ in range(d):
        out = {tuple(a + b for a, b in zip(x, g)) for x in out for g in gens}
    return out


def in_symbolic_power_monomial(m, gens, d, n):
    """m ∈ I^(d) iff m ∈ I^d R_P for every minimal prime P (monomial localization)."""
    Id = monomial_power_gens(gens, d, n)
    for S in monomial_minimal_primes(gens, n):
        mm = localize(m, S)
        if not any(divides(localize(g, S), mm) for g in Id):
            return False
    return True
