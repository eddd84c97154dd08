"""Monomial curves, their toric ideals, and the two worked families.

The toric ideal of t -> (t^a1, ..., t^an) is found by eliminating t from
(x_i - t^ai).  Every construction is checked by substituting the
parametrization back into the generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

from .exactfield import GF, QQ
from .groebner import buchberger
from .idealcalc import Ideal, PreconditionError, minimal_generators
from .polyring import Block, GRevLex, Polynomial, Ring, Weighted


class ToricCheckError(AssertionError):
    """A generator failed to vanish on the parametrization."""


@dataclass(frozen=True)
class MonomialCurve:
    exponents: Tuple[int, ...]
    field: object = QQ
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(a) for a in self.exponents))
        if not self.exponents or any(a <= 0 for a in self.exponents):
            raise ValueError("exponents must be positive integers")
        if self.names is not None and len(self.names) != len(self.exponents):
            raise ValueError("one variable name per exponent")

    @property
    def n(self) -> int:
        return len(self.exponents)

    @cached_property
    def ring(self) -> Ring:
        names = self.names or tuple(f"x{i + 1}" for i in range(self.n))
        return Ring(names, self.field, weights=self.exponents)

    def t_degree(self, exps) -> int:
        return sum(a * e for a, e in zip(self.exponents, exps))

    def substitute(self, f: Polynomial) -> dict:
        """Image of f under x_i -> t^a_i, as {t-exponent: coefficient}."""
        F = f.ring.field
        out: dict = {}
        for e, c in f.terms.items():
            k = self.t_degree(e)
            v = F.add(out.get(k, F.zero), c)
            if v == F.zero:
                out.pop(k, None)
            else:
                out[k] = v
        return out

    def vanishes(self, f: Polynomial) -> bool:
        return not self.substitute(f)

    def toric_ideal(self, minimal: bool = True, budget=None) -> Ideal:
        gens = toric_generators(self, budget)
        if minimal:
            gens = minimal_generators(Ideal(gens, self.ring))
        I = Ideal(gens, self.ring, name=f"toric{self.exponents}")
        bad = [g for g in I.gens if not self.vanishes(g)]
        if bad:
            raise ToricCheckError(f"generator {bad[0]} does not vanish on the curve")
        return I


def toric_generators(curve: MonomialCurve, budget=None) -> List[Polynomial]:
    """Reduced Gröbner basis of the toric ideal, in the weighted order."""
    big = Ring(("t",) + curve.ring.variables, curve.field, weights=(1,) + curve.exponents)
    t = big.var(0)
    gens = [big.var(i + 1) - t ** a for i, a in enumerate(curve.exponents)]
    order = Block(1, GRevLex(), Weighted(curve.exponents))
    G = buchberger(gens, order=order, budget=budget, ring=big)
    out = []
    for g in G.basis:
        if all(e[0] == 0 for e in g.terms):
            out.append(g.change_ring(curve.ring, [0] + list(range(curve.n))))
    return out


# --------------------------------------------------------------------------
# the worked families


@dataclass
class ToricFamily:
    """The p-indexed family of space monomial curves over GF(p).

    Exponents (p^2, p(p+1), p^2+p+1, (p+1)^2).  ``f`` is the evolution
    witness; g1, g2, g3 realise x1^p f = g1 g3 + g2^p.
    """

    p: int
    curve: MonomialCurve
    ideal: Ideal
    f: Polynomial
    g1: Polynomial
    g2: Polynomial
    g3: Polynomial

    @property
    def ring(self) -> Ring:
        return self.curve.ring

    def identity_residual(self) -> Polynomial:
        x1 = self.ring.var(0)
        return x1 ** self.p * self.f - (self.g1 * self.g3 + self.g2 ** self.p)


def family_exponents(p: int) -> Tuple[int, int, int, int]:
    return (p * p, p * (p + 1), p * p + p + 1, (p + 1) ** 2)


def paper_family(p: int, budget=None) -> ToricFamily:
    F = GF(p)
    curve = MonomialCurve(family_exponents(p), F)
    R = curve.ring
    x1, x2, x3, x4 = R.gens
    g1 = x1 ** (p + 1) - x2 ** p
    g2 = x1 * x4 - x2 * x3
    g3 = x1 ** p * x2 - x3 ** p
    f = x1 ** (p + 1) * x2 - x2 ** (p + 1) - x1 * x3 ** p + x4 ** p
    I = curve.toric_ideal(budget=budget)
    for g in (f, g1, g2, g3):
        if not curve.vanishes(g):
            raise ToricCheckError(f"{g} does not vanish on the curve")
    return ToricFamily(p, curve, I, f, g1, g2, g3)


KUNZ_EXPONENTS = (14, 20, 25, 30, 91)


def kunz_example(budget=None) -> Tuple[MonomialCurve, Ideal]:
    """Toric ideal of (14, 20, 25, 30, 91) over GF(2)."""
    curve = MonomialCurve(KUNZ_EXPONENTS, GF(2))
    return curve, curve.toric_ideal(budget=budget)


# --------------------------------------------------------------------------
# semigroup oracles


@dataclass(frozen=True)
class SemigroupWitness:
    target: int
    coefficients: Tuple[int, ...]

    def total(self, exponents: Sequence[int]) -> int:
        return sum(c * a for c, a in zip(self.coefficients, exponents))


def _exps(curve: Union[MonomialCurve, Sequence[int]]) -> Tuple[int, ...]:
    return curve.exponents if isinstance(curve, MonomialCurve) else tuple(curve)


def semigroup_representations(
    curve: Union[MonomialCurve, Sequence[int]],
    v: int,
    limit: Optional[int] = None,
    exclude: Sequence[int] = (),
) -> List[SemigroupWitness]:
    """All ways to write v = sum c_i a_i with c_i >= 0, skipping indices in ``exclude``.

    Coefficients are bounded by v // a_i, so the search is finite.
    ``limit`` stops after that many witnesses.
    """
    a = _exps(curve)
    if v < 0:
        return []
    active = [i for i in range(len(a)) if i not in set(exclude)]
    out: List[SemigroupWitness] = []
    coeffs = [0] * len(a)

    def rec(k: int, rest: int) -> bool:
        if rest == 0:
            out.append(SemigroupWitness(v, tuple(coeffs)))
            return limit is not None and len(out) >= limit
        if k == len(active):
            return False
        i = active[k]
        for c in range(rest // a[i], -1, -1):
            coeffs[i] = c
            if rec(k + 1, rest - c * a[i]):
                coeffs[i] = 0
                return True
        coeffs[i] = 0
        return False

    rec(0, v)
    return out


def in_semigroup(curve, v: int, exclude: Sequence[int] = ()) -> bool:
    return bool(semigroup_representations(curve, v, limit=1, exclude=exclude))


def binomial_absence_check(curve, j: int, max_power: int) -> bool:
    """True iff no b*a_j with 0 < b < max_power is a sum of the other exponents.

    Equivalently, no binomial x_j^b - m with m free of x_j lies in the
    toric ideal for those b.
    """
    a = _exps(curve)
    return not any(in_semigroup(a, b * a[j], exclude=(j,)) for b in range(1, max_power))


def pure_power_certificate(curve: MonomialCurve, f: Polynomial) -> Optional[Tuple[int, int]]:
    """(j, a) if f has a pure-power term x_j^a certifying f is not in M*I.

    If f were in M*I, the term x_j^a would force an element of I with a
    term x_j^(a-1), hence a binomial x_j^b - m (0 < b < a, m free of x_j)
    in the toric ideal; ``binomial_absence_check`` rules this out.
    """
    for e in sorted(f.terms):
        supp = [i for i, k in enumerate(e) if k]
        if len(supp) == 1:
            j = supp[0]
            if binomial_absence_check(curve, j, e[j]):
                return j, e[j]
    return None
