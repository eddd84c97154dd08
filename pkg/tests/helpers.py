"""Shared test helpers that drive the engine (unlike oracles.py)."""

from evolab.groebner import module_buchberger, syzygies
from oracles import brute_force_syzygies


def random_small_ideal(rng, ring, ngens=3, max_deg=3):
    gens = []
    while len(gens) < ngens:
        terms = {}
        for _ in range(rng.randint(1, 3)):
            e = [0] * ring.nvars
            for _ in range(rng.randint(1, max_deg)):
                e[rng.randrange(ring.nvars)] += 1
            terms[tuple(e)] = rng.choice([-3, -2, -1, 1, 2, 3])
        f = ring.from_dict(terms)
        if not f.is_zero():
            gens.append(f)
    return gens


def syzygy_completeness(gens, D):
    """Every degree-bounded relation lies in the computed syzygy module."""
    syz = syzygies(gens)
    for s in syz:
        assert s.dot(gens).is_zero()
    brute = brute_force_syzygies(gens, D)
    if not brute:
        return True
    if not syz:
        return False
    M = module_buchberger(syz, len(gens))
    return all(M.contains(v) for v in brute)
