"""Same exponents, two fields: GF(p) has a nontrivial evolution, QQ does not.

Over QQ every minimal generator of I^(2) gets an Euler certificate
(its partial derivatives lie in I), which places it in M*I.
"""

import argparse

from evolab.evolution import check_evolutions, quasihomogeneous_check
from evolab.exactfield import GF, QQ
from evolab.polyring import NotInvertibleError
from evolab.toriclab import MonomialCurve, family_exponents


def report(exps, field):
    curve = MonomialCurve(exps, field)
    I = curve.toric_ideal()
    v = check_evolutions(I, "saturation", curve.ring.var(0))
    certs = []
    for g in v.square_generators:
        try:
            certs.append(quasihomogeneous_check(I, g, 2).holds)
        except NotInvertibleError:
            certs.append(None)  # degree vanishes in the field
    return v, certs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("primes", nargs="*", type=int, default=[2, 3])
    args = ap.parse_args()
    for p in args.primes:
        exps = family_exponents(p)
        for field in (GF(p), QQ):
            v, certs = report(exps, field)
            ok = sum(c is True for c in certs)
            na = sum(c is None for c in certs)
            print(f"exponents {exps} over {field}: {v.verdict}; Euler certificates {ok}/{len(certs)} ({na} undefined)")
            if v.witness is not None:
                print(f"    witness {v.witness}")


if __name__ == "__main__":
    main()
