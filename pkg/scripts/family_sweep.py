"""Run the witness family for several primes and tabulate the outcome.

    python scripts/family_sweep.py 2 3 5 7 --json sweep.json
"""

import argparse
import json
import time

from evolab.jobs import parse_job, run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("primes", nargs="*", type=int, default=[2, 3, 5])
    ap.add_argument("--json", help="write the full reports here")
    args = ap.parse_args()

    reports = {}
    print(f"{'p':>3} {'gens':>5} {'identity':>9} {'sat':>5} {'fitting':>8} {'in M*I':>7} {'verdict':>18} {'secs':>7}")
    for p in args.primes:
        t0 = time.perf_counter()
        rep = run(parse_job(f"cmd paper-example --p {p};"))
        secs = time.perf_counter() - t0
        r = rep.result
        if rep.exit_code:
            print(f"{p:>3} {rep.status}: {rep.error}")
            continue
        print(
            f"{p:>3} {len(r['ideal']):>5} {str(r['identity_holds']):>9} {str(r['f_in_square_saturation']):>5} "
            f"{str(r['f_in_square_fitting']):>8} {str(r['f_in_MI']):>7} {r['verdict']:>18} {secs:>7.2f}"
        )
        reports[p] = rep.to_json_obj()
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
