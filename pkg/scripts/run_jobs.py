"""Run every job file in scripts/jobs and print one line per job."""

import sys
from pathlib import Path

from evolab.jobs import parse_job, run


def main():
    root = Path(__file__).with_name("jobs")
    worst = 0
    for path in sorted(root.glob("*.job")):
        rep = run(parse_job(path.read_text()))
        verdict = rep.result.get("verdict", rep.result.get("holds", rep.result.get("member", "")))
        print(f"{path.name:<26} {rep.status:<22} {verdict!s:<18} {rep.timing['seconds']:.2f}s")
        worst = max(worst, rep.exit_code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
