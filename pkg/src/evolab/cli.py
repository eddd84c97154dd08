"""evocli: run a job file and print a summary and/or a JSON report."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .jobs import EXIT_PARSE, parse_job, run
from .polyring import ParseError


def _caret(text: str, pos: int) -> str:
    line_start = text.rfind("\n", 0, pos) + 1
    line_end = text.find("\n", pos)
    line = text[line_start : line_end if line_end >= 0 else len(text)]
    lineno = text.count("\n", 0, pos) + 1
    return f"line {lineno}: {line}\n{' ' * (len(str(lineno)) + 7 + pos - line_start)}^"


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="evocli", description=__doc__)
    ap.add_argument("job", nargs="?", help="job file ('-' for stdin)")
    ap.add_argument("-e", "--expr", help="job text given inline")
    ap.add_argument("--json", action="store_true", help="write the JSON report to stdout")
    ap.add_argument("--out", help="write the JSON report to this file")
    ap.add_argument("--no-timing", action="store_true", help="omit timing fields from the report")
    args = ap.parse_args(argv)

    if args.expr is not None:
        text = args.expr
    elif args.job in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.job, encoding="utf-8") as fh:
            text = fh.read()

    try:
        job = parse_job(text)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        print(_caret(text, min(exc.pos, len(text))), file=sys.stderr)
        return EXIT_PARSE

    rep = run(job)
    obj = rep.to_json_obj(with_timing=not args.no_timing)
    blob = json.dumps(obj, indent=2, sort_keys=True)
    out = args.out or job.flags.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(blob + "\n")
    if args.json:
        print(blob)
    else:
        print(rep.summary())
        if not args.no_timing:
            print(f"  time: {rep.timing['seconds']:.3f}s")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
