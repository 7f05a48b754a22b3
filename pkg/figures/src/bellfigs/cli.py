"""figures CLI: render sweep CSVs to image files.

Exit codes: 0 success, 1 bad arguments or schema mismatch, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .io import FIGURE_KINDS, SchemaError
from .render import FigureSpec, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message)


def main(argv=None) -> int:
    parser = _Parser(prog="figures", description="render bellqfi sweep CSVs")
    parser.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    parser.add_argument("--csv", action="append", required=True,
                        help="input CSV; repeat to overlay several files")
    parser.add_argument("--out", required=True, help="output image (.svg or .png)")
    try:
        args = parser.parse_args(argv)
        spec = FigureSpec(tuple(args.csv), args.kind, args.out)
        out = render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
