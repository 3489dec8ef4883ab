"""Write a dense synthetic labeled database to a file (or stdout)."""

import argparse
import sys

from mincp.dataio import format_labeled
from mincp.synth import dense_database


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--items", type=int, default=40)
    ap.add_argument("--rows", type=int, default=400, help="rows per class")
    ap.add_argument("--shift", type=float, default=0.15)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-o", "--output")
    args = ap.parse_args(argv)
    db = dense_database(args.items, args.rows, shift=args.shift, seed=args.seed)
    text = format_labeled(db)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"density {100 * db.density():.1f}%", file=sys.stderr)


if __name__ == "__main__":
    main()
