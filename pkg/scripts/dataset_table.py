"""Dataset statistics and SJEP counts (sigma+ = 2% of the positive class).

Reads every ``*.lab`` (labeled transactions) or ``*.txt`` (0/1 matrix, class
in the last column) in a directory. Both class orientations are mined since
the choice of positive class is a convention of the source data.
"""

import argparse
import math
import time
from pathlib import Path

from mincp.dataio import dataset_stats, parse_binary_matrix, parse_labeled
from mincp.miner import mine
from mincp.model import LabeledDatabase, MiningParams


def load(path: Path) -> LabeledDatabase:
    text = path.read_text()
    return parse_labeled(text, str(path)) if path.suffix == ".lab" else parse_binary_matrix(text)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("directory", type=Path)
    ap.add_argument("--fraction", type=float, default=0.02)
    args = ap.parse_args(argv)

    files = sorted(p for p in args.directory.iterdir() if p.suffix in (".lab", ".txt"))
    print("dataset\titems\texamples\tdensity%\tSJEP(+)\tSJEP(-)\tseconds")
    for path in files:
        db = load(path)
        st = dataset_stats(db)
        counts = []
        start = time.perf_counter()
        for pos, neg in ((db.positives, db.negatives), (db.negatives, db.positives)):
            d = LabeledDatabase(db.universe_size, pos, neg)
            params = MiningParams(math.ceil(args.fraction * d.n_plus), 0, math.inf, 0.0)
            counts.append(len(mine(d, params)[0]))
        elapsed = time.perf_counter() - start
        print(f"{path.stem}\t{st['items']}\t{st['examples']}\t{st['density']:.0f}\t"
              f"{counts[0]}\t{counts[1]}\t{elapsed:.1f}")


if __name__ == "__main__":
    main()
