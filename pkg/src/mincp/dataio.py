"""Reading labeled transaction files, writing patterns and feature matrices.

Labeled format, one transaction per line::

    # items: 119        (optional, fixes the universe size)
    + 0 4 17
    - 1 4

Labels ``+``/``1`` are positive, ``-``/``0`` negative. Other ``#`` lines are
comments. The pair format is plain FIMI: one file per class, one
space-separated transaction per line.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from typing import Iterable, Mapping

from .model import LabeledDatabase, Pattern, PatternStats, occurs

_POSITIVE = {"+", "1"}
_NEGATIVE = {"-", "0"}
_HEADER = re.compile(r"#\s*items\s*[:=]\s*(\d+)\s*$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")
        self.line = line


def _items(tokens, lineno, source):
    out = set()
    for tok in tokens:
        try:
            item = int(tok)
        except ValueError:
            raise ParseError(f"item {tok!r} is not an integer", lineno, source) from None
        if item < 0:
            raise ParseError(f"item {item} is negative", lineno, source)
        out.add(item)
    return frozenset(out)


def _universe(header, txs, source):
    top = max((max(t) for t in txs if t), default=-1) + 1
    if header is None:
        return top
    if header < top:
        raise ParseError(f"header declares {header} items but item {top - 1} occurs", None, source)
    return header


def parse_labeled(text: str, source: str | None = None) -> LabeledDatabase:
    pos, neg = [], []
    header = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m:
                header = int(m.group(1))
            continue
        label, *rest = line.split()
        if label in _POSITIVE:
            pos.append(_items(rest, lineno, source))
        elif label in _NEGATIVE:
            neg.append(_items(rest, lineno, source))
        else:
            raise ParseError(f"unknown label {label!r}", lineno, source)
    return LabeledDatabase(_universe(header, pos + neg, source), pos, neg)


def parse_fimi(text: str, source: str | None = None) -> list[frozenset[int]]:
    txs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        txs.append(_items(line.split(), lineno, source))
    return txs


def parse_pair(pos_text: str, neg_text: str) -> LabeledDatabase:
    pos = parse_fimi(pos_text, "positive")
    neg = parse_fimi(neg_text, "negative")
    return LabeledDatabase(_universe(None, pos + neg, None), pos, neg)


def parse_binary_matrix(text: str, label_column: int = -1, positive_label: str = "1") -> LabeledDatabase:
    """Dense 0/1 rows with the class in one column (CP4IM-style exports).

    Lines that do not start with a digit are treated as headers and skipped.
    """
    pos, neg = [], []
    width = None
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or not tokens[0][0].isdigit():
            continue
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(f"expected {width} columns, got {len(tokens)}", lineno)
        if any(tok not in ("0", "1") for tok in tokens):
            raise ParseError("non-binary value", lineno)
        label = tokens.pop(label_column)
        items = frozenset(j for j, tok in enumerate(tokens) if tok == "1")
        (pos if label == positive_label else neg).append(items)
    return LabeledDatabase(0 if width is None else width - 1, pos, neg)


def load(paths, negation: bool = False) -> LabeledDatabase:
    """One path: labeled file. Two paths: positive and negative FIMI files."""
    texts = []
    for p in paths:
        with open(p, encoding="utf-8") as fh:
            texts.append(fh.read())
    if len(texts) == 1:
        db = parse_labeled(texts[0], str(paths[0]))
    elif len(texts) == 2:
        db = parse_pair(*texts)
    else:
        raise ValueError("expected one labeled file or a positive/negative pair")
    if negation:
        db = LabeledDatabase(db.universe_size, db.positives, db.negatives, True)
    return db


def format_labeled(db: LabeledDatabase) -> str:
    lines = [f"# items: {db.universe_size}"]
    for label, txs in (("+", db.positives), ("-", db.negatives)):
        for t in txs:
            lines.append(" ".join([label, *map(str, sorted(t))]))
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return repr(float(x))


def canonical(patterns: Iterable[Pattern]) -> list[Pattern]:
    """Patterns by size, then lexicographically by literal code."""
    return sorted(patterns, key=Pattern.sort_key)


def write_patterns(patterns: Mapping[Pattern, PatternStats], fmt: str = "text") -> bytes:
    ordered = canonical(patterns)
    if fmt == "text":
        lines = []
        for p in ordered:
            st = patterns[p]
            lines.append("\t".join(
                [str(p), str(st.sup_plus), str(st.sup_minus), _fmt(st.growth_rate), _fmt(st.chi2)]
            ))
        return "".join(line + "\n" for line in lines).encode()
    if fmt == "json":
        records = []
        for p in ordered:
            st = patterns[p]
            records.append({
                "literals": [str(lit) for lit in p],
                "sup_plus": st.sup_plus,
                "sup_minus": st.sup_minus,
                "growth_rate": "inf" if math.isinf(st.growth_rate) else st.growth_rate,
                "chi2": st.chi2,
            })
        return (json.dumps(records, indent=1) + "\n").encode()
    raise ValueError(f"unknown pattern format {fmt!r}")


def read_patterns(data: bytes | str, fmt: str = "text") -> dict[Pattern, PatternStats]:
    text = data.decode() if isinstance(data, bytes) else data
    out = {}
    if fmt == "text":
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 5:
                raise ParseError(f"expected 5 tab-separated fields, got {len(fields)}", lineno)
            lits, sp, sm, gr, chi2 = fields
            out[Pattern.parse(lits)] = PatternStats(int(sp), int(sm), float(gr), float(chi2))
        return out
    if fmt == "json":
        for rec in json.loads(text):
            pattern = Pattern.of(*rec["literals"])
            out[pattern] = PatternStats(
                rec["sup_plus"], rec["sup_minus"], float(rec["growth_rate"]), float(rec["chi2"])
            )
        return out
    raise ValueError(f"unknown pattern format {fmt!r}")


def export_feature_matrix(db: LabeledDatabase, patterns: Iterable[Pattern]) -> bytes:
    """0/1 occurrence matrix, one row per transaction (positives first)."""
    patterns = list(patterns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", *(f"p{j}" for j in range(len(patterns)))])
    for label, txs in ((1, db.positives), (0, db.negatives)):
        for t in txs:
            writer.writerow([label, *(int(occurs(p, t)) for p in patterns)])
    return buf.getvalue().encode()


def dataset_stats(db: LabeledDatabase) -> dict:
    return {
        "items": db.universe_size,
        "examples": db.n_plus + db.n_minus,
        "positives": db.n_plus,
        "negatives": db.n_minus,
        "density": 100.0 * db.density(),
    }
