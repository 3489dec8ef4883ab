"""Dynamically reducible binary matrix on top of dancing links.

Cells live in a flat arena of parallel lists (``L``, ``R``, ``U``, ``D``).
Node 0 is the root: its horizontal ring threads the active column headers and
its vertical ring threads the live row headers. Column ``c`` has header node
``1 + c``; row ``r`` has header node ``1 + n_cols + r``; entry nodes follow.

Deleting a row unlinks its cells vertically, deleting a column unlinks its
cells horizontally. Unlinked cells keep their own links, so replaying the
undo log backwards restores the exact previous structure.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class Drmx:
    __slots__ = (
        "n_rows", "n_cols", "L", "R", "U", "D", "row_of", "col_of",
        "col_size", "row_size", "row_live", "col_live", "row_bits",
        "active_rows", "active_cols", "_log",
    )

    def __init__(self, rows: Sequence[Iterable[int]], n_cols: int):
        rows = [sorted(set(r)) for r in rows]
        n_rows = len(rows)
        for r, cols in enumerate(rows):
            if cols and (cols[0] < 0 or cols[-1] >= n_cols):
                raise ValueError(f"row {r} has a column outside [0, {n_cols})")
        n_nodes = 1 + n_cols + n_rows + sum(len(c) for c in rows)
        L = list(range(n_nodes))
        R = list(range(n_nodes))
        U = list(range(n_nodes))
        D = list(range(n_nodes))
        row_of = [-1] * n_nodes
        col_of = [-1] * n_nodes

        # root horizontal ring over column headers
        prev = 0
        for c in range(n_cols):
            h = 1 + c
            col_of[h] = c
            L[h], R[prev] = prev, h
            prev = h
        L[0], R[prev] = prev, 0

        # root vertical ring over row headers
        prev = 0
        for r in range(n_rows):
            h = 1 + n_cols + r
            row_of[h] = r
            U[h], D[prev] = prev, h
            prev = h
        U[0], D[prev] = prev, 0

        col_size = [0] * n_cols
        node = 1 + n_cols + n_rows
        for r, cols in enumerate(rows):
            rh = 1 + n_cols + r
            left = rh
            for c in cols:
                ch = 1 + c
                row_of[node], col_of[node] = r, c
                # append at the bottom of column c
                U[node], D[node] = U[ch], ch
                D[U[ch]] = node
                U[ch] = node
                # append at the right end of row r
                L[node], R[node] = left, rh
                R[left] = node
                L[rh] = node
                left = node
                col_size[c] += 1
                node += 1

        self.n_rows, self.n_cols = n_rows, n_cols
        self.L, self.R, self.U, self.D = L, R, U, D
        self.row_of, self.col_of = row_of, col_of
        self.col_size = col_size
        self.row_size = [len(c) for c in rows]
        self.row_live = [True] * n_rows
        self.col_live = [True] * n_cols
        self.row_bits = [sum(1 << c for c in cols) for cols in rows]
        self.active_rows = n_rows
        self.active_cols = n_cols
        # entries: r >= 0 is a deleted row, ~c < 0 a deleted column
        self._log: list[int] = []

    @classmethod
    def create(cls, rows: Sequence[Iterable[int]], n_cols: int) -> Drmx:
        return cls(rows, n_cols)

    # -- mutation ---------------------------------------------------------

    def delete_row(self, r: int) -> None:
        assert self.row_live[r], f"row {r} already deleted"
        U, D, R = self.U, self.D, self.R
        col_of, col_size = self.col_of, self.col_size
        h = 1 + self.n_cols + r
        D[U[h]] = D[h]
        U[D[h]] = U[h]
        j = R[h]
        while j != h:
            D[U[j]] = D[j]
            U[D[j]] = U[j]
            col_size[col_of[j]] -= 1
            j = R[j]
        self.row_live[r] = False
        self.active_rows -= 1
        self._log.append(r)

    def delete_column(self, c: int) -> None:
        assert self.col_live[c], f"column {c} already deleted"
        L, R, D = self.L, self.R, self.D
        row_of, row_size = self.row_of, self.row_size
        h = 1 + c
        R[L[h]] = R[h]
        L[R[h]] = L[h]
        i = D[h]
        while i != h:
            R[L[i]] = R[i]
            L[R[i]] = L[i]
            row_size[row_of[i]] -= 1
            i = D[i]
        self.col_live[c] = False
        self.active_cols -= 1
        self._log.append(~c)

    def reduce_to_rows_with(self, c: int) -> None:
        """Delete every live row that does not contain column ``c``."""
        assert self.col_live[c], f"column {c} is not active"
        bit = 1 << c
        bits, D = self.row_bits, self.D
        base = self.n_cols + 1
        h = D[0]
        while h != 0:
            nxt = D[h]
            if not bits[h - base] & bit:
                self.delete_row(h - base)
            h = nxt

    # -- undo -------------------------------------------------------------

    def checkpoint(self) -> int:
        return len(self._log)

    def undo_to(self, token: int) -> None:
        log = self._log
        if len(log) == token:
            return
        assert 0 <= token <= len(log), f"checkpoint {token} was invalidated"
        L, R, U, D = self.L, self.R, self.U, self.D
        row_of, col_of = self.row_of, self.col_of
        col_size, row_size = self.col_size, self.row_size
        n_cols = self.n_cols
        while len(log) > token:
            rec = log.pop()
            if rec >= 0:
                h = 1 + n_cols + rec
                j = L[h]
                while j != h:
                    col_size[col_of[j]] += 1
                    D[U[j]] = j
                    U[D[j]] = j
                    j = L[j]
                D[U[h]] = h
                U[D[h]] = h
                self.row_live[rec] = True
                self.active_rows += 1
            else:
                c = ~rec
                h = 1 + c
                i = U[h]
                while i != h:
                    row_size[row_of[i]] += 1
                    R[L[i]] = i
                    L[R[i]] = i
                    i = U[i]
                R[L[h]] = h
                L[R[h]] = h
                self.col_live[c] = True
                self.active_cols += 1

    @property
    def log_depth(self) -> int:
        return len(self._log)

    # -- queries ----------------------------------------------------------

    def count_rows(self) -> int:
        return self.active_rows

    def count_rows_with(self, c: int) -> int:
        assert self.col_live[c], f"column {c} is not active"
        return self.col_size[c]

    def count_full_rows(self) -> int:
        """Live rows containing every active column."""
        full = self.active_cols
        if full == 0:
            return self.active_rows
        D, row_size = self.D, self.row_size
        base = self.n_cols + 1
        n = 0
        h = D[0]
        while h != 0:
            if row_size[h - base] == full:
                n += 1
            h = D[h]
        return n

    def row_contains(self, r: int, c: int) -> bool:
        return self.col_live[c] and bool(self.row_bits[r] >> c & 1)

    def live_rows(self) -> Iterator[int]:
        base = self.n_cols + 1
        D = self.D
        h = D[0]
        while h != 0:
            yield h - base
            h = D[h]

    def active_columns(self) -> Iterator[int]:
        R = self.R
        h = R[0]
        while h != 0:
            yield h - 1
            h = R[h]

    def row_columns(self, r: int) -> list[int]:
        """Active columns of row ``r`` in link order."""
        h = 1 + self.n_cols + r
        out = []
        j = self.R[h]
        while j != h:
            out.append(self.col_of[j])
            j = self.R[j]
        return out

    def column_rows(self, c: int) -> list[int]:
        h = 1 + c
        out = []
        i = self.D[h]
        while i != h:
            out.append(self.row_of[i])
            i = self.D[i]
        return out

    # -- debugging / test oracles -----------------------------------------

    def snapshot(self) -> tuple:
        """Full structural state: links, counters and flags."""
        return (
            tuple(self.L), tuple(self.R), tuple(self.U), tuple(self.D),
            tuple(self.col_size), tuple(self.row_size),
            tuple(self.row_live), tuple(self.col_live),
            self.active_rows, self.active_cols,
        )

    def check_invariants(self) -> None:
        """Raise AssertionError if any counter disagrees with a traversal."""
        L, R, U, D = self.L, self.R, self.U, self.D
        cols = list(self.active_columns())
        assert len(cols) == self.active_cols
        assert cols == [c for c in range(self.n_cols) if self.col_live[c]]
        rows = list(self.live_rows())
        assert len(rows) == self.active_rows
        assert rows == [r for r in range(self.n_rows) if self.row_live[r]]
        for c in cols:
            members = self.column_rows(c)
            assert len(members) == self.col_size[c], (c, members, self.col_size[c])
            assert all(self.row_live[r] for r in members)
            h = 1 + c
            i = D[h]
            while i != h:
                assert U[D[i]] == i and D[U[i]] == i and L[R[i]] == i and R[L[i]] == i
                i = D[i]
        for r in rows:
            members = self.row_columns(r)
            assert len(members) == self.row_size[r], (r, members, self.row_size[r])
            assert all(self.col_live[c] for c in members)
            expected = [c for c in range(self.n_cols) if self.col_live[c] and self.row_bits[r] >> c & 1]
            assert sorted(members) == expected

    def dump(self) -> str:
        """One line per live row listing its active columns."""
        return "\n".join(
            f"{r}: " + " ".join(map(str, self.row_columns(r))) for r in self.live_rows()
        )
