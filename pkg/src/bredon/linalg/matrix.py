"""Sparse integer matrices with arbitrary-precision entries."""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:
    """An immutable integer matrix stored as a dict of sparse rows.

    Entries are Python ints, so there is no overflow.  Rows absent from
    the dict are zero.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, nrows: int, ncols: int, rows: dict[int, dict[int, int]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError(f"negative shape ({nrows}, {ncols})")
        self.nrows = nrows
        self.ncols = ncols
        clean: dict[int, dict[int, int]] = {}
        for i, row in (rows or {}).items():
            if not 0 <= i < nrows:
                raise IndexError(f"row {i} out of range for {nrows} rows")
            r = {j: v for j, v in row.items() if v}
            for j in r:
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range for {ncols} columns")
            if r:
                clean[i] = r
        self._rows = clean
        self._hash = None

    # construction ------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def diagonal(cls, entries: Sequence[int], nrows: int | None = None, ncols: int | None = None) -> IntMatrix:
        k = len(entries)
        return cls(k if nrows is None else nrows, k if ncols is None else ncols,
                   {i: {i: int(d)} for i, d in enumerate(entries)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(data), ncols, {i: {j: int(v) for j, v in enumerate(r) if v} for i, r in enumerate(data)})

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        rows: dict[int, dict[int, int]] = {}
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                if v:
                    rows.setdefault(i, {})[j] = int(v)
        return cls(nrows, len(columns), rows)

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, entries: Iterable[Sequence[int]]) -> IntMatrix:
        rows: dict[int, dict[int, int]] = {}
        for i, j, v in entries:
            row = rows.setdefault(int(i), {})
            row[int(j)] = row.get(int(j), 0) + int(v)
        return cls(nrows, ncols, rows)

    @classmethod
    def from_document(cls, doc: dict) -> IntMatrix:
        return cls.from_triplets(doc["rows"], doc["cols"], doc.get("entries", []))

    # access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows.get(i, {}).get(j, 0)

    def row(self, i: int) -> dict[int, int]:
        return self._rows.get(i, {})

    def row_items(self):
        return self._rows.items()

    def column(self, j: int) -> list[int]:
        return [self._rows[i].get(j, 0) if i in self._rows else 0 for i in range(self.nrows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.ncols)]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def triplets(self) -> list[tuple[int, int, int]]:
        return [(i, j, self._rows[i][j]) for i in sorted(self._rows) for j in sorted(self._rows[i])]

    def to_document(self) -> dict:
        return {"rows": self.nrows, "cols": self.ncols, "entries": [list(t) for t in self.triplets()]}

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    # algebra -------------------------------------------------------------

    @property
    def T(self) -> IntMatrix:
        rows: dict[int, dict[int, int]] = {}
        for i, row in self._rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return IntMatrix(self.ncols, self.nrows, rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows: dict[int, dict[int, int]] = {}
        orows = other._rows
        for i, row in self._rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                orow = orows.get(k)
                if orow is None:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            if acc:
                rows[i] = acc
        return IntMatrix(self.nrows, other.ncols, rows)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = [0] * self.nrows
        for i, row in self._rows.items():
            out[i] = sum(v * vec[j] for j, v in row.items())
        return out

    def _combine(self, other: IntMatrix, sign: int) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, row in other._rows.items():
            target = rows.setdefault(i, {})
            for j, v in row.items():
                target[j] = target.get(j, 0) + sign * v
        return IntMatrix(self.nrows, self.ncols, rows)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, -1)

    def __neg__(self) -> IntMatrix:
        return self.scale(-1)

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.nrows, self.ncols, {i: {j: c * v for j, v in r.items()} for i, r in self._rows.items()})

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        cpos = {c: k for k, c in enumerate(cols)}
        out: dict[int, dict[int, int]] = {}
        for k, i in enumerate(rows):
            row = self._rows.get(i)
            if not row:
                continue
            sel = {cpos[j]: v for j, v in row.items() if j in cpos}
            if sel:
                out[k] = sel
        return IntMatrix(len(rows), len(cols), out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(self.triplets())))
        return self._hash

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            return f"IntMatrix({self.to_dense()})"
        return f"IntMatrix<{self.nrows}x{self.ncols}, nnz={self.nnz}>"


def hstack(blocks: Sequence[IntMatrix], nrows: int | None = None) -> IntMatrix:
    if not blocks:
        return IntMatrix(nrows or 0, 0)
    m = blocks[0].nrows
    rows: dict[int, dict[int, int]] = {}
    off = 0
    for b in blocks:
        if b.nrows != m:
            raise ValueError("hstack row mismatch")
        for i, row in b.row_items():
            target = rows.setdefault(i, {})
            for j, v in row.items():
                target[off + j] = v
        off += b.ncols
    return IntMatrix(m, off, rows)


def vstack(blocks: Sequence[IntMatrix], ncols: int | None = None) -> IntMatrix:
    if not blocks:
        return IntMatrix(0, ncols or 0)
    n = blocks[0].ncols
    rows: dict[int, dict[int, int]] = {}
    off = 0
    for b in blocks:
        if b.ncols != n:
            raise ValueError("vstack column mismatch")
        for i, row in b.row_items():
            rows[off + i] = dict(row)
        off += b.nrows
    return IntMatrix(off, n, rows)


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows: dict[int, dict[int, int]] = {}
    ro = co = 0
    for b in blocks:
        for i, row in b.row_items():
            rows[ro + i] = {co + j: v for j, v in row.items()}
        ro += b.nrows
        co += b.ncols
    return IntMatrix(ro, co, rows)


def assemble(row_sizes: Sequence[int], col_sizes: Sequence[int], blocks: dict[tuple[int, int], IntMatrix]) -> IntMatrix:
    """Build a block matrix; ``blocks[(a, b)]`` lands in block row a, column b.

    Blocks at the same position are summed.
    """
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    rows: dict[int, dict[int, int]] = {}
    for (a, b), blk in blocks.items():
        if blk.shape != (row_sizes[a], col_sizes[b]):
            raise ValueError(f"block ({a},{b}) has shape {blk.shape}, expected {(row_sizes[a], col_sizes[b])}")
        for i, row in blk.row_items():
            target = rows.setdefault(roff[a] + i, {})
            for j, v in row.items():
                target[coff[b] + j] = target.get(coff[b] + j, 0) + v
    return IntMatrix(roff[-1], coff[-1], rows)
