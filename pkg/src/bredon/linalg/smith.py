"""Smith normal form and the lattice operations built on it.

Two code paths live here.  :func:`smith` is a dense elimination that
records the unimodular transforms; everything that needs explicit bases
(kernels, images, solving) goes through it.  :func:`invariant_factors`
is a sparse elimination that only tracks the diagonal, which is all the
free-complex cohomology needs and is much faster on boundary matrices.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .matrix import IntMatrix, hstack


@dataclass(frozen=True)
class SmithDecomposition:
    """``D = U @ A @ V`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``Uinv`` and ``Vinv`` are the exact inverses of ``U`` and ``V``.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix
    Vinv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        return [self.D[i, i] for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def solve(self, b: Sequence[int]) -> list[int] | None:
        """Return some integer ``x`` with ``A x = b``, or None if there is none."""
        m, n = self.D.shape
        if len(b) != m:
            raise ValueError("right-hand side has wrong length")
        ub = self.U.apply(b)
        diag = self.diagonal
        y = [0] * n
        for i in range(m):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if ub[i] != 0:
                    return None
            else:
                q, r = divmod(ub[i], d)
                if r:
                    return None
                y[i] = q
        return self.V.apply(y)


def _min_abs_entry(a, t, m, n):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def smith(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form by minimal-absolute-value pivoting.

    Deterministic for a fixed input.  The diagonal satisfies
    ``d_1 | d_2 | ... `` with all entries non-negative.
    """
    m, n = A.shape
    a = A.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, k):
        # R_i += k R_j
        ai, aj = a[i], a[j]
        for c in range(n):
            if aj[c]:
                ai[c] += k * aj[c]
        ui, uj = U[i], U[j]
        for c in range(m):
            if uj[c]:
                ui[c] += k * uj[c]
        for r in Ui:
            if r[i]:
                r[j] -= k * r[i]

    def col_add(i, j, k):
        # C_i += k C_j
        for r in a:
            if r[j]:
                r[i] += k * r[j]
        for r in V:
            if r[j]:
                r[i] += k * r[j]
        vj, vi = Vi[j], Vi[i]
        for c in range(n):
            if vi[c]:
                vj[c] -= k * vi[c]

    def row_swap(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        best = _min_abs_entry(a, t, m, n)
        if best is None:
            break
        _, pi, pj = best
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                # a remainder smaller than the pivot survived; promote it
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, ci, cj = min(cand)
                row_swap(t, ci)
                col_swap(t, cj)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            U[t] = [-v for v in U[t]]
            for r in Ui:
                r[t] = -r[t]
        t += 1

    return SmithDecomposition(
        IntMatrix.from_dense(U, m), IntMatrix.from_dense(a, n), IntMatrix.from_dense(V, n),
        IntMatrix.from_dense(Ui, m), IntMatrix.from_dense(Vi, n),
    )


def _dense_diagonal(a: list[list[int]]) -> list[int]:
    """Invariant factors of a small dense matrix, no transforms kept."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = _min_abs_entry(a, t, m, n)
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    ai, at = a[i], a[t]
                    for c in range(t, n):
                        ai[c] -= q * at[c]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j]:
                        clean = False
            if not clean:
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, ci, cj = min(cand)
                a[t], a[ci] = a[ci], a[t]
                for r in a:
                    r[t], r[cj] = r[cj], r[t]
                continue
            bad = None
            for i in range(t + 1, m):
                if any(a[i][j] % p for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            at, ab = a[t], a[bad]
            for c in range(t, n):
                at[c] += ab[c]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero Smith invariants of ``A`` in divisor-chain order.

    Unit pivots are eliminated sparsely first (Markowitz-style, shortest
    rows first); whatever is left without a unit entry is finished densely.
    """
    rows: dict[int, dict[int, int]] = {i: dict(r) for i, r in A.row_items()}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    heap = [(len(r), i) for i, r in rows.items()]
    heapq.heapify(heap)
    deferred: set[int] = set()
    while True:
        while heap:
            ln, i = heapq.heappop(heap)
            r = rows.get(i)
            if r is None:
                continue
            if len(r) != ln:
                heapq.heappush(heap, (len(r), i))
                continue
            pivot_col = None
            for j, v in r.items():
                if v == 1 or v == -1:
                    if pivot_col is None or len(cols[j]) < len(cols[pivot_col]):
                        pivot_col = j
            if pivot_col is None:
                deferred.add(i)
                continue
            deferred.discard(i)
            p = r[pivot_col]
            for k in list(cols[pivot_col]):
                if k == i:
                    continue
                rk = rows[k]
                f = rk[pivot_col] * p
                for j, v in r.items():
                    nv = rk.get(j, 0) - f * v
                    if nv:
                        if j not in rk:
                            cols[j].add(k)
                        rk[j] = nv
                    elif j in rk:
                        del rk[j]
                        cols[j].discard(k)
                if not rk:
                    del rows[k]
                    deferred.discard(k)
                else:
                    heapq.heappush(heap, (len(rk), k))
            for j in r:
                cols[j].discard(i)
            del cols[pivot_col]
            del rows[i]
            units += 1
        # deferred rows may have gained unit entries while others were eliminated
        retry = [i for i in deferred if i in rows and any(abs(v) == 1 for v in rows[i].values())]
        if not retry:
            break
        for i in retry:
            deferred.discard(i)
            heapq.heappush(heap, (len(rows[i]), i))
    rest_rows = sorted(rows)
    rest_cols = sorted({j for r in rows.values() for j in r})
    diag = [1] * units
    if rest_rows and rest_cols:
        cpos = {c: k for k, c in enumerate(rest_cols)}
        dense = [[0] * len(rest_cols) for _ in rest_rows]
        for k, i in enumerate(rest_rows):
            for j, v in rows[i].items():
                dense[k][cpos[j]] = v
        diag += [d for d in _dense_diagonal(dense) if d]
    return _normalize_chain(diag)


def _normalize_chain(values: Sequence[int]) -> list[int]:
    """Turn a list of nonzero diagonal entries into a divisor chain."""
    vals = sorted(abs(v) for v in values if v)
    # re-chaining via gcd/lcm keeps the group diag(vals) unchanged
    changed = True
    while changed:
        changed = False
        for i in range(len(vals) - 1):
            a, b = vals[i], vals[i + 1]
            if b % a:
                g = gcd(a, b)
                vals[i], vals[i + 1] = g, a * b // g
                changed = True
        vals.sort()
    return vals


def rank(A: IntMatrix) -> int:
    return len(invariant_factors(A))


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a saturated basis of ``{x : A x = 0}``."""
    s = smith(A)
    r = s.rank
    n = A.ncols
    return s.V.submatrix(range(n), range(r, n))


def image_basis(W: IntMatrix) -> IntMatrix:
    """Columns form a basis of the lattice spanned by the columns of ``W``."""
    s = smith(W)
    diag = s.diagonal
    cols = []
    for i, d in enumerate(diag):
        if d:
            cols.append([d * v for v in s.Uinv.column(i)])
    return IntMatrix.from_columns(cols, W.nrows)


def solve(A: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """Integer ``X`` with ``A X = B``, or None if some column is unsolvable."""
    if A.nrows != B.nrows:
        raise ValueError("row mismatch")
    s = smith(A)
    cols = []
    for col in B.columns():
        x = s.solve(col)
        if x is None:
            return None
        cols.append(x)
    return IntMatrix.from_columns(cols, A.ncols)


def in_lattice(generators: IntMatrix, v: Sequence[int]) -> bool:
    return smith(generators).solve(list(v)) is not None


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = A.nrows
    if n != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = A.to_dense()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def cokernel_invariants(A: IntMatrix) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion divisors) of ``Z^rows / colspan(A)``."""
    inv = invariant_factors(A)
    return A.nrows - len(inv), tuple(d for d in inv if d > 1)


def lattice_coordinates(basis: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    """Coordinates of ``vectors`` in a lattice basis; raises if one is outside."""
    x = solve(basis, vectors)
    if x is None:
        raise ValueError("vector outside the lattice")
    return x


def stack_solver(*blocks: IntMatrix) -> SmithDecomposition:
    return smith(hstack(list(blocks)))
