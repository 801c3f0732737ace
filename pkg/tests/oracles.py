"""Independent reference computations for the test suite.

Nothing here imports the package's linear algebra: integer invariants come
from sympy and mod-p ranks from a small elimination written below.
"""

from __future__ import annotations

from itertools import combinations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

NormalForm = tuple[int, tuple[int, ...]]


def _by_dim(simplices):
    out: dict[int, list[tuple[int, ...]]] = {}
    for s in simplices:
        s = tuple(sorted(s))
        out.setdefault(len(s) - 1, []).append(s)
    top = max(out, default=-1)
    return [sorted(set(out.get(n, []))) for n in range(top + 1)]


def coboundaries(simplices) -> tuple[list[int], list[list[list[int]]]]:
    """Dense coboundary matrices ``delta_n`` (rows: (n+1)-simplices) over the given cells."""
    cells = _by_dim(simplices)
    sizes = [len(c) for c in cells]
    mats = []
    for n in range(len(cells) - 1):
        pos = {s: i for i, s in enumerate(cells[n])}
        m = [[0] * sizes[n] for _ in range(sizes[n + 1])]
        for r, t in enumerate(cells[n + 1]):
            for i in range(len(t)):
                f = t[:i] + t[i + 1:]
                if f in pos:
                    m[r][pos[f]] += (-1) ** i
        mats.append(m)
    return sizes, mats


def _sympy_factors(m, rows, cols) -> list[int]:
    if rows == 0 or cols == 0:
        return []
    return [abs(int(d)) for d in invariant_factors(Matrix(rows, cols, lambda i, j: m[i][j]), domain=ZZ) if d != 0]


def integral_cohomology(simplices, exclude=()) -> list[NormalForm]:
    """``H^n(X, A; Z)`` with X given by all its simplices and A by ``exclude``."""
    excl = {tuple(sorted(s)) for s in exclude}
    cells = [s for s in simplices if tuple(sorted(s)) not in excl]
    if not cells:
        return []
    sizes, mats = coboundaries(cells)
    facs = [_sympy_factors(m, sizes[n + 1], sizes[n]) for n, m in enumerate(mats)]
    out = []
    for n, c in enumerate(sizes):
        r_out = len(facs[n]) if n < len(facs) else 0
        r_in = facs[n - 1] if n > 0 else []
        out.append((c - r_out - len(r_in), tuple(d for d in r_in if d > 1)))
    return out


def _rank_mod(m, p: int) -> int:
    rows = [[x % p for x in row] for row in m]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def mod_p_betti(simplices, p: int) -> list[int]:
    """Dimensions of ``H^n(X; Z/p)``."""
    sizes, mats = coboundaries(list(simplices))
    ranks = [_rank_mod(m, p) for m in mats]
    return [c - (ranks[n] if n < len(ranks) else 0) - (ranks[n - 1] if n > 0 else 0)
            for n, c in enumerate(sizes)]


def trim(forms: list[NormalForm]) -> list[NormalForm]:
    forms = list(forms)
    while forms and forms[-1] == (0, ()):
        forms.pop()
    return forms


# groups by brute force ------------------------------------------------------


def brute_subgroups(mul) -> set[frozenset[int]]:
    """All subsets closed under the product (nonempty subsets of a finite group)."""
    n = len(mul)
    out = set()
    for k in range(1, n + 1):
        for sub in combinations(range(n), k):
            s = set(sub)
            if all(mul[a][b] in s for a in s for b in s):
                out.add(frozenset(s))
    return out


def identity_of(mul) -> int:
    return next(e for e in range(len(mul)) if all(mul[e][x] == x for x in range(len(mul))))


def fixed_coset_count(mul, H, K) -> int:
    """Number of left cosets xK with hxK = xK for all h in H."""
    K = frozenset(K)
    cosets = {frozenset(mul[x][k] for k in K) for x in range(len(mul))}
    return sum(1 for c in cosets if all(frozenset(mul[h][y] for y in c) == c for h in H))


def equivariant_map_count(mul, H, K) -> int:
    """G-maps G/H -> G/K counted as all set maps that commute with the action."""
    n = len(mul)
    left = sorted({frozenset(mul[x][h] for h in H) for x in range(n)}, key=min)
    right = sorted({frozenset(mul[x][k] for k in K) for x in range(n)}, key=min)

    def act(g, c):
        return frozenset(mul[g][y] for y in c)

    count = 0
    for images in _product(range(len(right)), len(left)):
        f = {left[i]: right[j] for i, j in enumerate(images)}
        if all(f[act(g, c)] == act(g, f[c]) for g in range(n) for c in left):
            count += 1
    return count


def _product(values, k):
    if k == 0:
        yield ()
        return
    for head in values:
        for tail in _product(values, k - 1):
            yield (head,) + tail


# stabilizers read directly off the action ----------------------------------


def singular_simplices(simplices, action, identity: int) -> set[tuple[int, ...]]:
    """Simplices fixed setwise by some non-identity element."""
    out = set()
    for s in simplices:
        ss = set(s)
        for g, perm in enumerate(action):
            if g != identity and {perm[v] for v in s} == ss:
                out.add(tuple(sorted(s)))
                break
    return out
