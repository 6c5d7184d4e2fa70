"""
Standard Young tableaux, Robinson-Schensted insertion, Knuth classes and
the window promotion operators.

A tableau is a tuple of row tuples.  Boxes are addressed as 1-based
``(row, col)`` matrix coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .permcore import Perm, Subset, check_perm

Tableau = tuple[tuple[int, ...], ...]
Box = tuple[int, int]


class ShapeMismatchError(ValueError):
    pass


def check_tableau(rows: Sequence[Sequence[int]]) -> Tableau:
    """Validate a standard Young tableau and return it in canonical form."""
    T = tuple(tuple(int(x) for x in r) for r in rows if len(r))
    lengths = [len(r) for r in T]
    if lengths != sorted(lengths, reverse=True):
        raise ValueError(f"row lengths {lengths} are not weakly decreasing")
    flat = sorted(x for r in T for x in r)
    if flat != list(range(1, len(flat) + 1)):
        raise ValueError("tableau entries must be exactly 1..n")
    for i, r in enumerate(T):
        if any(a >= b for a, b in zip(r, r[1:])):
            raise ValueError(f"row {i + 1} is not increasing")
        if i and any(T[i - 1][j] >= r[j] for j in range(len(r))):
            raise ValueError(f"column violation between rows {i} and {i + 1}")
    return T


def shape(T: Tableau) -> tuple[int, ...]:
    return tuple(len(r) for r in T)


def size(T: Tableau) -> int:
    return sum(len(r) for r in T)


def transpose(T: Tableau) -> Tableau:
    if not T:
        return ()
    return tuple(tuple(r[j] for r in T if j < len(r)) for j in range(len(T[0])))


def positions(T: Tableau) -> dict[int, Box]:
    return {v: (i, j) for i, r in enumerate(T, 1) for j, v in enumerate(r, 1)}


def tableau_descents(T: Tableau) -> Subset:
    """{i : i+1 lies in a strictly lower row than i}."""
    row = {v: i for i, r in enumerate(T) for v in r}
    return tuple(i for i in range(1, len(row)) if row[i + 1] > row[i])


def restrict_below(T: Tableau, m: int) -> Tableau:
    """T_{<m}: the subtableau of entries smaller than m."""
    return tuple(r for r in (tuple(v for v in row if v < m) for row in T) if r)


@lru_cache(maxsize=None)
def standard_tableaux(lam: tuple[int, ...]) -> tuple[Tableau, ...]:
    """All SYT of shape ``lam``, by placing n in each removable corner."""
    lam = tuple(x for x in lam if x)
    n = sum(lam)
    if n == 0:
        return ((),)
    out = []
    for i, part in enumerate(lam):
        if i + 1 < len(lam) and lam[i + 1] == part:
            continue
        smaller = list(lam)
        smaller[i] -= 1
        for T in standard_tableaux(tuple(smaller)):
            rows = [list(r) for r in T]
            if i == len(rows):
                rows.append([])
            rows[i].append(n)
            out.append(tuple(tuple(r) for r in rows))
    return tuple(sorted(out))


def superstandard(lam: Sequence[int]) -> Tableau:
    """Rows filled left to right, top to bottom."""
    rows, v = [], 1
    for part in lam:
        rows.append(tuple(range(v, v + part)))
        v += part
    return tuple(rows)


# ---------------------------------------------------------------------------
# Robinson-Schensted

@dataclass(frozen=True)
class TableauPair:
    p: Tableau
    q: Tableau

    def __post_init__(self):
        if shape(self.p) != shape(self.q):
            raise ShapeMismatchError(f"shapes {shape(self.p)} and {shape(self.q)} differ")


def rs(pi: Sequence[int]) -> TableauPair:
    """Row insertion; returns (insertion tableau, recording tableau)."""
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(check_perm(pi), 1):
        r = 0
        while True:
            if r == len(P):
                P.append([x])
                Q.append([step])
                break
            row = P[r]
            j = next((k for k, y in enumerate(row) if y > x), None)
            if j is None:
                row.append(x)
                Q[r].append(step)
                break
            row[j], x = x, row[j]
            r += 1
    return TableauPair(tuple(map(tuple, P)), tuple(map(tuple, Q)))


def rs_inverse(pair: TableauPair | tuple[Tableau, Tableau]) -> Perm:
    if not isinstance(pair, TableauPair):
        pair = TableauPair(*pair)
    P = [list(r) for r in pair.p]
    where = positions(pair.q)
    n = len(where)
    word = [0] * n
    for step in range(n, 0, -1):
        r, _ = where[step]
        r -= 1
        x = P[r].pop()
        if not P[r]:
            P.pop()
        for rr in range(r - 1, -1, -1):
            row = P[rr]
            # largest entry smaller than x gets bumped out
            j = max(k for k, y in enumerate(row) if y < x)
            row[j], x = x, row[j]
        word[step - 1] = x
    return tuple(word)


@lru_cache(maxsize=None)
def knuth_class(p: Tableau) -> tuple[Perm, ...]:
    """All permutations whose insertion tableau is ``p``, sorted."""
    p = check_tableau(p)
    return tuple(sorted(rs_inverse(TableauPair(p, q)) for q in standard_tableaux(shape(p))))


# ---------------------------------------------------------------------------
# promotion

@dataclass(frozen=True)
class PromotionTrace:
    path: tuple[Box, ...]
    window: tuple[int, int]


def _check_window(T: Tableau, a: int, b: int) -> int:
    n = size(T)
    if not 1 <= a <= b <= n:
        raise ValueError(f"window [{a},{b}] must satisfy 1 <= a <= b <= {n}")
    return n


def promote_traced(T: Tableau, a: int, b: int) -> tuple[Tableau, PromotionTrace]:
    """The operator d_a^b together with the a-promotion path it used."""
    n = _check_window(T, a, b)
    grid = [list(r) for r in T]

    def value(i, j):
        if 0 <= i < len(grid) and 0 <= j < len(grid[i]):
            v = grid[i][j]
            if a <= v <= b:
                return v
        return None

    i, j = positions(T)[a]
    i, j = i - 1, j - 1
    path = [(i + 1, j + 1)]
    while True:
        below, right = value(i + 1, j), value(i, j + 1)
        if below is None and right is None:
            break
        # entries are distinct, so no ties
        if right is None or (below is not None and below < right):
            ni, nj = i + 1, j
        else:
            ni, nj = i, j + 1
        grid[i][j] = grid[ni][nj]
        i, j = ni, nj
        path.append((i + 1, j + 1))
    for r in grid:
        for k, v in enumerate(r):
            if a < v <= b:
                r[k] = v - 1
    grid[i][j] = b
    assert n == sum(map(len, grid))
    return tuple(map(tuple, grid)), PromotionTrace(tuple(path), (a, b))


def promote(T: Tableau, a: int, b: int) -> Tableau:
    return promote_traced(T, a, b)[0]


def inverse_promote(T: Tableau, a: int, b: int) -> Tableau:
    """Inverse of :func:`promote`: reverse slide from the box holding b."""
    _check_window(T, a, b)
    grid = [list(r) for r in T]

    def value(i, j):
        if i >= 0 and j >= 0 and j < len(grid[i]):
            v = grid[i][j]
            if a <= v <= b:
                return v
        return None

    i, j = positions(T)[b]
    i, j = i - 1, j - 1
    while True:
        above, left = value(i - 1, j), value(i, j - 1)
        if above is None and left is None:
            break
        if left is None or (above is not None and above > left):
            ni, nj = i - 1, j
        else:
            ni, nj = i, j - 1
        grid[i][j] = grid[ni][nj]
        i, j = ni, nj
    for r in grid:
        for k, v in enumerate(r):
            if a <= v < b:
                r[k] = v + 1
    grid[i][j] = a
    return tuple(map(tuple, grid))


def promote_v(T: Tableau, V: Sequence[int]) -> Tableau:
    """d_V = d_{v_1}^{k+1} o d_{v_2}^{k+2} o ... o d_{v_m}^{n}, k = n - |V|.

    Applied right to left, so the largest element of V acts first.
    """
    n = size(T)
    V = sorted(V)
    if V and (V[0] < 1 or V[-1] > n or len(set(V)) != len(V)):
        raise ValueError(f"{tuple(V)} is not a subset of [{n}]")
    k = n - len(V)
    for idx in range(len(V) - 1, -1, -1):
        T = promote(T, V[idx], k + idx + 1)
    return T


def inverse_promote_v(T: Tableau, V: Sequence[int]) -> Tableau:
    n = size(T)
    V = sorted(V)
    k = n - len(V)
    for idx, v in enumerate(V):
        T = inverse_promote(T, v, k + idx + 1)
    return T


# ---------------------------------------------------------------------------
# text format

def parse_tableau(text: str) -> Tableau:
    """One row per line, entries separated by whitespace; ``#`` starts a comment."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([int(x) for x in line.split()])
    return check_tableau(rows)


def format_tableau(T: Tableau) -> str:
    width = len(str(size(T))) if T else 1
    return "\n".join(" ".join(str(v).rjust(width) for v in r) for r in T)
