"""
Exhaustive sweep over every subset of S_n (n <= 4).

Each of the five conditions, and closure under R_J^{-1} products, says that
some integer linear functionals of the multiplicity vector x of B vanish:
the descent statistic of B R_J^{-1} is sum_pi x_pi * stat(pi R_J^{-1}), and
likewise for the other sides.  Stacking those functionals as columns of a
matrix L, a condition holds iff x @ L == 0.  Only a column basis of L is
kept, which is enough since the other columns are combinations of it.

Subsets are encoded as bitmasks over S_n in lexicographic order.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .permcore import all_subsets, rearrangement_classes
from .verifier import CONDITIONS, _map_mask, _mask, tables

MAX_EXHAUSTIVE_DEGREE = 4


class InfeasibleRequest(ValueError):
    pass


def column_basis(L: np.ndarray) -> np.ndarray:
    """Columns of ``L`` forming a basis of its column space (exact arithmetic)."""
    rows, cols = L.shape
    M = [[Fraction(int(L[i, j])) for j in range(cols)] for i in range(rows)]
    pivots, r = [], 0
    for j in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][j] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(rows):
            if i != r and M[i][j] != 0:
                f = M[i][j] / M[r][j]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
    return L[:, pivots]


def _stat_columns(stats: list[Counter], keys: list[int]) -> np.ndarray:
    return np.array([[s.get(k, 0) for k in keys] for s in stats], dtype=np.int64)


def _b_sizes(stats: list[Counter], n: int) -> np.ndarray:
    """Per-permutation |(pi R)_K| contributions for every K ⊆ [n-1]."""
    masks = [_mask(K) for K in all_subsets(n)]
    return np.array([[sum(c for d, c in s.items() if d & ~m == 0) for m in masks]
                     for s in stats], dtype=np.int64)


def _symmetry_columns(sizes: np.ndarray, n: int) -> np.ndarray:
    pos = {K: i for i, K in enumerate(all_subsets(n))}
    cols = []
    for group in rearrangement_classes(n):
        for K in group[1:]:
            cols.append(sizes[:, pos[group[0]]] - sizes[:, pos[K]])
    if not cols:
        return np.zeros((sizes.shape[0], 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def condition_matrices(n: int) -> dict[str, np.ndarray]:
    """Linear functionals for each condition plus right/left closure per J."""
    T = tables(n)
    N = len(T.perms)
    keys = list(range(1 << max(n - 1, 0)))
    out: dict[str, list[np.ndarray]] = {c: [] for c in CONDITIONS}

    # a) generating-function criterion, one block of columns per partition U
    for U, star_mask, d, image_mask in T.partition_data():
        lhs = [Counter({_map_mask(T.des[i] & star_mask, d): 1}) for i in range(N)]
        rhs = [Counter({T.des[i] & image_mask: 1}) for i in range(N)]
        out["a_d_symmetric"].append(_stat_columns(lhs, keys) - _stat_columns(rhs, keys))

    right, left = {}, {}
    for J, R in T.r_class.items():
        right[J] = [Counter(T.des[T.mult[i][t]] for t in R) for i in range(N)]
        left[J] = [Counter(T.des[T.mult[t][i]] for t in R) for i in range(N)]
        out["b_d_commutative"].append(
            _stat_columns(right[J], keys) - _stat_columns(left[J], keys))
    for group in rearrangement_classes(n):
        for K in group[1:]:
            out["c_right_invariant"].append(
                _stat_columns(right[group[0]], keys) - _stat_columns(right[K], keys))
            out["d_left_invariant"].append(
                _stat_columns(left[group[0]], keys) - _stat_columns(left[K], keys))

    own = [Counter({T.des[i]: 1}) for i in range(N)]
    out["e_symmetric"].append(_symmetry_columns(_b_sizes(own, n), n))

    mats = {}
    for name, blocks in out.items():
        full = np.concatenate(blocks, axis=1) if blocks else np.zeros((N, 0), dtype=np.int64)
        mats[name] = column_basis(full)
    for J in T.subsets:
        mats[f"closure_right:{J}"] = column_basis(_symmetry_columns(_b_sizes(right[J], n), n))
        mats[f"closure_left:{J}"] = column_basis(_symmetry_columns(_b_sizes(left[J], n), n))
    return mats


@dataclass
class SweepResult:
    n: int
    total: int
    patterns: Counter = field(default_factory=Counter)
    disagreements: list[int] = field(default_factory=list)
    closure_violations: list[int] = field(default_factory=list)
    symmetric: list[int] = field(default_factory=list)
    wall_time: float = 0.0

    def decode(self, mask: int) -> list[tuple[int, ...]]:
        perms = tables(self.n).perms
        return [perms[i] for i in range(len(perms)) if mask >> i & 1]


def sweep_subsets(n: int, chunk_bits: int = 16, keep_symmetric: bool = True) -> SweepResult:
    """Evaluate every condition on all 2^(n!) subsets of S_n."""
    if n > MAX_EXHAUSTIVE_DEGREE:
        raise InfeasibleRequest(
            f"exhaustive subset sweep is limited to n <= {MAX_EXHAUSTIVE_DEGREE}: "
            f"S_{n} has 2^{len(tables(n).perms) if n <= 6 else 'n!'} subsets")
    t0 = time.perf_counter()
    N = len(tables(n).perms)
    mats = condition_matrices(n)
    names = list(CONDITIONS)
    closure_names = [k for k in mats if k.startswith("closure")]
    # float64 matmul is exact here: entries are small integers
    stacked = [mats[k].astype(np.float64) for k in names + closure_names]
    widths = [m.shape[1] for m in stacked]
    big = np.concatenate(stacked, axis=1) if sum(widths) else np.zeros((N, 0))
    bounds = np.cumsum([0, *widths])

    total = 1 << N
    step = min(total, 1 << chunk_bits)
    bits = np.arange(N, dtype=np.int64)
    res = SweepResult(n, total)
    weights = 1 << np.arange(len(names), dtype=np.int64)
    for start in range(0, total, step):
        idx = np.arange(start, min(total, start + step), dtype=np.int64)
        X = ((idx[:, None] >> bits) & 1).astype(np.float64)
        Y = X @ big
        flags = []
        for c in range(len(names)):
            block = Y[:, bounds[c]:bounds[c + 1]]
            flags.append(~np.any(block != 0, axis=1))
        F = np.stack(flags, axis=1)
        code = F.astype(np.int64) @ weights
        res.patterns.update(Counter(code.tolist()))
        bad = ~(F.all(axis=1) | (~F).all(axis=1))
        res.disagreements.extend(idx[bad].tolist())
        sym = F[:, names.index("e_symmetric")]
        closure_ok = np.ones(len(idx), dtype=bool)
        for c in range(len(names), len(stacked)):
            block = Y[:, bounds[c]:bounds[c + 1]]
            closure_ok &= ~np.any(block != 0, axis=1)
        res.closure_violations.extend(idx[sym & ~closure_ok].tolist())
        if keep_symmetric:
            res.symmetric.extend(idx[sym].tolist())
    res.wall_time = time.perf_counter() - t0
    return res


def pattern_flags(code: int) -> dict[str, bool]:
    return {name: bool(code >> i & 1) for i, name in enumerate(CONDITIONS)}
