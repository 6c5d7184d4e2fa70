"""
Decision procedures for the five equivalent conditions on a multiset B of
permutations, corollary checks, and the objects used in the sufficiency
argument (r(U), s(U) and the interval-partition bijection).

a) D-symmetric (checked through the generating-function criterion)
b) B R_J^{-1} ≡ R_J^{-1} B for every J
c) B R_J^{-1} ≡ B R_K^{-1} whenever J ~ K
d) R_J^{-1} B ≡ R_K^{-1} B whenever J ~ K
e) Q(B) is symmetric
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Iterable, Sequence

from . import qsym
from .bijections import InternalConsistencyError
from .permcore import (
    Blocks, Perm, PermMultiset, all_perms, all_subsets, composition, delta,
    descent_set, enumerate_partitions, rearrangement_classes, u_star,
)

CONDITIONS = ("a_d_symmetric", "b_d_commutative", "c_right_invariant",
              "d_left_invariant", "e_symmetric")


def _mask(subset: Iterable[int]) -> int:
    m = 0
    for i in subset:
        m |= 1 << (i - 1)
    return m


def _unmask(m: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(m.bit_length()) if m >> i & 1)


class Tables:
    """Per-degree lookup tables: S_n indexed lexicographically, products by index."""

    def __init__(self, n: int):
        self.n = n
        self.perms = all_perms(n)
        self.index = {p: i for i, p in enumerate(self.perms)}
        self.des = [_mask(descent_set(p)) for p in self.perms]
        N = len(self.perms)
        self.mult = [[self.index[tuple(p[t - 1] for t in q)] for q in self.perms]
                     for p in self.perms]
        self.subsets = all_subsets(n)
        self.classes = rearrangement_classes(n)
        # R_J^{-1} as index lists; Des(pi^{-1}) ⊆ J
        inv = [0] * N
        for i, p in enumerate(self.perms):
            q = [0] * n
            for pos, v in enumerate(p, 1):
                q[v - 1] = pos
            inv[i] = self.index[tuple(q)]
        self.inverse = inv
        self.r_class = {}
        self.d_class = {}
        for J in self.subsets:
            m = _mask(J)
            self.r_class[J] = sorted(inv[i] for i in range(N) if self.des[i] & ~m == 0)
            self.d_class[J] = sorted(inv[i] for i in range(N) if self.des[i] == m)

    @lru_cache(maxsize=None)
    def partition_data(self) -> list[tuple[Blocks, int, tuple[int, ...], int]]:
        """(U, U* mask, delta_U, delta_U(U*) mask) for U in lex order of block sequences."""
        out = []
        for U in sorted(enumerate_partitions(self.n)):
            stars = u_star(U)
            d = delta(U)
            out.append((U, _mask(stars), d, _mask(d[u - 1] for u in stars)))
        return out

    def vector(self, B: Iterable[Perm]) -> Counter:
        return Counter(self.index[tuple(p)] for p in B)


@lru_cache(maxsize=None)
def tables(n: int) -> Tables:
    return Tables(n)


def _as_multiset(B) -> PermMultiset:
    return B if isinstance(B, PermMultiset) else PermMultiset(B)


def _map_mask(m: int, d: Sequence[int]) -> int:
    out, i = 0, 0
    while m:
        if m & 1:
            out |= 1 << (d[i] - 1)
        m >>= 1
        i += 1
    return out


# ---------------------------------------------------------------------------
# product statistics

def right_statistics(B: PermMultiset, classes: str = "r") -> dict[tuple, Counter]:
    """Descent statistic (as mask counts) of B R_J^{-1} for every J."""
    T = tables(B.n)
    x = T.vector(B)
    family = T.r_class if classes == "r" else T.d_class
    out = {}
    for J, R in family.items():
        stat: Counter = Counter()
        for i, m in x.items():
            row = T.mult[i]
            for t in R:
                stat[T.des[row[t]]] += m
        out[J] = stat
    return out


def left_statistics(B: PermMultiset, classes: str = "r") -> dict[tuple, Counter]:
    """Descent statistic of R_J^{-1} B for every J."""
    T = tables(B.n)
    x = T.vector(B)
    family = T.r_class if classes == "r" else T.d_class
    out = {}
    for J, R in family.items():
        stat: Counter = Counter()
        for i, m in x.items():
            for t in R:
                stat[T.des[T.mult[t][i]]] += m
        out[J] = stat
    return out


def _first_unequal_pair(stats: dict[tuple, Counter], n: int):
    """Lexicographically smallest (J, K), J ~ K, J < K, with unequal statistics."""
    best = None
    for group in rearrangement_classes(n):
        for J, K in combinations(group, 2):
            if stats[J] != stats[K]:
                pair = (J, K) if J < K else (K, J)
                if best is None or pair < best:
                    best = pair
    return best


# ---------------------------------------------------------------------------
# the five conditions

def check_a_d_symmetric(B) -> tuple[bool, Blocks | None]:
    """D-symmetry through the generating-function criterion.

    For each ordered set partition U compare the multisets
    {delta_U(Des(pi) ∩ U*)} and {Des(pi) ∩ delta_U(U*)} over pi in B.
    Returns the first failing U in lexicographic order as witness.
    """
    B = _as_multiset(B)
    if len(B) == 0:
        return True, None
    T = tables(B.n)
    des = Counter(T.des[T.index[p]] for p in B)
    for U, star_mask, d, image_mask in T.partition_data():
        lhs: Counter = Counter()
        rhs: Counter = Counter()
        for m, c in des.items():
            lhs[_map_mask(m & star_mask, d)] += c
            rhs[m & image_mask] += c
        if lhs != rhs:
            return False, U
    return True, None


def check_b_d_commutative(B, _right=None, _left=None) -> tuple[bool, tuple | None]:
    B = _as_multiset(B)
    if len(B) == 0:
        return True, None
    right = _right or right_statistics(B)
    left = _left or left_statistics(B)
    for J in sorted(right):
        if right[J] != left[J]:
            return False, J
    return True, None


def check_c_right(B, _right=None) -> tuple[bool, tuple | None]:
    B = _as_multiset(B)
    if len(B) == 0:
        return True, None
    witness = _first_unequal_pair(_right or right_statistics(B), B.n)
    return witness is None, witness


def check_d_left(B, _left=None) -> tuple[bool, tuple | None]:
    B = _as_multiset(B)
    if len(B) == 0:
        return True, None
    witness = _first_unequal_pair(_left or left_statistics(B), B.n)
    return witness is None, witness


def check_e_symmetric(B) -> tuple[bool, tuple | None]:
    """|B_J| = |B_K| for all J ~ K, cross-checked against the M-expansion of Q(B)."""
    B = _as_multiset(B)
    n = B.n
    counts = qsym.b_coefficients(B, n)
    witness = None
    for group in rearrangement_classes(n):
        for J, K in combinations(group, 2):
            if counts[J] != counts[K]:
                pair = (J, K)
                if witness is None or pair < witness:
                    witness = pair
    direct = witness is None
    if len(B):
        via_qsym = qsym.is_symmetric(qsym.f_to_m(qsym.q_of(B, n)))
        if via_qsym != direct:
            raise InternalConsistencyError("|B_J| route and M-expansion route disagree")
    return direct, witness


@dataclass
class ConditionReport:
    flags: dict[str, bool]
    witnesses: dict[str, Any] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    @property
    def agree(self) -> bool:
        return len(set(self.flags.values())) == 1

    def to_json(self) -> dict:
        return {
            "flags": dict(self.flags),
            "agree": self.agree,
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items() if v is not None},
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
        }


def _jsonable(v):
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


def check_theorem(B) -> ConditionReport:
    """Run the five condition checkers independently and collect the flags."""
    B = _as_multiset(B)
    flags, witnesses, timings = {}, {}, {}

    def run(name, fn, *args):
        t0 = time.perf_counter()
        flags[name], witnesses[name] = fn(B, *args)
        timings[name] = time.perf_counter() - t0

    run("a_d_symmetric", check_a_d_symmetric)
    t0 = time.perf_counter()
    right = right_statistics(B) if len(B) else None
    left = left_statistics(B) if len(B) else None
    shared = time.perf_counter() - t0
    run("b_d_commutative", check_b_d_commutative, right, left)
    run("c_right_invariant", check_c_right, right)
    run("d_left_invariant", check_d_left, left)
    run("e_symmetric", check_e_symmetric)
    timings["products"] = shared
    return ConditionReport(flags, witnesses, timings)


# ---------------------------------------------------------------------------
# corollaries

def check_er_conjecture(B) -> tuple[bool, tuple | None, bool]:
    """B D_J^{-1} ≡ D_J^{-1} B for every J.

    Returns (holds, first failing J, advisory) where ``advisory`` is True when
    B is not fine, in which case the statement carries no guarantee.
    """
    B = _as_multiset(B)
    advisory = not qsym.classify(B, B.n).fine
    if len(B) == 0:
        return True, None, advisory
    right = right_statistics(B, "d")
    left = left_statistics(B, "d")
    for J in sorted(right):
        if right[J] != left[J]:
            return False, J, advisory
    return True, None, advisory


def _stat_symmetric(stat: Counter, n: int) -> bool:
    """Whether a descent statistic (mask counts) has a symmetric Q."""
    sizes = {}
    for J in all_subsets(n):
        m = _mask(J)
        sizes[J] = sum(c for d, c in stat.items() if d & ~m == 0)
    return all(len({sizes[J] for J in g}) == 1 for g in rearrangement_classes(n))


def check_closure(B, J: Iterable[int]) -> bool:
    """Both B R_J^{-1} and R_J^{-1} B are symmetric."""
    B = _as_multiset(B)
    J = tuple(sorted(J))
    if len(B) == 0:
        return True
    T = tables(B.n)
    x = T.vector(B)
    R = T.r_class[J]
    right: Counter = Counter()
    left: Counter = Counter()
    for i, m in x.items():
        for t in R:
            right[T.des[T.mult[i][t]]] += m
            left[T.des[T.mult[t][i]]] += m
    return _stat_symmetric(right, B.n) and _stat_symmetric(left, B.n)


# ---------------------------------------------------------------------------
# objects from the sufficiency argument

def r_s_of(U: Blocks) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(r(U), s(U)) = ([n-1] minus U*, [n-1] minus delta_U(U*))."""
    n = sum(map(len, U))
    stars = set(u_star(U))
    d = delta(U)
    image = {d[u - 1] for u in stars}
    r = tuple(i for i in range(1, n) if i not in stars)
    s = tuple(i for i in range(1, n) if i not in image)
    return r, s


def rearranged(alpha: Sequence[int], I: Iterable[int]) -> tuple[int, ...]:
    """alpha(I): parts indexed by I (in order), then the remaining parts."""
    I = sorted(I)
    rest = [i for i in range(1, len(alpha) + 1) if i not in set(I)]
    return tuple(alpha[i - 1] for i in I) + tuple(alpha[i - 1] for i in rest)


def s_k(k: int, alpha: Sequence[int], prime: bool = False) -> list[tuple[int, ...]]:
    """Index sets I ⊆ [p] with parts summing to k; ``prime`` drops a prefix [m]."""
    p = len(alpha)
    out = []
    for size in range(p + 1):
        for I in combinations(range(1, p + 1), size):
            if sum(alpha[i - 1] for i in I) == k:
                if prime and I == tuple(range(1, size + 1)):
                    continue
                out.append(I)
    return out


def pi_k(k: int, alpha: Sequence[int]) -> list[Blocks]:
    """Partitions U of shape alpha with Des(delta_U) = {k}."""
    n = sum(alpha)
    return [U for U in enumerate_partitions(n, alpha) if descent_set(delta(U)) == (k,)]


def _is_interval(block: Sequence[int]) -> bool:
    return block[-1] - block[0] + 1 == len(block)


def gamma_k(k: int, alpha: Sequence[int]) -> list[Blocks]:
    return [U for U in pi_k(k, alpha) if all(_is_interval(b) for b in U)]


def gamma_bijection(k: int, alpha: Sequence[int]) -> dict[tuple[int, ...], Blocks]:
    """The map I -> f(I) from S'_k(alpha) onto the interval partitions in Pi_k(alpha).

    Blocks indexed by I tile [k] as consecutive intervals in index order and
    the remaining blocks tile [k+1, n] the same way.
    """
    alpha = tuple(alpha)
    n = sum(alpha)
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    out = {}
    for I in s_k(k, alpha, prime=True):
        blocks: list[tuple[int, ...] | None] = [None] * len(alpha)
        start = 1
        order = list(I) + [i for i in range(1, len(alpha) + 1) if i not in set(I)]
        for i in order:
            blocks[i - 1] = tuple(range(start, start + alpha[i - 1]))
            start += alpha[i - 1]
        out[I] = tuple(blocks)
    return out


def check_gamma_bijection(k: int, alpha: Sequence[int]) -> bool:
    """f is injective, lands exactly on Gamma_k(alpha), and co(r(f(I))) = alpha(I)."""
    f = gamma_bijection(k, alpha)
    images = list(f.values())
    target = set(gamma_k(k, alpha))
    if len(set(images)) != len(images) or set(images) != target:
        return False
    n = sum(alpha)
    return all(composition(r_s_of(U)[0], n) == rearranged(alpha, I) for I, U in f.items())
