"""
Permutations, multisets of permutations, descent statistics and the
structural maps attached to ordered set partitions.

Permutations are tuples in one-line notation with 1-based values, so
``(4, 1, 3, 2)`` is the permutation 4132.  Subsets of ``[n-1]`` are sorted
tuples.  An ordered set partition is a tuple of sorted tuples (the blocks).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]
Subset = tuple[int, ...]
Blocks = tuple[tuple[int, ...], ...]


class InvalidWordError(ValueError):
    pass


class DegreeMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations and words

def check_perm(word: Sequence[int]) -> Perm:
    """Return ``word`` as a permutation tuple, raising if it is not one."""
    p = tuple(int(x) for x in word)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise InvalidWordError(f"{p} is not a permutation of [{len(p)}]")
    return p


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def all_perms(n: int) -> list[Perm]:
    """All of S_n in lexicographic order."""
    return list(permutations(range(1, n + 1)))


def descent_set(pi: Sequence[int]) -> Subset:
    return tuple(i + 1 for i in range(len(pi) - 1) if pi[i] > pi[i + 1])


def inverse(pi: Perm) -> Perm:
    inv = [0] * len(pi)
    for i, v in enumerate(pi, 1):
        inv[v - 1] = i
    return tuple(inv)


def multiply(pi: Perm, tau: Perm) -> Perm:
    """Group product with ``(pi . tau)(i) = pi(tau(i))``."""
    if len(pi) != len(tau):
        raise DegreeMismatchError(f"degrees {len(pi)} and {len(tau)} differ")
    return tuple(pi[t - 1] for t in tau)


def standardize(word: Sequence[int]) -> Perm:
    """The permutation of [len(word)] order-isomorphic to ``word``."""
    if len(set(word)) != len(word):
        raise InvalidWordError(f"word {tuple(word)} has repeated letters")
    rank = {v: i for i, v in enumerate(sorted(word), 1)}
    return tuple(rank[v] for v in word)


def shuffle(u: Sequence[int], v: Sequence[int]) -> set[tuple[int, ...]]:
    """All interleavings of ``u`` and ``v`` keeping each word's letter order."""
    if set(u) & set(v):
        raise InvalidWordError("shuffled words must use disjoint alphabets")
    u, v = tuple(u), tuple(v)
    n = len(u) + len(v)
    out = set()
    for slots in combinations(range(n), len(u)):
        word = [0] * n
        chosen = set(slots)
        iu = iter(u)
        iv = iter(v)
        for i in range(n):
            word[i] = next(iu) if i in chosen else next(iv)
        out.add(tuple(word))
    return out


def shifted_shuffle(pi: Perm, tau: Perm) -> set[Perm]:
    """``pi`` shuffled with ``tau`` shifted up by ``len(pi)``."""
    n = len(pi)
    return shuffle(pi, tuple(t + n for t in tau))


# ---------------------------------------------------------------------------
# subsets and compositions

def composition(subset: Iterable[int], n: int) -> tuple[int, ...]:
    """co(J): consecutive differences of 0 < j_1 < ... < j_s < n."""
    J = sorted(subset)
    if J and (J[0] < 1 or J[-1] > n - 1):
        raise ValueError(f"{tuple(J)} is not a subset of [{n - 1}]")
    if n == 0:
        return ()
    cuts = [0, *J, n]
    return tuple(b - a for a, b in zip(cuts, cuts[1:]))


def subset_of(alpha: Sequence[int]) -> Subset:
    """Inverse of :func:`composition`: partial sums except the last."""
    out, total = [], 0
    for part in alpha[:-1]:
        total += part
        out.append(total)
    return tuple(out)


def all_subsets(n: int) -> list[Subset]:
    """All subsets of [n-1], ordered by size then lexicographically."""
    ground = range(1, n)
    return [s for k in range(n) for s in combinations(ground, k)]


def all_compositions(n: int) -> list[tuple[int, ...]]:
    return sorted(composition(J, n) for J in all_subsets(n))


def rearrangement_classes(n: int) -> list[list[Subset]]:
    """Subsets of [n-1] grouped by J ~ K (co(J) a rearrangement of co(K))."""
    groups: dict[tuple[int, ...], list[Subset]] = {}
    for J in all_subsets(n):
        key = tuple(sorted(composition(J, n), reverse=True))
        groups.setdefault(key, []).append(J)
    return [sorted(g) for _, g in sorted(groups.items())]


def similar(J: Sequence[int], K: Sequence[int], n: int) -> bool:
    return sorted(composition(J, n)) == sorted(composition(K, n))


def star(block: Iterable[int]) -> set[int]:
    """S* = {i in S : i+1 in S}."""
    s = set(block)
    return {i for i in s if i + 1 in s}


# ---------------------------------------------------------------------------
# multisets

class PermMultiset:
    """A finite multiset of permutations of a common degree.

    Iteration yields permutations with repetition, in lexicographic order.
    """

    __slots__ = ("n", "_counts")

    def __init__(self, perms: Iterable[Sequence[int]] | dict = (), n: int | None = None):
        counts: Counter = Counter()
        items = perms.items() if isinstance(perms, dict) else ((p, 1) for p in perms)
        for p, m in items:
            p = check_perm(p)
            if m < 0:
                raise ValueError("multiplicities must be nonnegative")
            if m:
                counts[p] += m
        degrees = {len(p) for p in counts}
        if len(degrees) > 1:
            raise DegreeMismatchError(f"mixed degrees {sorted(degrees)}")
        if degrees:
            (d,) = degrees
            if n is not None and n != d:
                raise DegreeMismatchError(f"expected degree {n}, found {d}")
            n = d
        self.n = n if n is not None else 0
        self._counts = counts

    def __iter__(self) -> Iterator[Perm]:
        for p in sorted(self._counts):
            for _ in range(self._counts[p]):
                yield p

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __contains__(self, p) -> bool:
        return tuple(p) in self._counts

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermMultiset):
            return NotImplemented
        return self.n == other.n and self._counts == other._counts

    def __hash__(self):
        return hash((self.n, frozenset(self._counts.items())))

    def __repr__(self) -> str:
        return f"PermMultiset({self.items()!r}, n={self.n})"

    def items(self) -> list[tuple[Perm, int]]:
        return sorted(self._counts.items())

    def support(self) -> list[Perm]:
        return sorted(self._counts)

    def count(self, p) -> int:
        return self._counts.get(tuple(p), 0)

    def is_set(self) -> bool:
        return all(m == 1 for m in self._counts.values())

    def union(self, other: PermMultiset) -> PermMultiset:
        """Disjoint (multiplicity-adding) union."""
        if self._counts and other._counts and self.n != other.n:
            raise DegreeMismatchError("degrees differ")
        return PermMultiset(dict(self._counts + other._counts), n=self.n or other.n)

    __or__ = union


def multiset_product(A: PermMultiset, B: PermMultiset) -> PermMultiset:
    """AB: every product pi*tau, multiplicities multiplied."""
    if A.n != B.n and len(A) and len(B):
        raise DegreeMismatchError(f"degrees {A.n} and {B.n} differ")
    counts: Counter = Counter()
    for p, m in A.items():
        for t, k in B.items():
            counts[multiply(p, t)] += m * k
    return PermMultiset(dict(counts), n=A.n)


def descent_statistic(B: Iterable[Perm]) -> Counter:
    """Multiset of descent sets, as ``Counter[subset -> count]``."""
    return Counter(descent_set(p) for p in B)


def equivalent(A: PermMultiset, B: PermMultiset) -> bool:
    """A ≡ B: equal multisets of descent sets."""
    return descent_statistic(A) == descent_statistic(B)


@lru_cache(maxsize=None)
def _inverse_j_class(n: int, J: Subset) -> tuple[Perm, ...]:
    allowed = set(J)
    return tuple(sorted(inverse(p) for p in permutations(range(1, n + 1))
                        if allowed.issuperset(descent_set(p))))


def inverse_j_class(n: int, J: Iterable[int]) -> PermMultiset:
    """R_J^{-1} = {pi^{-1} : Des(pi) ⊆ J}."""
    return PermMultiset(_inverse_j_class(n, tuple(sorted(J))), n=n)


@lru_cache(maxsize=None)
def _d_class(n: int, J: Subset) -> tuple[Perm, ...]:
    return tuple(sorted(inverse(p) for p in permutations(range(1, n + 1))
                        if descent_set(p) == J))


def d_class(n: int, J: Iterable[int]) -> PermMultiset:
    """D_J^{-1} = {pi^{-1} : Des(pi) = J}."""
    return PermMultiset(_d_class(n, tuple(sorted(J))), n=n)


# ---------------------------------------------------------------------------
# conjugacy classes

def cycle_type(pi: Perm) -> tuple[int, ...]:
    seen = [False] * (len(pi) + 1)
    lengths = []
    for start in range(1, len(pi) + 1):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = pi[i - 1]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def z_factor(lam: Sequence[int]) -> int:
    """z_lambda = prod i^{m_i} m_i!, the centralizer order."""
    z = 1
    for part, mult in Counter(lam).items():
        z *= part ** mult * factorial(mult)
    return z


def conjugacy_class(n: int, lam: Sequence[int]) -> PermMultiset:
    """All permutations of S_n with cycle type ``lam``."""
    lam = tuple(sorted((int(x) for x in lam), reverse=True))
    if sum(lam) != n or any(x <= 0 for x in lam):
        raise ValueError(f"{lam} is not a partition of {n}")
    return PermMultiset([p for p in permutations(range(1, n + 1))
                         if cycle_type(p) == lam], n=n)


# ---------------------------------------------------------------------------
# ordered set partitions

def check_partition(blocks: Iterable[Iterable[int]], n: int | None = None) -> Blocks:
    """Normalize and validate an ordered set partition of [n]."""
    U = tuple(tuple(sorted(int(x) for x in b)) for b in blocks)
    flat = [x for b in U for x in b]
    if n is None:
        n = len(flat)
    if any(not b for b in U):
        raise ValueError("blocks must be nonempty")
    if sorted(flat) != list(range(1, n + 1)):
        raise ValueError(f"{U} is not an ordered set partition of [{n}]")
    return U


def shape(U: Blocks) -> tuple[int, ...]:
    return tuple(len(b) for b in U)


def enumerate_partitions(n: int, alpha: Sequence[int] | None = None) -> Iterator[Blocks]:
    """Ordered set partitions of [n]; only block sizes ``alpha`` if given.

    Without ``alpha`` the partitions come grouped by shape, shapes in the
    order of :func:`all_compositions`.
    """
    if alpha is None:
        for a in all_compositions(n):
            yield from enumerate_partitions(n, a)
        return
    alpha = tuple(alpha)
    if sum(alpha) != n or any(a <= 0 for a in alpha):
        raise ValueError(f"{alpha} is not a composition of {n}")

    def rec(remaining: tuple[int, ...], sizes: tuple[int, ...]) -> Iterator[Blocks]:
        if not sizes:
            yield ()
            return
        for first in combinations(remaining, sizes[0]):
            rest = tuple(x for x in remaining if x not in first)
            for tail in rec(rest, sizes[1:]):
                yield (first, *tail)

    yield from rec(tuple(range(1, n + 1)), alpha)


def multinomial(alpha: Sequence[int]) -> int:
    out, total = 1, 0
    for a in alpha:
        total += a
        out *= comb(total, a)
    return out


def fubini(n: int) -> int:
    """Number of ordered set partitions of [n]."""
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def delta(U: Blocks) -> Perm:
    """delta_U: block i's positions carry the i-th run of values, increasingly."""
    n = sum(len(b) for b in U)
    out = [0] * n
    value = 1
    for block in U:
        for pos in sorted(block):
            out[pos - 1] = value
            value += 1
    return tuple(out)


def u_star(U: Blocks) -> Subset:
    return tuple(sorted(set().union(*(star(b) for b in U)))) if U else ()


def sigma(U: Blocks, pi: Perm) -> Perm:
    """Place std of the i-th segment of ``pi`` (shifted) on the positions of U_i."""
    n = len(pi)
    if sum(len(b) for b in U) != n:
        raise DegreeMismatchError("partition and permutation degrees differ")
    out = [0] * n
    start = 0
    for block in U:
        seg = standardize(pi[start:start + len(block)])
        for pos, val in zip(sorted(block), seg):
            out[pos - 1] = val + start
        start += len(block)
    return tuple(out)


def rho(U: Blocks, pi: Perm) -> Perm:
    """rho_U(pi) = delta_W . pi with W_i = pi(U_i)."""
    if sum(len(b) for b in U) != len(pi):
        raise DegreeMismatchError("partition and permutation degrees differ")
    W = tuple(tuple(sorted(pi[u - 1] for u in b)) for b in U)
    return multiply(delta(W), pi)


def apply_to_set(pi: Perm, S: Iterable[int]) -> Subset:
    """Image pi(S) as a sorted tuple."""
    return tuple(sorted(pi[s - 1] for s in S))
