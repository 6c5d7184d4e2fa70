"""
Explicit D-symmetry bijections.

For an ordered set partition U of [n] and a multiset B, a D-symmetry
bijection is a self-map Psi of B such that for every u in U* and pi in B,

    u in Des(pi)  <=>  delta_U(u) in Des(Psi(pi)).

On a Knuth class the two-block map keeps the insertion tableau and promotes
the recording tableau; more blocks are handled by composing two-block maps.
Fine multisets are transported onto a union of Knuth classes through a
descent-preserving matching, and arbitrary symmetric multisets are handled
by cancelling a fine complement with an involution-principle iteration.

Multisets are treated as token lists: ``tokens[i]`` is the permutation
carried by token ``i`` and a bijection is a list ``mapping`` with
``mapping[i]`` the image token.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import qsym
from .permcore import (
    Blocks, Perm, PermMultiset, all_perms, check_partition, delta, descent_set,
    enumerate_partitions, u_star,
)
from .tableaux import TableauPair, knuth_class, promote_v, rs, rs_inverse, superstandard


class InternalConsistencyError(RuntimeError):
    """A construction violated a property it is supposed to guarantee."""


class NotSymmetricError(ValueError):
    pass


def psi_two_block(U2: Blocks, pi: Perm) -> Perm:
    """pi -> RS^{-1}(P, d_V Q) for the two-block partition (U, V)."""
    if len(U2) == 1:
        return tuple(pi)
    if len(U2) != 2:
        raise ValueError("expected an ordered set partition with two blocks")
    pair = rs(pi)
    return rs_inverse(TableauPair(pair.p, promote_v(pair.q, U2[1])))


def split_last(U: Blocks) -> tuple[Blocks, Blocks]:
    """The pair (V, W) with Psi_U = Psi_W o Psi_V and delta_U = delta_W o delta_V.

    V merges the last two blocks of U; W is the two-block partition whose
    second block is delta_V applied to the last block of U.
    """
    n = sum(map(len, U))
    V = (*U[:-2], tuple(sorted(U[-2] + U[-1])))
    dv = delta(V)
    last = tuple(sorted(dv[u - 1] for u in U[-1]))
    first = tuple(x for x in range(1, n + 1) if x not in set(last))
    return V, (first, last)


@lru_cache(maxsize=None)
def _psi_general(U: Blocks, pi: Perm) -> Perm:
    if len(U) <= 1:
        return pi
    if len(U) == 2:
        return psi_two_block(U, pi)
    V, W = split_last(U)
    return psi_two_block(W, _psi_general(V, pi))


def psi_general(U: Iterable[Iterable[int]], pi: Sequence[int],
                B: PermMultiset | None = None) -> Perm:
    """Psi_U on the Knuth class of ``pi``.

    The image always stays in the Knuth class of ``pi``, so the map is a
    bijection of any disjoint union of Knuth classes.  ``B``, if given, is
    only used to check that ``pi`` belongs to it.
    """
    pi = tuple(pi)
    U = check_partition(U, len(pi))
    if B is not None and pi not in B:
        raise ValueError(f"{pi} is not in the multiset")
    return _psi_general(U, pi)


# ---------------------------------------------------------------------------
# bijections on multisets, as token maps

def satisfies_dsym(U: Blocks, tokens: Sequence[Perm], mapping: Sequence[int]) -> bool:
    """Check ``mapping`` is a permutation of the tokens satisfying the D-symmetry condition."""
    if sorted(mapping) != list(range(len(tokens))):
        return False
    stars = u_star(U)
    d = delta(U)
    for i, j in enumerate(mapping):
        src, dst = set(descent_set(tokens[i])), set(descent_set(tokens[j]))
        for u in stars:
            if (u in src) != (d[u - 1] in dst):
                return False
    return True


class DegreeData:
    """S_n in lex order with descent masks, plus Psi_U tables on S_n."""

    def __init__(self, n: int):
        self.n = n
        self.perms = all_perms(n)
        self.index = {p: i for i, p in enumerate(self.perms)}
        self.des = np.array([sum(1 << (i - 1) for i in descent_set(p)) for p in self.perms],
                            dtype=np.int64)
        self._psi: dict[Blocks, np.ndarray] = {}

    def psi_table(self, U: Blocks) -> np.ndarray:
        """psi_general(U, .) on S_n as an index array."""
        if U not in self._psi:
            self._psi[U] = np.array([self.index[_psi_general(U, p)] for p in self.perms],
                                    dtype=np.int64)
        return self._psi[U]


@lru_cache(maxsize=None)
def degree_data(n: int) -> DegreeData:
    return DegreeData(n)


class KnuthUnion:
    """Tokens of ``count`` copies of K(P_lam) per shape, P_lam superstandard."""

    def __init__(self, n: int, shapes: dict[tuple[int, ...], int]):
        dd = degree_data(n)
        perms, offsets = [], []
        # slot[perm index] = position of the perm inside its own Knuth class
        self.slot = np.full(len(dd.perms), -1, dtype=np.int64)
        for lam, count in sorted(shapes.items()):
            cls = knuth_class(superstandard(lam))
            for pos, p in enumerate(cls):
                self.slot[dd.index[p]] = pos
            for _ in range(count):
                offsets.extend([len(perms)] * len(cls))
                perms.extend(dd.index[p] for p in cls)
        self.n = n
        self.perm_idx = np.array(perms, dtype=np.int64)
        self.offset = np.array(offsets, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.perm_idx)

    def psi(self, U: Blocks) -> np.ndarray:
        """Psi_U on the union: each token moves inside its own copy."""
        table = degree_data(self.n).psi_table(U)
        return self.offset + self.slot[table[self.perm_idx]]

    def psi_stack(self, partitions: tuple[Blocks, ...]) -> np.ndarray:
        """Rows psi(U) for each U in ``partitions``, cached."""
        cache = self.__dict__.setdefault("_stacks", {})
        if partitions not in cache:
            cache[partitions] = np.stack([self.psi(U) for U in partitions]).reshape(
                len(partitions), len(self))
        return cache[partitions]


def descent_matching(src_des: np.ndarray, dst_des: np.ndarray) -> np.ndarray:
    """A descent-set-preserving bijection src -> dst on token indices.

    Within each descent set, tokens are paired in order of appearance.
    """
    if len(src_des) != len(dst_des):
        raise InternalConsistencyError("multisets have different sizes")
    s = np.argsort(src_des, kind="stable")
    d = np.argsort(dst_des, kind="stable")
    if not np.array_equal(src_des[s], dst_des[d]):
        raise InternalConsistencyError("multisets have different descent statistics")
    g = np.empty(len(s), dtype=np.int64)
    g[s] = d
    return g


@dataclass
class SymmetricBijection:
    """Psi_U for several ordered set partitions U on one symmetric multiset.

    ``mapping[k, i]`` is the image token of token ``i`` under the k-th
    partition.  ``max_steps`` is the longest pull-back chain met in the
    subtraction iteration and ``bound`` its hard limit.
    """

    partitions: tuple[Blocks, ...]
    tokens: list[Perm]
    mapping: np.ndarray
    complement_size: int
    max_steps: int
    bound: int

    def image(self, pi: Sequence[int], k: int = 0) -> Perm:
        """Image of the first token carrying ``pi`` under the k-th partition."""
        i = self.tokens.index(tuple(pi))
        return self.tokens[int(self.mapping[k, i])]

    def pairs(self, k: int = 0) -> list[tuple[Perm, Perm]]:
        return [(self.tokens[i], self.tokens[int(j)]) for i, j in enumerate(self.mapping[k])]

    def check(self) -> bool:
        """Every row is a bijection satisfying the D-symmetry condition."""
        if not self.tokens:
            return True
        dd = degree_data(len(self.tokens[0]))
        des = dd.des[[dd.index[p] for p in self.tokens]]
        m = len(self.tokens)
        if not (np.sort(self.mapping, axis=1) == np.arange(m)).all():
            return False
        moved, kept = condition_tables(tuple(self.partitions))
        rows = np.arange(len(self.partitions))[:, None]
        return bool((moved[rows, des[None, :]] == kept[rows, des[self.mapping]]).all())


@lru_cache(maxsize=64)
def condition_tables(partitions: tuple[Blocks, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Per partition U and descent mask D: the masks of delta_U(D ∩ U*) and D ∩ delta_U(U*).

    The D-symmetry condition for pi -> tau is moved[Des pi] == kept[Des tau].
    """
    n = sum(map(len, partitions[0])) if partitions else 0
    size = 1 << max(n - 1, 0)
    moved = np.zeros((len(partitions), size), dtype=np.int64)
    kept = np.zeros((len(partitions), size), dtype=np.int64)
    for k, U in enumerate(partitions):
        d = delta(U)
        stars = u_star(U)
        image = 0
        for u in stars:
            image |= 1 << (d[u - 1] - 1)
        for mask in range(size):
            out = 0
            for u in stars:
                if mask >> (u - 1) & 1:
                    out |= 1 << (d[u - 1] - 1)
            moved[k, mask] = out
            kept[k, mask] = mask & image
    return moved, kept


@lru_cache(maxsize=4096)
def _knuth_union(n: int, shapes: tuple[tuple[tuple[int, ...], int], ...]) -> KnuthUnion:
    return KnuthUnion(n, dict(shapes))


def symmetric_bijection(U: Iterable[Iterable[int]] | None, B: PermMultiset,
                        classification: qsym.Classification | None = None,
                        partitions: Sequence[Blocks] | None = None) -> SymmetricBijection:
    """Build Psi_U on a symmetric multiset B.

    With Q(B) = sum c_lam s_lam, the complement A takes |c_lam| copies of
    K(P_lam) for each negative c_lam, so A and A ⊔ B are both fine.  Psi on
    A ⊔ B is the Knuth-class bijection of the positive part carried over
    by a descent-preserving matching.  A token of B is sent through
    Psi_{A⊔B}; while the image lands in A it is pulled back through
    Psi_A^{-1} and pushed forward again.

    Pass ``partitions`` instead of ``U`` to build several maps at once.
    """
    n = B.n
    if partitions is None:
        partitions = [check_partition(U, n)]
    partitions = tuple(partitions)
    cls = classification or qsym.classify(B, n)
    if not cls.symmetric:
        raise NotSymmetricError(f"multiset is not symmetric (witness {cls.witness})")
    b_tokens = list(B)
    if not b_tokens:
        empty = np.zeros((len(partitions), 0), dtype=np.int64)
        return SymmetricBijection(partitions, [], empty, 0, 0, 0)

    coeffs = cls.schur.terms
    A = _knuth_union(n, tuple(sorted((lam, -c) for lam, c in coeffs.items() if c < 0)))
    C = _knuth_union(n, tuple(sorted((lam, c) for lam, c in coeffs.items() if c > 0)))
    dd = degree_data(n)
    b_idx = np.array([dd.index[p] for p in b_tokens], dtype=np.int64)
    ab_idx = np.concatenate([A.perm_idx, b_idx])
    na, total = len(A), len(ab_idx)

    # g : A ⊔ B -> C preserving descent sets
    g = descent_matching(dd.des[ab_idx], dd.des[C.perm_idx])
    g_inv = np.empty_like(g)
    g_inv[g] = np.arange(total)

    psi_ab = g_inv[C.psi_stack(partitions)[:, g]]
    psi_a_inv = _inverse_rows(A.psi_stack(partitions))

    x = psi_ab[:, na:].copy()
    steps = 0
    while True:
        inside = x < na
        if not inside.any():
            break
        steps += 1
        if steps > total:
            raise InternalConsistencyError(f"subtraction iteration exceeded {total} steps")
        r, c = np.nonzero(inside)
        x[r, c] = psi_ab[r, psi_a_inv[r, x[r, c]]]
    return SymmetricBijection(partitions, b_tokens, x - na, na, steps, total)


def _inverse_rows(M: np.ndarray) -> np.ndarray:
    inv = np.empty_like(M)
    rows = np.arange(M.shape[0])[:, None]
    inv[rows, M] = np.arange(M.shape[1])[None, :]
    return inv


@lru_cache(maxsize=None)
def all_partitions(n: int) -> tuple[Blocks, ...]:
    """Pi(n) in lexicographic order of block sequences."""
    return tuple(sorted(enumerate_partitions(n)))


def psi_symmetric(U: Iterable[Iterable[int]], B: PermMultiset, pi: Sequence[int]) -> Perm:
    """Psi_U(pi) for pi in a symmetric multiset B."""
    if tuple(pi) not in B:
        raise ValueError(f"{tuple(pi)} is not in the multiset")
    return symmetric_bijection(U, B).image(pi)
