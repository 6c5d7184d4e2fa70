"""
Degree-n quasisymmetric and symmetric functions as sparse integer vectors.

Four bases are supported: fundamental ``F`` and monomial ``M`` quasisymmetric
functions (indexed by compositions), and monomial ``m`` and Schur ``s``
symmetric functions (indexed by partitions).  Every change of basis used
here is unitriangular, so coefficients stay integers throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from . import permcore
from .permcore import all_subsets, composition, descent_set, subset_of
from .tableaux import standard_tableaux, tableau_descents

BASES = ("F", "M", "m", "s")
Index = tuple[int, ...]


class BasisError(ValueError):
    pass


class AsymmetryError(ValueError):
    """Raised when a monomial quasisymmetric vector is not symmetric."""

    def __init__(self, witness: tuple[Index, Index], coeffs: tuple[int, int]):
        self.witness = witness
        self.coeffs = coeffs
        a, b = witness
        super().__init__(f"M{a} has coefficient {coeffs[0]} but M{b} has {coeffs[1]}")


def partitions(n: int) -> list[Index]:
    """Partitions of n in decreasing lexicographic order."""
    def rec(m, bound):
        if m == 0:
            yield ()
            return
        for first in range(min(m, bound), 0, -1):
            for rest in rec(m - first, first):
                yield (first, *rest)
    return list(rec(n, n))


def is_partition(lam: Iterable[int], n: int | None = None) -> bool:
    lam = tuple(lam)
    ok = all(x > 0 for x in lam) and list(lam) == sorted(lam, reverse=True)
    return ok and (n is None or sum(lam) == n)


def refinements(alpha: Index) -> list[Index]:
    """All compositions beta refining alpha (beta <= alpha), alpha included."""
    n = sum(alpha)
    J = set(subset_of(alpha))
    free = [i for i in range(1, n) if i not in J]
    out = []
    for k in range(len(free) + 1):
        for extra in combinations(free, k):
            out.append(composition(J.union(extra), n))
    return out


def dominates(lam: Index, mu: Index) -> bool:
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


@dataclass(frozen=True)
class QVector:
    """A graded coefficient vector in one of the bases F, M, m, s.

    Zero coefficients are never stored.  Vectors in different bases or
    degrees refuse to be added.
    """

    degree: int
    basis: str
    terms: Mapping[Index, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASES:
            raise BasisError(f"unknown basis {self.basis!r}")
        clean = {}
        for idx, c in self.terms.items():
            idx = tuple(int(x) for x in idx)
            if sum(idx) != self.degree or any(x <= 0 for x in idx):
                raise ValueError(f"index {idx} is not a composition of {self.degree}")
            if self.basis in "ms" and not is_partition(idx):
                raise ValueError(f"index {idx} is not a partition")
            if c:
                clean[idx] = clean.get(idx, 0) + int(c)
        object.__setattr__(self, "terms", {k: v for k, v in sorted(clean.items()) if v})

    def __getitem__(self, idx) -> int:
        return self.terms.get(tuple(idx), 0)

    def coeff_subset(self, J: Iterable[int]) -> int:
        """Coefficient of the composition basis element indexed by J ⊆ [n-1]."""
        self._require("FM")
        return self[composition(J, self.degree)]

    def __add__(self, other: QVector) -> QVector:
        self._compatible(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return QVector(self.degree, self.basis, terms)

    def __neg__(self) -> QVector:
        return QVector(self.degree, self.basis, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: QVector) -> QVector:
        return self + (-other)

    def __rmul__(self, c: int) -> QVector:
        return QVector(self.degree, self.basis, {k: c * v for k, v in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _compatible(self, other: QVector):
        if not isinstance(other, QVector):
            raise TypeError("can only combine QVector instances")
        if (self.basis, self.degree) != (other.basis, other.degree):
            raise BasisError(f"cannot combine {self.basis}/{self.degree} "
                             f"with {other.basis}/{other.degree}")

    def _require(self, bases: str):
        if self.basis not in bases:
            raise BasisError(f"expected basis in {tuple(bases)}, got {self.basis!r}")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, c in self.terms.items():
            label = f"{self.basis}[({','.join(map(str, idx))})]"
            parts.append(label if c == 1 else f"{c}*{label}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": [{"index": list(k), "coeff": v} for k, v in self.terms.items()],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> QVector:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["degree"], data["basis"],
                   {tuple(t["index"]): t["coeff"] for t in data["terms"]})


def monomial_sym_to_M(v: QVector) -> QVector:
    """Expand m_lambda as the sum of M_alpha over rearrangements alpha."""
    v._require("m")
    terms: dict[Index, int] = {}
    for alpha in permcore.all_compositions(v.degree):
        c = v[tuple(sorted(alpha, reverse=True))]
        if c:
            terms[alpha] = c
    return QVector(v.degree, "M", terms)


def f_to_m(v: QVector) -> QVector:
    """F_alpha = sum of M_beta over refinements beta of alpha."""
    v._require("F")
    terms: dict[Index, int] = {}
    for alpha, c in v.terms.items():
        for beta in refinements(alpha):
            terms[beta] = terms.get(beta, 0) + c
    return QVector(v.degree, "M", terms)


def m_to_f(v: QVector) -> QVector:
    """Inverse of :func:`f_to_m` by Mobius inversion on the subset lattice."""
    v._require("M")
    n = v.degree
    terms: dict[Index, int] = {}
    for beta, c in v.terms.items():
        K = set(subset_of(beta))
        # M_K = sum over J ⊇ K of (-1)^{|J-K|} F_J
        free = [i for i in range(1, n) if i not in K]
        for k in range(len(free) + 1):
            for extra in combinations(free, k):
                alpha = composition(K.union(extra), n)
                terms[alpha] = terms.get(alpha, 0) + (-1) ** k * c
    return QVector(n, "F", terms)


def q_of(B: Iterable[permcore.Perm], n: int | None = None) -> QVector:
    """Q(B): the sum of F_{Des(pi)} over pi in B, with multiplicity."""
    if n is None:
        n = getattr(B, "n", None)
    terms: dict[Index, int] = {}
    for pi in B:
        if n is None:
            n = len(pi)
        alpha = composition(descent_set(pi), n)
        terms[alpha] = terms.get(alpha, 0) + 1
    return QVector(n or 0, "F", terms)


def asymmetry_witness(v: QVector) -> tuple[tuple[Index, Index], tuple[int, int]] | None:
    """Lexicographically smallest pair alpha < beta, alpha ~ beta, with unequal coefficients."""
    v._require("M")
    best = None
    classes: dict[Index, list[Index]] = {}
    for alpha in permcore.all_compositions(v.degree):
        classes.setdefault(tuple(sorted(alpha, reverse=True)), []).append(alpha)
    for members in classes.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if v[a] != v[b] and (best is None or (a, b) < best):
                    best = (a, b)
    if best is None:
        return None
    return best, (v[best[0]], v[best[1]])


def is_symmetric(v: QVector) -> bool:
    v._require("M")
    return asymmetry_witness(v) is None


def to_m_basis(v: QVector) -> QVector:
    """Collapse a symmetric M-vector onto the monomial symmetric basis."""
    found = asymmetry_witness(v)
    if found is not None:
        raise AsymmetryError(*found)
    terms = {}
    for alpha, c in v.terms.items():
        terms[tuple(sorted(alpha, reverse=True))] = c
    return QVector(v.degree, "m", terms)


# ---------------------------------------------------------------------------
# Kostka numbers and the Schur basis

def _horizontal_strips(outer: Index, k: int) -> list[Index]:
    """Shapes nu with outer/nu a horizontal strip of size k."""
    out = []
    outer = list(outer)

    def rec(i, remaining, acc):
        if i == len(outer):
            if remaining == 0:
                out.append(tuple(x for x in acc if x))
            return
        lower = outer[i + 1] if i + 1 < len(outer) else 0
        for take in range(0, min(remaining, outer[i] - lower) + 1):
            rec(i + 1, remaining - take, acc + [outer[i] - take])

    rec(0, k, [])
    return out


@lru_cache(maxsize=None)
def kostka(lam: Index, mu: Index) -> int:
    """Number of semistandard tableaux of shape lam and content mu.

    Counts fillings by peeling off the largest letter, whose boxes form a
    horizontal strip, recursively.
    """
    lam = tuple(x for x in lam if x)
    mu = tuple(x for x in mu if x)
    if sum(lam) != sum(mu):
        raise ValueError(f"|{lam}| != |{mu}|")
    if not mu:
        return 1
    *rest, last = mu
    return sum(kostka(nu, tuple(rest)) for nu in _horizontal_strips(lam, last))


@lru_cache(maxsize=None)
def kostka_table(n: int) -> dict[tuple[Index, Index], int]:
    lams = partitions(n)
    return {(lam, mu): kostka(lam, mu) for lam in lams for mu in lams}


def s_to_m(v: QVector) -> QVector:
    v._require("s")
    K = kostka_table(v.degree)
    terms: dict[Index, int] = {}
    for lam, c in v.terms.items():
        for mu in partitions(v.degree):
            if K[lam, mu]:
                terms[mu] = terms.get(mu, 0) + c * K[lam, mu]
    return QVector(v.degree, "m", terms)


def m_to_s(v: QVector) -> QVector:
    """Solve v = sum c_lam s_lam through the unitriangular Kostka system."""
    v._require("m")
    K = kostka_table(v.degree)
    c: dict[Index, int] = {}
    # lex-decreasing order extends dominance: K[lam, mu] != 0 needs lam >= mu
    for mu in partitions(v.degree):
        rest = v[mu] - sum(c[lam] * K[lam, mu] for lam in c if lam != mu)
        c[mu] = rest  # K[mu, mu] == 1
    return QVector(v.degree, "s", c)


def schur_in_f(lam: Iterable[int]) -> QVector:
    """s_lam as the sum of F_{Des Q} over standard tableaux Q of shape lam."""
    lam = tuple(lam)
    n = sum(lam)
    terms: dict[Index, int] = {}
    for T in standard_tableaux(lam):
        alpha = composition(tableau_descents(T), n)
        terms[alpha] = terms.get(alpha, 0) + 1
    return QVector(n, "F", terms)


# ---------------------------------------------------------------------------
# classification

NOT_SYMMETRIC = "not_symmetric"
SYMMETRIC_NOT_FINE = "symmetric_not_fine"
FINE = "fine"


@dataclass(frozen=True)
class Classification:
    kind: str
    q: QVector
    m_expansion: QVector
    schur: QVector | None = None
    witness: tuple[Index, Index] | None = None

    @property
    def symmetric(self) -> bool:
        return self.kind != NOT_SYMMETRIC

    @property
    def fine(self) -> bool:
        return self.kind == FINE

    def to_json(self) -> dict:
        out = {"kind": self.kind, "F": self.q.to_json(), "M": self.m_expansion.to_json()}
        if self.schur is not None:
            out["s"] = self.schur.to_json()
        if self.witness is not None:
            a, b = self.witness
            out["witness"] = {"pair": [list(a), list(b)],
                              "coeffs": [self.m_expansion[a], self.m_expansion[b]]}
        return out


def classify(B: Iterable[permcore.Perm], n: int | None = None) -> Classification:
    q = q_of(B, n)
    M = f_to_m(q)
    found = asymmetry_witness(M)
    if found is not None:
        return Classification(NOT_SYMMETRIC, q, M, witness=found[0])
    s = m_to_s(to_m_basis(M))
    kind = FINE if all(c >= 0 for c in s.terms.values()) else SYMMETRIC_NOT_FINE
    return Classification(kind, q, M, schur=s)


def b_coefficients(B: Iterable[permcore.Perm], n: int) -> dict[tuple[int, ...], int]:
    """|B_J| = #{pi in B : Des(pi) ⊆ J} for each J ⊆ [n-1], counted directly."""
    des = [set(descent_set(p)) for p in B]
    return {J: sum(1 for d in des if d.issubset(J)) for J in all_subsets(n)}
