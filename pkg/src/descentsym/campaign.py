"""
Verification campaigns: run every condition checker over a population of
multisets and aggregate how often the five flags agree.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import chain, combinations
from math import factorial

from . import qsym
from .fileio import compact
from .permcore import (
    PermMultiset, all_perms, all_subsets, conjugacy_class, d_class, inverse_j_class,
    shifted_shuffle,
)
from .sweep import InfeasibleRequest, MAX_EXHAUSTIVE_DEGREE, pattern_flags, sweep_subsets
from .tableaux import knuth_class, standard_tableaux
from .verifier import CONDITIONS, check_theorem

MODES = ("exhaustive_subsets", "random_multisets", "structured")
MAX_CHECK_DEGREE = 6
SPECIMEN_LIMIT = 25


@dataclass
class CampaignConfig:
    n: int
    mode: str
    samples: int = 1000
    max_mult: int = 3
    seed: int | None = None
    max_support: int | None = None
    workers: int = 1

    def validate(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {MODES}")
        if self.n < 1:
            raise ValueError("degree must be positive")
        if self.mode == "exhaustive_subsets" and self.n > MAX_EXHAUSTIVE_DEGREE:
            raise InfeasibleRequest(
                f"exhaustive mode enumerates all 2^{self.n}! subsets of S_{self.n}; "
                f"only n <= {MAX_EXHAUSTIVE_DEGREE} is supported")
        if self.mode != "exhaustive_subsets" and self.n > MAX_CHECK_DEGREE:
            raise InfeasibleRequest(
                f"per-multiset checks enumerate every ordered set partition of [n]; "
                f"only n <= {MAX_CHECK_DEGREE} is supported")
        if self.mode == "random_multisets":
            if self.seed is None:
                raise ValueError("random mode needs an explicit seed")
            if self.max_mult < 1 or self.samples < 0:
                raise ValueError("max_mult must be >= 1 and samples >= 0")


def structured_families(n: int) -> list[tuple[str, PermMultiset]]:
    """Knuth classes, conjugacy classes, J-classes, D-classes and shifted-shuffle images."""
    fams = []
    for lam in qsym.partitions(n):
        for P in standard_tableaux(lam):
            fams.append((f"knuth:{P}", PermMultiset(knuth_class(P), n=n)))
    for lam in qsym.partitions(n):
        fams.append((f"conjugacy:{lam}", conjugacy_class(n, lam)))
    for J in all_subsets(n):
        fams.append((f"jclass:{J}", inverse_j_class(n, J)))
        if len(d_class(n, J)):
            fams.append((f"dclass:{J}", d_class(n, J)))
    for k in range(1, n):
        for pi in all_perms(k):
            for tau in all_perms(n - k):
                fams.append((f"shuffle:{pi}x{tau}",
                             PermMultiset(shifted_shuffle(pi, tau), n=n)))
    return fams


def random_multisets(cfg: CampaignConfig) -> list[tuple[str, PermMultiset]]:
    rng = random.Random(cfg.seed)
    perms = all_perms(cfg.n)
    cap = min(cfg.max_support or len(perms), len(perms))
    out = []
    for i in range(cfg.samples):
        support = rng.sample(perms, rng.randint(1, cap))
        B = PermMultiset({p: rng.randint(1, cfg.max_mult) for p in support}, n=cfg.n)
        out.append((f"random:{i}", B))
    return out


def evaluate(item: tuple[str, PermMultiset]) -> dict:
    label, B = item
    report = check_theorem(B)
    cls = qsym.classify(B, B.n)
    return {
        "label": label,
        "multiset": compact(B),
        "flags": report.flags,
        "agree": report.agree,
        "witnesses": report.to_json()["witnesses"],
        "kind": cls.kind,
        "schur": cls.schur.to_json() if cls.schur is not None else None,
    }


def _empty_matrix() -> dict[str, dict[str, int]]:
    return {a: {b: 0 for b in CONDITIONS} for a in CONDITIONS}


def _aggregate(results: list[dict], cfg: CampaignConfig, t0: float, extra: dict) -> dict:
    results = sorted(results, key=lambda r: (r["multiset"], r["label"]))
    matrix = _empty_matrix()
    patterns: Counter = Counter()
    for r in results:
        f = r["flags"]
        patterns["".join("1" if f[c] else "0" for c in CONDITIONS)] += 1
        for a in CONDITIONS:
            for b in CONDITIONS:
                matrix[a][b] += f[a] == f[b]
    families = Counter(r["label"].split(":", 1)[0] for r in results)
    specimens = [r for r in results if r["kind"] == qsym.SYMMETRIC_NOT_FINE]
    return {
        "config": asdict(cfg),
        "population": {"count": len(results), "families": dict(families), **extra},
        "agreement_matrix": matrix,
        "patterns": dict(sorted(patterns.items())),
        "disagreements": [r for r in results if not r["agree"]],
        "specimens": {
            "symmetric_not_fine": [{"multiset": r["multiset"], "schur": r["schur"]}
                                   for r in specimens[:SPECIMEN_LIMIT]],
            "symmetric_not_fine_count": len(specimens),
        },
        "seed": cfg.seed,
        "wall_time": round(time.perf_counter() - t0, 3),
    }


def _sweep_report(cfg: CampaignConfig, t0: float) -> dict:
    """Exhaustive n = 4: linear sweep over all subsets, classify the symmetric ones."""
    res = sweep_subsets(cfg.n)
    matrix = _empty_matrix()
    patterns: Counter = Counter()
    for code, count in res.patterns.items():
        f = pattern_flags(code)
        patterns["".join("1" if f[c] else "0" for c in CONDITIONS)] += count
        for a in CONDITIONS:
            for b in CONDITIONS:
                matrix[a][b] += count * (f[a] == f[b])
    specimens, n_specimens = [], 0
    for mask in res.symmetric:
        B = PermMultiset(res.decode(mask), n=cfg.n)
        cls = qsym.classify(B, cfg.n)
        if cls.kind == qsym.SYMMETRIC_NOT_FINE:
            n_specimens += 1
            specimens.append({"multiset": compact(B), "schur": cls.schur.to_json()})
    specimens.sort(key=lambda s: (len(s["multiset"]), s["multiset"]))
    disagreements = [{"multiset": compact(PermMultiset(res.decode(m), n=cfg.n))}
                     for m in res.disagreements]
    return {
        "config": asdict(cfg),
        "population": {"count": res.total, "families": {"subset": res.total},
                       "route": "linear-sweep", "symmetric": len(res.symmetric),
                       "closure_violations": len(res.closure_violations)},
        "agreement_matrix": matrix,
        "patterns": dict(sorted(patterns.items())),
        "disagreements": disagreements,
        "specimens": {"symmetric_not_fine": specimens[:SPECIMEN_LIMIT],
                      "symmetric_not_fine_count": n_specimens},
        "seed": cfg.seed,
        "wall_time": round(time.perf_counter() - t0, 3),
    }


def population(cfg: CampaignConfig) -> list[tuple[str, PermMultiset]]:
    if cfg.mode == "structured":
        return structured_families(cfg.n)
    if cfg.mode == "random_multisets":
        return random_multisets(cfg)
    perms = all_perms(cfg.n)
    subsets = chain.from_iterable(combinations(perms, k) for k in range(len(perms) + 1))
    return [(f"subset:{i}", PermMultiset(s, n=cfg.n)) for i, s in enumerate(subsets)]


def run_campaign(cfg: CampaignConfig) -> dict:
    """Run a campaign and return its JSON-ready report."""
    cfg.validate()
    t0 = time.perf_counter()
    if cfg.mode == "exhaustive_subsets" and factorial(cfg.n) > 6:
        return _sweep_report(cfg, t0)
    items = population(cfg)
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(evaluate, items, chunksize=16))
    else:
        results = [evaluate(it) for it in items]
    extra = {"route": "per-multiset"}
    return _aggregate(results, cfg, t0, extra)


def write_report(report: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
