import json
import random

import numpy as np
import pytest

from descentsym.campaign import CampaignConfig, run_campaign, structured_families, write_report
from descentsym.permcore import PermMultiset, all_perms
from descentsym.sweep import (
    InfeasibleRequest, column_basis, condition_matrices, pattern_flags, sweep_subsets,
)
from descentsym.verifier import CONDITIONS, check_closure, check_theorem


def test_column_basis():
    L = np.array([[1, 2, 3], [2, 4, 5], [3, 6, 8]])
    basis = column_basis(L)
    assert basis.shape == (3, 2)
    assert np.linalg.matrix_rank(basis) == np.linalg.matrix_rank(L)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sweep_matches_direct_checks(n):
    res = sweep_subsets(n)
    perms = all_perms(n)
    direct = {}
    for mask in range(1 << len(perms)):
        B = PermMultiset([perms[i] for i in range(len(perms)) if mask >> i & 1], n=n)
        rep = check_theorem(B)
        code = sum(1 << i for i, c in enumerate(CONDITIONS) if rep.flags[c])
        direct[code] = direct.get(code, 0) + 1
    assert dict(res.patterns) == direct
    assert res.disagreements == [] and res.closure_violations == []


def test_sweep_sample_degree_four():
    mats = condition_matrices(4)
    names = list(CONDITIONS)
    perms = all_perms(4)
    rnd = random.Random(1)
    for _ in range(150):
        mask = rnd.getrandbits(24)
        x = np.array([mask >> i & 1 for i in range(24)])
        flags = {c: not np.any(x @ mats[c]) for c in names}
        B = PermMultiset([perms[i] for i in range(24) if mask >> i & 1], n=4)
        assert flags == check_theorem(B).flags
    # a few symmetric subsets: closure through the matrices and directly
    for C in (PermMultiset([(1, 3, 2, 4), (4, 1, 3, 2)]),):
        x = np.array([1 if p in C else 0 for p in perms])
        for key, M in mats.items():
            if key.startswith("closure"):
                assert not np.any(x @ M)
        assert all(check_closure(C, J) for J in [(), (1,), (2,), (1, 3)])


def test_pattern_flags():
    assert pattern_flags(0b11111) == {c: True for c in CONDITIONS}
    assert pattern_flags(0) == {c: False for c in CONDITIONS}


def test_sweep_refuses_large_degree():
    with pytest.raises(InfeasibleRequest):
        sweep_subsets(5)


def test_config_validation():
    with pytest.raises(InfeasibleRequest):
        run_campaign(CampaignConfig(n=5, mode="exhaustive_subsets"))
    with pytest.raises(InfeasibleRequest):
        run_campaign(CampaignConfig(n=7, mode="structured"))
    with pytest.raises(ValueError):
        run_campaign(CampaignConfig(n=4, mode="random_multisets"))
    with pytest.raises(ValueError):
        run_campaign(CampaignConfig(n=4, mode="bogus"))


def test_exhaustive_three(tmp_path):
    rep = run_campaign(CampaignConfig(n=3, mode="exhaustive_subsets"))
    assert rep["population"]["count"] == 64
    assert rep["disagreements"] == []
    for a in CONDITIONS:
        assert all(v == 64 for v in rep["agreement_matrix"][a].values())
    path = tmp_path / "report.json"
    write_report(rep, path)
    assert json.loads(path.read_text())["population"]["count"] == 64


def test_structured_five():
    rep = run_campaign(CampaignConfig(n=5, mode="structured"))
    assert rep["disagreements"] == []
    fams = rep["population"]["families"]
    assert set(fams) == {"knuth", "conjugacy", "jclass", "dclass", "shuffle"}


def test_structured_families_labels():
    fams = structured_families(3)
    assert sum(1 for label, _ in fams if label.startswith("knuth")) == 4
    assert sum(1 for label, _ in fams if label.startswith("conjugacy")) == 3


def test_random_is_seeded():
    cfg = CampaignConfig(n=4, mode="random_multisets", samples=20, seed=3)
    a, b = run_campaign(cfg), run_campaign(cfg)
    assert a["patterns"] == b["patterns"] and a["seed"] == 3


@pytest.mark.slow
def test_random_five_ten_thousand():
    rep = run_campaign(CampaignConfig(n=5, mode="random_multisets", samples=10_000, seed=42))
    assert rep["population"]["count"] == 10_000
    assert rep["disagreements"] == []


def test_small_subsets_have_no_mixed_patterns():
    # every mixed pattern would be a disagreement; check a structured n = 4 run too
    rep = run_campaign(CampaignConfig(n=4, mode="structured"))
    assert set(rep["patterns"]) <= {"00000", "11111"}
