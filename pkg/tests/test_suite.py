import json

import numpy as np
import pytest

from superjordan import AdditiveMap, grade, kernels
from superjordan.abelian import HomSpace
from superjordan.config import ConfigError
from superjordan.maps import graded_biadditive_space
from superjordan.suite import (
    CLAIMS,
    DEFAULT_MATRIX,
    Entry,
    _mutate,
    canonical_json,
    load_matrix,
    run_suite,
    without_timings,
)

TE_Z2 = {"kind": "trivial_extension", "base": {"kind": "zn", "n": 2}, "module": {"kind": "zn", "m": 2}}
TRI_Z3 = {"kind": "triangular", "left": {"kind": "zn", "n": 3}, "right": {"kind": "zn", "n": 3}, "module": {"kind": "zn", "m": 3}}


def test_default_matrix_covers_every_criterion():
    covered = {c for e in DEFAULT_MATRIX for c in e.criteria}
    assert covered == set(CLAIMS)


def test_small_matrix_report_shape():
    rep = run_suite((Entry("te", TE_Z2, (1, 6, 8, 9)),), mutations=20, only=(1, 6, 8, 9))
    assert rep["passed"] is True
    assert [c["id"] for c in rep["criteria"]] == [1, 6, 8, 9]
    c8 = next(c for c in rep["criteria"] if c["id"] == 8)
    assert c8["counts"]["mutants"] == 20
    enums = rep["entries"]["te"]["enumerations"]
    assert enums["jordan_super_biderivations"]["count"] == 16
    assert "timings" in rep and "timings" not in without_timings(rep)


def test_oversized_entry_emits_notice_and_others_still_judged():
    entries = (Entry("small", TE_Z2, (1, 9)), Entry("big", TRI_Z3, (3, 9)))
    rep = run_suite(entries, bound=100, only=(1, 3, 9))
    notices = rep["entries"]["big"]["notices"]
    assert any("skipped" in n for n in notices)
    by_id = {c["id"]: c for c in rep["criteria"]}
    assert by_id[1]["passed"] is True
    assert by_id[1]["entries"] == ["small"]


def test_report_independent_of_workers():
    entries = (Entry("te", TE_Z2, (1, 2, 6, 8, 9)), Entry("tri", TRI_Z3, (3, 4, 5, 9)))
    a = run_suite(entries, workers=1, mutations=30)
    b = run_suite(entries, workers=8, mutations=30)
    assert canonical_json(a) == canonical_json(b)
    json.loads(canonical_json(a))


def test_load_matrix(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"entries": [{"name": "x", "ring": TE_Z2, "criteria": [1, 2]}]}))
    (entry,) = load_matrix(p)
    assert entry.criteria == (1, 2)
    p.write_text(json.dumps({"entries": [{"ring": TE_Z2, "criteria": [12]}]}))
    with pytest.raises(ConfigError) as info:
        load_matrix(p)
    assert info.value.where == "entries[0].criteria"
    p.write_text(json.dumps({"entries": []}))
    with pytest.raises(ConfigError):
        load_matrix(p)


def test_mutation_changes_exactly_one_image(te_z3):
    G = grade(te_z3.ring)
    rng = np.random.default_rng(0)
    space = HomSpace(G.ring.carrier, G.ring.carrier)
    d = AdditiveMap(space.hom(0))
    for _ in range(20):
        m = _mutate(d, space, rng)
        diff = np.asarray(m.images) != np.asarray(d.images)
        assert diff.sum() == 1
    bspace = graded_biadditive_space(G)
    B = bspace.map(0)
    for _ in range(20):
        m = _mutate(B, bspace, rng)
        assert (m.array != B.array).sum() == 1
        assert bspace.index_of(m.array) != 0


def test_report_independent_of_backend(monkeypatch):
    entries = (Entry("te", TE_Z2, (1, 2, 6, 8, 9)), Entry("tri", TRI_Z3, (3, 4, 5, 7, 9)))
    monkeypatch.delenv(kernels.ENV_FLAG, raising=False)
    fast = canonical_json(run_suite(entries, mutations=30))
    monkeypatch.setenv(kernels.ENV_FLAG, "1")
    assert canonical_json(run_suite(entries, mutations=30)) == fast
