import json

import numpy as np
import pytest

from chnsoliton.ambient import build_ambient
from chnsoliton.scan import PROFILES, TALLY_KEYS, random_subalgebra, scan


def test_random_subalgebra_is_deterministic():
    M = build_ambient(3)
    a, ia = random_subalgebra(M, [5, 0, 1])
    b, ib = random_subalgebra(M, [5, 0, 1])
    np.testing.assert_array_equal(a.basis, b.basis)
    assert ia == ib


@pytest.mark.parametrize("profile", PROFILES)
def test_random_subalgebra_is_closed(profile):
    M = build_ambient(4)
    for i in range(20):
        sub, _ = random_subalgebra(M, i, profile)
        assert sub.dim >= 2 and sub.closure_residual < 1e-9


def test_empty_scan():
    rep = scan(build_ambient(3), 0)
    assert rep.ok and rep.processed == 0
    assert set(rep.tally) == set(TALLY_KEYS)


def test_scan_reproducible_and_jobs_invariant():
    M = build_ambient(3)
    a = scan(M, 60, seed=3, family_instances=10)
    b = scan(M, 60, seed=3, family_instances=10, jobs=2)
    assert a.to_json() == b.to_json()
    assert a.ok and a.processed == 60
    # items cycle I..VI; item VI (index 5) does not fit in CH^3 and is skipped
    assert a.families["total"] == a.families["matched"] == 9
    doc = json.loads(a.to_json())
    assert doc["tally"]["Counterexample"] == 0
    assert sum(doc["tally"].values()) == 60


def test_scan_finds_solitons_and_non_solitons():
    rep = scan(build_ambient(4), 200, seed=1)
    assert rep.ok
    assert rep.tally["NotSoliton"] > 0
    assert sum(v for k, v in rep.tally.items() if k.startswith("item")) > 0
    assert rep.nilradical_minimality["failures"] == []


def test_negative_samples():
    with pytest.raises(ValueError):
        scan(build_ambient(3), -1)
