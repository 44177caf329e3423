import numpy as np
import pytest

from chnsoliton.families import FamilySpec
from chnsoliton.tables import expected_signature, merge_signature, plane_angle, table1, table2


def test_merge_signature():
    assert merge_signature([(0.5, 2), (np.pi / 2, 1), (0.5 + 1e-12, 2), (1.0, 0)]) == [(0.5, 4), (np.pi / 2, 1)]


def test_plane_angle_conventions():
    spec = FamilySpec("V", 4, dim_mpi2=1, u_norm=1.0)
    assert plane_angle(spec, "published") == pytest.approx(np.pi / 3)
    assert plane_angle(spec, "corrected") == pytest.approx(np.pi / 4)
    # U = 0: both forms give a complex plane
    zero = FamilySpec("V", 4, dim_mpi2=1)
    assert plane_angle(zero, "published") == plane_angle(zero, "corrected") == 0.0
    with pytest.raises(ValueError):
        plane_angle(spec, "other")


def test_expected_signature_item_iv():
    spec = FamilySpec("IV", 4, dim_mphi=2, phi=0.4, dim_mpi2=1)
    assert expected_signature(spec) == [(0.4, 2), (np.pi / 2, 2)]


@pytest.mark.parametrize("n", [3, 5])
def test_table1(n):
    rows = table1(n, samples=2, seed=1)
    assert all(r.ok for r in rows)
    assert {r.item: r.feasible for r in rows}["VI"] == (n >= 4)


def test_table2_corrected_convention_matches():
    assert all(r.ok for r in table2(5, samples=3, seed=2, convention="corrected"))


def test_table2_published_convention_differs_for_plane_items():
    rows = {r.item: r for r in table2(5, samples=3, seed=2, convention="published")}
    for item in ("I", "III", "IV"):
        assert rows[item].ok
    assert not rows["VI"].ok
