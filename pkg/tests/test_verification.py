import numpy as np
import pytest

from distmind.detecting import RadixProfile, construct
from distmind.measures import make_measure
from distmind.verification import (
    FeasibilityError,
    detecting_property_check,
    exhaustive_recovery_check,
)


class TestDetectingPropertyCheck:
    def test_small_profiles_pass(self):
        for radices in [(2, 2), (3, 3, 3)]:
            profile = RadixProfile(radices)
            report = detecting_property_check(construct(profile), profile)
            assert report.passed
            assert report.total == np.prod(radices)

    def test_duplicated_column_fails(self):
        # e_i and e_j collide when two columns are identical
        entries = np.array([[1, 1], [0, 0], [1, 1], [0, 0]], dtype=np.uint8)
        report = detecting_property_check(entries, RadixProfile((2, 2)))
        assert not report.passed
        assert ((1, 0), (0, 1)) in report.failures or ((0, 1), (1, 0)) in report.failures

    def test_cap_enforced(self):
        profile = RadixProfile((4, 4, 4))
        with pytest.raises(FeasibilityError):
            detecting_property_check(construct(profile), profile, case_cap=10)

    def test_env_cap_override(self, monkeypatch):
        monkeypatch.setenv("DISTMIND_DETECT_CAP", "10")
        profile = RadixProfile((4, 4, 4))
        with pytest.raises(FeasibilityError):
            detecting_property_check(construct(profile), profile)


class TestExhaustiveRecoveryCheck:
    def test_lp2_separable(self):
        report = exhaustive_recovery_check(make_measure("lp", p=2), 2, 2, "separable")
        assert report.passed and report.total == 25

    def test_linf(self):
        report = exhaustive_recovery_check(None, 3, 1, "linf")
        assert report.passed and report.total == 27

    def test_fair_naive(self):
        report = exhaustive_recovery_check(make_measure("fair", c=1.0), 2, 1, "naive")
        assert report.passed and report.total == 9

    def test_cap_enforced(self):
        with pytest.raises(FeasibilityError):
            exhaustive_recovery_check(make_measure("lp", p=2), 20, 8, "separable")

    def test_failures_reported_not_raised(self):
        # an l2 interpreter against a huber oracle cannot be consistent
        report = exhaustive_recovery_check(make_measure("huber", tau=1.0), 2, 1, "l2")
        assert not report.passed
        assert len(report.failures) > 0
