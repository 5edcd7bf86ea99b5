import random

import pytest

from src.services import verification
from src.services.verification import ACCEPTANCE_SAMPLES, SUITES, SuiteRecorder, VerificationRunner, verify_all

CHEAP_SUITES = ["field-axioms", "dec-idempotence", "join-law", "s3-transversal"]


def without_timing(reports):
    return [report.model_dump(exclude={"elapsedSeconds"}) for report in reports]


def test_registry_order():
    assert list(SUITES)[:3] == ["field-axioms", "norm-laws", "lattice-correspondence"]
    assert len(SUITES) == 15


def test_recorder_stringifies_details():
    recorder = SuiteRecorder("demo")
    recorder.check(True, "fine")
    recorder.check(False, "broken", value=3, ratio=0.5, items=["a"])
    assert recorder.casesRun == 2
    assert recorder.failures == [{"case": "broken", "value": 3, "ratio": "0.5", "items": ["a"]}]


@pytest.mark.parametrize("name", CHEAP_SUITES)
def test_cheap_suites_pass(name):
    report = VerificationRunner(samples=2).run_suite(name, 42)
    assert report.passed, report.failures
    assert report.casesRun > 0
    assert report.suite == name


@pytest.mark.parametrize("name", list(SUITES))
def test_every_suite_passes_with_one_sample(name):
    report = VerificationRunner(samples=1).run_suite(name, 42)
    assert report.passed, report.failures
    assert report.casesRun > 0


@pytest.mark.slow
@pytest.mark.parametrize("name", list(SUITES))
def test_every_suite_passes_at_acceptance_size(name):
    report = VerificationRunner(acceptance=True).run_suite(name, 42)
    assert report.passed, report.failures


# ---------------------------------------------------------
# Acceptance profile
# ---------------------------------------------------------

def test_acceptance_profile_covers_every_suite():
    assert set(ACCEPTANCE_SAMPLES) == set(SUITES)
    assert ACCEPTANCE_SAMPLES["field-axioms"] == 500
    assert ACCEPTANCE_SAMPLES["equivariance"] == 100
    assert ACCEPTANCE_SAMPLES["factorization"] == 50


def test_acceptance_mode_overrides_sample_count(monkeypatch):
    seen = {}

    def counting(recorder, rng: random.Random, samples):
        seen["samples"] = samples
        recorder.check(True, "ran")

    monkeypatch.setitem(verification.SUITES, "field-axioms", counting)
    VerificationRunner(samples=3, acceptance=True).run_suite("field-axioms", 0)
    assert seen["samples"] == 500
    VerificationRunner(samples=3, acceptance=False).run_suite("field-axioms", 0)
    assert seen["samples"] == 3


def test_reports_follow_registry_order():
    reports = verify_all(seed=1, suites=["join-law", "field-axioms"], samples=1)
    assert [report.suite for report in reports] == ["field-axioms", "join-law"]


def test_runs_are_deterministic_per_seed():
    runner = VerificationRunner(samples=2)
    assert without_timing(runner.run(5, ["field-axioms"])) == without_timing(runner.run(5, ["field-axioms"]))


def test_thread_pool_matches_sequential_run():
    sequential = VerificationRunner(samples=1, workers=1).run(3, ["field-axioms", "join-law"])
    pooled = VerificationRunner(samples=1, workers=2).run(3, ["field-axioms", "join-law"])
    assert without_timing(sequential) == without_timing(pooled)


def test_suite_exceptions_become_failures(monkeypatch):
    def exploding(recorder, rng: random.Random, samples):
        raise RuntimeError("boom")

    monkeypatch.setitem(verification.SUITES, "exploding", exploding)
    report = VerificationRunner(samples=1).run_suite("exploding", 0)
    assert not report.passed
    assert report.failures[0]["error"] == "RuntimeError: boom"
