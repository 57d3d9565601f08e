import math

import numpy as np
import pytest

from hareba.detector import (
    DetectionEvent,
    DriftDetector,
    binomial_window_stats,
    compute_thresholds,
    prediction_score,
)

EX = (np.array([0.5, 0.5]), 0)  # placeholder example fed alongside scores


def make_frozen_detector(window=500, zeros=50, **kwargs):
    """Fill the window with `zeros` misses first, then hits, and freeze.

    Feeding the misses first means follow-up appends evict the misses before
    any hit, so the window mean is easy to steer step by step.
    """
    det = DriftDetector(scores_window=window, **kwargs)
    t = 0
    for _ in range(zeros):
        t += 1
        assert det.step(0, EX, t) is DetectionEvent.NONE
    for _ in range(window - zeros):
        t += 1
        event = det.step(1, EX, t)
    assert det.thresholds_set
    return det, t, event


class TestScore:
    def test_prediction_score(self):
        assert prediction_score(1, 1) == 1
        assert prediction_score(1, 0) == 0
        assert prediction_score(0, 0) == 1


class TestWindowStats:
    def test_all_correct_window(self):
        assert binomial_window_stats(500, 500) == (1.0, 0.0)

    def test_all_wrong_window(self):
        assert binomial_window_stats(0, 500) == (0.0, 0.0)

    def test_binomial_sigma(self):
        mu, sigma = binomial_window_stats(450, 500)
        assert mu == 0.9
        assert sigma == pytest.approx(math.sqrt(0.9 * 0.1 / 500))
        assert sigma == pytest.approx(0.0134164, abs=1e-7)

    def test_empty_window_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            DriftDetector().window_stats()


class TestThresholds:
    def test_arithmetic_at_paper_betas(self):
        sigma = math.sqrt(0.9 * 0.1 / 500)
        improve, warn, drift = compute_thresholds(0.9, sigma, 2.5, 3.0, 5.0)
        assert improve == pytest.approx(0.9 + 2.5 * sigma)
        assert warn == pytest.approx(0.9 - 3.0 * sigma)
        assert drift == pytest.approx(0.9 - 5.0 * sigma)
        assert improve == pytest.approx(0.933541, abs=1e-6)
        assert warn == pytest.approx(0.859751, abs=1e-6)
        assert drift == pytest.approx(0.832918, abs=1e-6)

    def test_zero_sigma_collapses_to_mu(self):
        assert compute_thresholds(0.7, 0.0) == (0.7, 0.7, 0.7)

    def test_ordering(self):
        improve, warn, drift = compute_thresholds(0.9, 0.01)
        assert drift < warn < improve

    def test_beta_ordering_enforced(self):
        with pytest.raises(ValueError, match="beta_warn"):
            DriftDetector(beta_warn=5.0, beta_drift=3.0)


class TestFreezing:
    def test_no_events_until_window_full(self):
        det = DriftDetector(scores_window=100)
        for t in range(1, 100):
            assert det.step(1, EX, t) is DetectionEvent.NONE
            assert not det.thresholds_set
        det.step(1, EX, 100)
        assert det.thresholds_set

    def test_freeze_captures_window_stats(self):
        det, _, _ = make_frozen_detector()
        assert det.frozen_mu == 0.9
        assert det.frozen_sigma == pytest.approx(math.sqrt(0.9 * 0.1 / 500))

    def test_refreeze_after_drift_reset(self):
        det, t, _ = make_frozen_detector()
        det.reset_after_drift()
        assert not det.thresholds_set
        for _ in range(499):
            t += 1
            assert det.step(1, EX, t) is DetectionEvent.NONE
        t += 1
        det.step(1, EX, t)
        assert det.thresholds_set
        assert det.frozen_mu == 1.0


class TestImprovement:
    def test_improvement_refreezes_and_returns_event(self):
        det, t, _ = make_frozen_detector()
        # each hit evicts one of the 50 buffered misses: mu rises by 1/500
        events = []
        for _ in range(17):
            t += 1
            events.append(det.step(1, EX, t))
        assert events[:-1] == [DetectionEvent.NONE] * 16
        assert events[-1] is DetectionEvent.IMPROVED  # mu = 0.934 >= 0.933541
        assert det.frozen_mu == pytest.approx(0.934)

    def test_improvement_clears_pending_warning(self):
        # window [1]*12 [0]*20 [1]*68: mu_f = 0.8, sigma_f = 0.04, so
        # theta_improve = 0.9 and theta_warn = 0.68
        det = DriftDetector(scores_window=100)
        t = 0
        for s in [1] * 12 + [0] * 20 + [1] * 68:
            t += 1
            det.step(s, EX, t)
        assert det.frozen_mu == pytest.approx(0.8)
        for _ in range(12):  # misses evict the leading hits: mu falls to 0.68
            t += 1
            event = det.step(0, EX, t)
        assert event is DetectionEvent.WARNING_RAISED
        assert det.warning
        # hits now evict the buried misses: mu climbs back to theta_improve
        # well before the warning expires
        while True:
            t += 1
            event = det.step(1, EX, t)
            assert event is not DetectionEvent.WARNING_EXPIRED
            if event is DetectionEvent.IMPROVED:
                break
        assert not det.warning
        assert len(det.examples) == 0


class TestWarning:
    def test_warning_raised_and_buffering(self):
        det, t, _ = make_frozen_detector()
        for _ in range(50):  # evict the misses: mu stays 0.9
            t += 1
            assert det.step(0, EX, t) is DetectionEvent.NONE
        events = []
        for _ in range(21):  # now each miss evicts a hit: mu falls 1/500
            t += 1
            events.append(det.step(0, EX, t))
        assert events[:-1] == [DetectionEvent.NONE] * 20
        assert events[-1] is DetectionEvent.WARNING_RAISED  # mu = 0.858
        assert det.warning
        assert len(det.examples) == 1

    def test_warning_expires_and_rearms(self):
        det, t, _ = make_frozen_detector(expire_time=100)
        for _ in range(50):
            t += 1
            det.step(0, EX, t)
        for _ in range(21):
            t += 1
            det.step(0, EX, t)
        warn_start = t
        # hold mu constant by feeding a copy of the score about to be evicted
        for k in range(1, 100):
            t += 1
            assert det.step(det._scores[0], EX, t) is DetectionEvent.WARNING_RAISED
            assert len(det.examples) == min(k + 1, det.examples.maxlen)
        t += 1
        assert det.step(det._scores[0], EX, t) is DetectionEvent.WARNING_EXPIRED
        assert t - warn_start == 100
        assert not det.warning
        assert len(det.examples) == 0
        # mu is still below theta_warn: the very next step re-raises
        t += 1
        assert det.step(det._scores[0], EX, t) is DetectionEvent.WARNING_RAISED

    def test_buffer_keeps_most_recent_when_full(self):
        det, t, _ = make_frozen_detector(window=100, zeros=10, drift_buffer=5,
                                         expire_time=1000)
        for _ in range(14):
            t += 1
            det.step(0, EX, t)
        assert det.warning
        for i in range(12):
            t += 1
            det.step(det._scores[0], (np.array([i, i]), 1), t)
        assert len(det.examples) == 5
        X, y = det.buffered_arrays()
        assert [int(v[0]) for v in X] == [7, 8, 9, 10, 11]


class TestDrift:
    def test_drift_fires_at_frozen_threshold(self):
        det, t, _ = make_frozen_detector()
        for _ in range(50):
            t += 1
            det.step(0, EX, t)
        events = []
        for _ in range(34):
            t += 1
            events.append(det.step(0, EX, t))
        assert events[-1] is DetectionEvent.DRIFT_DETECTED  # mu = 0.832
        assert DetectionEvent.WARNING_RAISED in events
        # the drift step still buffered its example before the alarm
        assert len(det.examples) == 14

    def test_caller_reset_clears_everything(self):
        det, t, _ = make_frozen_detector()
        for _ in range(90):
            t += 1
            det.step(0, EX, t)
        det.reset_after_drift()
        assert len(det._scores) == 0
        assert len(det.examples) == 0
        assert not det.warning
        assert not det.thresholds_set

    def test_perfect_window_tolerates_isolated_mistakes(self):
        # sigma floor: a perfect frozen window must not alarm on one miss
        det, t, _ = make_frozen_detector(zeros=0)
        assert det.frozen_sigma == 0.0
        t += 1
        event = det.step(0, EX, t)
        assert event is not DetectionEvent.DRIFT_DETECTED
        # ten misses within the window do cross mu <= 1 - 5 * (2/500)
        for _ in range(9):
            t += 1
            event = det.step(0, EX, t)
        assert event is DetectionEvent.DRIFT_DETECTED

    def test_lower_scores_cannot_mask_a_drift(self):
        # replacing a hit by a miss anywhere only lowers mu while thresholds
        # stay frozen, so the alarm can only fire earlier
        def first_drift(first_score):
            det, t, _ = make_frozen_detector()
            scores = [first_score] + [0] * 120
            for k, s in enumerate(scores):
                event = det.step(s, EX, t + 1 + k)
                if event is DetectionEvent.DRIFT_DETECTED:
                    return k
            return None

        with_hit = first_drift(1)
        with_miss = first_drift(0)
        assert with_hit is not None and with_miss is not None
        assert with_miss <= with_hit
