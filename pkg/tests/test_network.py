import math

import numpy as np
import pytest

from hareba.network import Adam, BinaryMLP, NumericalError, he_std, leaky_relu, weighted_bce


def finite_difference_gradients(net, X, y, w, h=1e-5):
    """Independent oracle: central differences of the mean weighted loss."""
    grads = {}
    for name, p in net.params.items():
        g = np.zeros_like(p)
        it = np.nditer(p, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            orig = p[idx]
            p[idx] = orig + h
            up = net.batch_loss(X, y, w)
            p[idx] = orig - h
            down = net.batch_loss(X, y, w)
            p[idx] = orig
            g[idx] = (up - down) / (2 * h)
        grads[name] = g
    return grads


def max_relative_error(analytic, numeric, atol=1e-6):
    worst = 0.0
    for name in analytic:
        a, b = analytic[name], numeric[name]
        for ai, bi in zip(np.ravel(a), np.ravel(b)):
            diff = abs(ai - bi)
            if diff <= atol:
                continue
            worst = max(worst, diff / max(abs(ai), abs(bi)))
    return worst


def random_batch(rng, size):
    X = rng.random((size, 2))
    y = rng.integers(0, 2, size).astype(float)
    w = rng.uniform(0.5, 20.0, size)
    return X, y, w


class TestInit:
    def test_he_std_formula(self):
        assert he_std(2) == 1.0
        assert he_std(8) == 0.5

    def test_he_init_sample_stds(self):
        w1, w2 = [], []
        for seed in range(400):
            net = BinaryMLP(rng=seed)
            w1.append(net.params["w1"].ravel())
            w2.append(net.params["w2"].ravel())
        assert np.std(np.concatenate(w1)) == pytest.approx(1.0, rel=0.05)
        assert np.std(np.concatenate(w2)) == pytest.approx(0.5, rel=0.05)

    def test_biases_start_at_zero(self):
        net = BinaryMLP(rng=0)
        assert not net.params["b1"].any()
        assert not net.params["b2"].any()

    def test_same_seed_same_parameters(self):
        a, b = BinaryMLP(rng=42), BinaryMLP(rng=42)
        for k in a.params:
            assert np.array_equal(a.params[k], b.params[k])

    def test_reinitialize_resets_optimizer(self):
        net = BinaryMLP(rng=0)
        net.train(np.array([[0.2, 0.8]]), [1])
        assert net.opt.t == 1
        net.reinitialize(np.random.default_rng(1))
        assert net.opt.t == 0


class TestForward:
    def test_all_zero_parameters_give_half(self):
        net = BinaryMLP(rng=0)
        for k in net.params:
            net.params[k][...] = 0.0
        assert net.forward_one(np.array([0.3, 0.9])) == 0.5

    def test_leaky_relu_negative_slope(self):
        assert leaky_relu(-1.0, 0.01) == -0.01
        assert leaky_relu(2.5, 0.01) == 2.5

    def test_matches_straight_line_reimplementation(self):
        # duplicate-formula oracle written with scalar python arithmetic
        def reference(params, x, slope):
            hidden = []
            for i in range(len(params["b1"])):
                z = sum(params["w1"][i][j] * x[j] for j in range(2)) + params["b1"][i]
                hidden.append(z if z >= 0 else slope * z)
            z2 = sum(params["w2"][i] * hidden[i] for i in range(len(hidden)))
            z2 += params["b2"][0]
            return 1.0 / (1.0 + math.exp(-z2))

        rng = np.random.default_rng(5)
        for seed in range(10):
            net = BinaryMLP(rng=seed)
            x = rng.random(2)
            assert net.forward_one(x) == pytest.approx(
                reference(net.params, x, net.leaky_slope), abs=1e-12
            )

    def test_forward_batch_agrees_with_forward_one(self):
        net = BinaryMLP(rng=3)
        X = np.random.default_rng(0).random((20, 2))
        batch = net.forward(X)
        for i in range(20):
            assert batch[i] == pytest.approx(net.forward_one(X[i]), abs=1e-14)


class TestLoss:
    def test_uninformative_prediction(self):
        assert weighted_bce(1, 0.5) == pytest.approx(math.log(2))

    def test_weight_scales_loss(self):
        assert weighted_bce(0, 0.5, weight=19.0) == pytest.approx(19 * math.log(2))

    def test_perfect_prediction_is_free(self):
        assert weighted_bce(1, 1.0) == pytest.approx(0.0, abs=1e-6)

    def test_clamp_keeps_loss_finite(self):
        assert np.isfinite(weighted_bce(1, 0.0))
        assert np.isfinite(weighted_bce(0, 1.0))


class TestGradients:
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(123)
        for trial in range(10):
            net = BinaryMLP(rng=trial)
            X, y, w = random_batch(rng, int(rng.integers(1, 12)))
            analytic = net.gradients(X, y, w)
            numeric = finite_difference_gradients(net, X, y, w)
            assert max_relative_error(analytic, numeric) < 1e-4

    def test_weighted_gradient_is_weight_times_unweighted(self):
        rng = np.random.default_rng(7)
        net = BinaryMLP(rng=1)
        X, y, _ = random_batch(rng, 6)
        base = net.gradients(X, y, np.ones(6))
        scaled = net.gradients(X, y, np.full(6, 19.0))
        for k in base:
            np.testing.assert_allclose(scaled[k], 19.0 * base[k], rtol=1e-12)


class TestAdam:
    def test_first_step_moves_by_lr_times_sign(self):
        params = {"p": np.array([1.0, -2.0, 0.5])}
        grads = {"p": np.array([3.0, -0.2, 1e-3])}
        opt = Adam(params, learning_rate=0.01)
        opt.step(grads)
        delta = params["p"] - np.array([1.0, -2.0, 0.5])
        np.testing.assert_allclose(delta, -0.01 * np.sign(grads["p"]), atol=1e-7)
        assert opt.t == 1


class TestTraining:
    def test_epochs_zero_rejected(self):
        net = BinaryMLP(rng=0)
        with pytest.raises(ValueError, match="epochs"):
            net.train(np.array([[0.1, 0.2]]), [1], epochs=0)

    def test_empty_batch_rejected(self):
        net = BinaryMLP(rng=0)
        with pytest.raises(ValueError, match="empty"):
            net.train(np.empty((0, 2)), [])

    def test_single_example_update_usually_reduces_its_loss(self):
        rng = np.random.default_rng(99)
        improved = 0
        trials = 200
        for trial in range(trials):
            net = BinaryMLP(rng=trial)
            X = rng.random((1, 2))
            y = [int(rng.integers(0, 2))]
            before = net.batch_loss(X, y)
            net.train(X, y)
            if net.batch_loss(X, y) < before:
                improved += 1
        assert improved >= 0.95 * trials

    def test_training_is_deterministic(self):
        def run():
            net = BinaryMLP(rng=21)
            rng = np.random.default_rng(4)
            for _ in range(30):
                X, y, w = random_batch(rng, 5)
                net.train(X, y, w)
            return net.params

        # bit-identical parameters for identical (seed, batch sequence)
        a, b = run(), run()
        for k in a:
            assert np.array_equal(a[k], b[k])

    def test_parameters_stay_finite(self):
        net = BinaryMLP(rng=2)
        rng = np.random.default_rng(0)
        for _ in range(200):
            X, y, w = random_batch(rng, 3)
            net.train(X, y, w)
            for p in net.params.values():
                assert np.isfinite(p).all()

    def test_nan_parameters_abort_update(self):
        net = BinaryMLP(rng=0)
        net.params["w1"][0, 0] = np.nan
        with pytest.raises(NumericalError):
            net.train(np.array([[0.5, 0.5]]), [1])


def test_parameter_dump_lists_every_parameter(tmp_path):
    net = BinaryMLP(rng=0)
    path = tmp_path / "params.txt"
    net.dump_parameters(path)
    lines = path.read_text().splitlines()
    assert len(lines) == 16 + 8 + 8 + 1
    layer, row, col, value = lines[0].split(",")
    assert layer == "w1" and row == "0" and col == "0"
    assert float(value) == net.params["w1"][0, 0]
