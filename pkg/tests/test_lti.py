import numpy as np
import pytest

from adrckit.lti import SimTrace, StateSpace, TransferFunction, zoh_discretize


class TestTransferFunction:
    def test_denominator_normalized_monic(self):
        tf = TransferFunction([2.0], [4.0, 8.0])
        np.testing.assert_allclose(tf.den, [1.0, 2.0])
        np.testing.assert_allclose(tf.num, [0.5])

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            TransferFunction([1.0], [0.0])

    def test_evaluation(self):
        tf = TransferFunction([1.0], [1.0, 1.0])
        assert abs(tf(1j) - 1 / (1 + 1j)) < 1e-15

    def test_pole_evaluation_is_inf(self):
        tf = TransferFunction([1.0], [1.0, 0.0, 1.0])
        assert np.isinf(abs(tf(1j)))

    def test_product(self):
        tf = TransferFunction([1.0], [1.0, 1.0]) * TransferFunction([1.0], [1.0, 2.0])
        np.testing.assert_allclose(tf.den, [1.0, 3.0, 2.0])

    def test_dcgain(self):
        assert TransferFunction([3.0], [1.0, 2.0]).dcgain() == 1.5
        assert np.isinf(TransferFunction([1.0], [1.0, 0.0]).dcgain())

    def test_minreal_cancels_matched_pair(self):
        tf = TransferFunction(np.convolve([1.0, 1.0], [1.0, 2.0]),
                              np.convolve([1.0, 1.0], [1.0, 3.0]))
        slim = tf.minreal()
        np.testing.assert_allclose(slim.num, [1.0, 2.0], atol=1e-12)
        np.testing.assert_allclose(slim.den, [1.0, 3.0], atol=1e-12)

    def test_minreal_keeps_distinct_poles(self):
        tf = TransferFunction([1.0], [1.0, 3.0, 2.0])
        slim = tf.minreal()
        np.testing.assert_allclose(slim.den, [1.0, 3.0, 2.0], atol=1e-12)

    def test_to_ss_round_trip(self):
        tf = TransferFunction([2.0, 1.0], [1.0, 3.0, 5.0, 7.0])
        back = tf.to_ss().transfer_function()
        np.testing.assert_allclose(back.num, tf.num, atol=1e-12)
        np.testing.assert_allclose(back.den, tf.den, atol=1e-12)

    def test_to_ss_with_feedthrough(self):
        tf = TransferFunction([2.0, 1.0], [1.0, 3.0])
        ss = tf.to_ss()
        assert ss.d[0, 0] == 2.0
        back = ss.transfer_function()
        np.testing.assert_allclose(back.num, tf.num, atol=1e-12)

    def test_improper_rejected_for_realization(self):
        with pytest.raises(ValueError):
            TransferFunction([1.0, 0.0, 0.0], [1.0, 1.0]).to_ss()


class TestStateSpace:
    def test_dcgain(self):
        ss = TransferFunction([3.0], [1.0, 2.0]).to_ss()
        np.testing.assert_allclose(ss.dcgain(), [[1.5]])

    def test_frequency_response_matches_polynomial_evaluation(self):
        tf = TransferFunction([1.0, 0.5], [1.0, 2.0, 2.0])
        ss = tf.to_ss()
        omegas = np.logspace(-1, 2, 7)
        fr = ss.frequency_response(omegas)[:, 0, 0]
        np.testing.assert_allclose(fr, tf(1j * omegas), atol=1e-12)

    def test_step_first_order_lag(self):
        ss = TransferFunction([1.0], [1.0, 1.0]).to_ss()
        t, y = ss.step(2.0, 1e-3)
        k = int(round(1.0 / 1e-3))
        assert abs(y[k, 0] - (1 - np.exp(-1))) < 1e-12

    def test_named_signals(self):
        ss = StateSpace(np.zeros((1, 1)), np.ones((1, 2)), np.ones((1, 1)),
                        np.zeros((1, 2)), input_names=("r", "d"), output_names=("y",))
        assert ss.input_names == ("r", "d")
        assert ss.n_inputs == 2


class TestZoh:
    def test_zero_dynamics_integrates_input(self):
        ad, bd = zoh_discretize(np.zeros((2, 2)), np.array([[1.0], [2.0]]), 0.25)
        np.testing.assert_allclose(ad, np.eye(2))
        np.testing.assert_allclose(bd, [[0.25], [0.5]])

    def test_scalar_decay(self):
        ad, bd = zoh_discretize(np.array([[-2.0]]), np.array([[1.0]]), 0.5)
        np.testing.assert_allclose(ad, [[np.exp(-1.0)]])
        np.testing.assert_allclose(bd, [[(1 - np.exp(-1.0)) / 2.0]])

    def test_rejects_nonpositive_ts(self):
        with pytest.raises(ValueError):
            zoh_discretize(np.zeros((1, 1)), np.ones((1, 1)), 0.0)


class TestSimTrace:
    def test_requires_time_column(self):
        with pytest.raises(ValueError):
            SimTrace(ts=0.1, columns={"y": np.zeros(3)})

    def test_rejects_unequal_lengths(self):
        with pytest.raises(ValueError):
            SimTrace(ts=0.1, columns={"time": np.arange(3) * 0.1, "y": np.zeros(2)})

    def test_rejects_wrong_spacing(self):
        with pytest.raises(ValueError):
            SimTrace(ts=0.1, columns={"time": np.array([0.0, 0.2, 0.4])})

    def test_accessors(self):
        tr = SimTrace(ts=0.5, columns={"time": np.array([0.0, 0.5]), "y": np.ones(2)})
        assert len(tr) == 2
        assert tr.names == ["time", "y"]
        np.testing.assert_array_equal(tr.column("y"), [1.0, 1.0])
