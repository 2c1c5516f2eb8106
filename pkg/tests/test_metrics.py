import numpy as np
import numpy.testing as npt
import pytest

from fringedemod import PhaseMap, make_mask, phase_error_stats, rms_error, test_phase

from conftest import field


def unwrapped(data):
    return PhaseMap(field(data, "radians"), wrapped=False)


@pytest.fixture()
def truth():
    return test_phase(64, 64)


MASK = make_mask(64, 64, border=4, disk_radius=0)


class TestRmsError:
    def test_identity(self, truth):
        assert rms_error(truth, truth, MASK) == 0.0

    def test_piston_removed(self, truth):
        est = unwrapped(truth.data + 5.0)
        assert rms_error(est, truth, MASK) == pytest.approx(0.0, abs=1e-12)

    def test_sign_flip_resolved(self, truth):
        est = unwrapped(-truth.data)
        assert rms_error(est, truth, MASK) == pytest.approx(0.0, abs=1e-12)
        assert phase_error_stats(est, truth, MASK).sign == -1.0

    def test_flip_plus_piston_plus_noise(self, truth, rng):
        noise = 0.01 * rng.standard_normal(truth.data.shape)
        est = unwrapped(-(truth.data + noise) + 3.0)
        stats = phase_error_stats(est, truth, MASK)
        assert stats.rms == pytest.approx(np.sqrt(np.mean(
            (noise[MASK] - noise[MASK].mean())**2)), rel=1e-9)

    def test_symmetric(self, truth, rng):
        est = unwrapped(truth.data + rng.standard_normal(truth.data.shape))
        npt.assert_allclose(rms_error(est, truth, MASK), rms_error(truth, est, MASK),
                            rtol=1e-12)

    def test_small_mask_rejected(self, truth):
        tiny = np.zeros((64, 64), dtype=bool)
        tiny[0, :50] = True
        with pytest.raises(ValueError):
            rms_error(truth, truth, tiny)

    def test_wrapped_input_rejected(self, truth):
        wrapped = PhaseMap(field(np.zeros((64, 64)), "radians"), wrapped=True)
        with pytest.raises(ValueError):
            rms_error(wrapped, truth, MASK)


class TestMakeMask:
    def test_border_and_disk(self):
        m = make_mask(64, 64, border=8, disk_radius=5)
        assert not m[:8].any() and not m[:, -8:].any()
        assert not m[32, 32] and not m[32, 36]
        assert m[32, 38]
        # strict inequality: radius-long offsets stay excluded, beyond kept
        assert not m[32 + 5, 32]

    def test_counts(self):
        m = make_mask(512, 512, border=32, disk_radius=32)
        inside = (512 - 64) ** 2
        disk = np.sum(~make_mask(512, 512, border=0, disk_radius=32))
        assert m.sum() == inside - disk

    def test_validation(self):
        with pytest.raises(ValueError):
            make_mask(16, 16, border=-1)
