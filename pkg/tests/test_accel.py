"""Kernel tests: numpy and numba paths agree with each other and with the
series-engine reference on every kernel."""

import numpy as np
import pytest

from erfq import _accel
from erfq.families import sample_schwarz_batch, schwarz_series, spec_from_batch
from erfq.series import TruncatedSeries


@pytest.fixture(scope="module")
def batch():
    rng = np.random.default_rng(42)
    return sample_schwarz_batch(rng, 500)


def reference_w12(batch):
    zeros, n_extra, theta, theta_p = batch
    w1 = np.empty(len(theta), dtype=complex)
    w2 = np.empty(len(theta), dtype=complex)
    for i in range(len(theta)):
        spec = spec_from_batch(zeros[i], int(n_extra[i]), theta[i], theta_p[i])
        s = schwarz_series(spec, 4)
        w1[i], w2[i] = s[1], s[2]
    return w1, w2


def active_and_available():
    impls = _accel.implementations()
    out = [("numpy", impls["numpy"])]
    if impls["numba"] is not None:
        out.append(("numba", impls["numba"]))
    return out


@pytest.mark.parametrize("name,impl", active_and_available())
class TestKernels:
    def test_blaschke_w12_matches_series_engine(self, batch, name, impl):
        zeros, n_extra, theta, theta_p = batch
        w1, w2 = impl["blaschke_w12"](zeros, n_extra, theta, theta_p)
        ref1, ref2 = reference_w12(batch)
        np.testing.assert_allclose(w1, ref1, atol=1e-13)
        np.testing.assert_allclose(w2, ref2, atol=1e-13)

    def test_lemma_sweep_matches_direct(self, batch, name, impl):
        zeros, n_extra, theta, theta_p = batch
        w1, w2 = impl["blaschke_w12"](zeros, n_extra, theta, theta_p)
        w1sq = w1 * w1
        tg = np.linspace(-3, 3, 31)
        sup, arg = impl["lemma_sweep"](w1, w2, tg)
        for i, t in enumerate(tg):
            vals = np.abs(w2 - t * w1sq)
            assert sup[i] == pytest.approx(float(vals.max()), rel=1e-13)
            assert vals[arg[i]] == pytest.approx(sup[i], rel=1e-13)

    def test_improved_sweep_matches_direct(self, batch, name, impl):
        zeros, n_extra, theta, theta_p = batch
        w1, w2 = impl["blaschke_w12"](zeros, n_extra, theta, theta_p)
        tg = np.array([-0.99, -0.5, 0.0, 0.5, 0.99])
        sup = impl["improved_sweep"](w1, w2, tg)
        for i, t in enumerate(tg):
            weight = 1 + t if t <= 0 else 1 - t
            vals = np.abs(w2 - t * w1 * w1) + weight * np.abs(w1) ** 2
            assert sup[i] == pytest.approx(float(vals.max()), abs=1e-14)

    def test_fs_sweep_matches_direct(self, name, impl):
        rng = np.random.default_rng(0)
        a2 = rng.normal(size=200) + 1j * rng.normal(size=200)
        a3 = rng.normal(size=200) + 1j * rng.normal(size=200)
        mus = rng.normal(size=17) + 1j * rng.normal(size=17)
        a2sq = a2 * a2
        sup, arg = impl["fs_sweep"](a2, a3, mus)
        for i, mu in enumerate(mus):
            vals = np.abs(a3 - mu * a2sq)
            assert sup[i] == pytest.approx(float(vals.max()), rel=1e-13)
            assert vals[arg[i]] == pytest.approx(sup[i], rel=1e-13)

    def test_boundary_abs_max(self, name, impl):
        rng = np.random.default_rng(1)
        coeffs = (rng.uniform(-1, 1, (20, 13)) + 1j * rng.uniform(-1, 1, (20, 13))).astype(complex)
        got = impl["boundary_abs_max"](coeffs, 0.999, 64)
        z = 0.999 * np.exp(2j * np.pi * np.arange(64) / 64)
        for i in range(20):
            want = float(np.max(np.abs(TruncatedSeries(coeffs[i]).eval_many(z))))
            assert got[i] == pytest.approx(want, rel=1e-13)


def test_backends_agree_on_sweeps(batch):
    impls = _accel.implementations()
    if impls["numba"] is None:
        pytest.skip("numba unavailable")
    zeros, n_extra, theta, theta_p = batch
    tg = np.linspace(-3, 3, 61)
    out = {}
    for name in ("numpy", "numba"):
        w1, w2 = impls[name]["blaschke_w12"](zeros, n_extra, theta, theta_p)
        sup, _ = impls[name]["lemma_sweep"](w1, w2, tg)
        out[name] = sup
    np.testing.assert_allclose(out["numpy"], out["numba"], rtol=1e-14, atol=1e-14)


def test_backend_name_exported():
    assert _accel.BACKEND in ("numba", "numpy")
