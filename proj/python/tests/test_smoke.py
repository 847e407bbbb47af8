import math

import numpy as np
import pytest

import mixsmooth as ms


def test_f0_modulus():
    w = ms.mixed_modulus(ms.f0(), alpha=(1, 1), delta=(1, 1), norm=(2, 2))
    assert w == pytest.approx(4 * math.sin(0.5) ** 2 * math.pi, rel=1e-10)


def test_zero_function():
    s = ms.Spectrum(np.zeros((3, 3), dtype=complex))
    assert ms.mixed_modulus(s, delta=(0.5, 0.5)) == 0.0


def test_mixed_norm_of_constant():
    v = np.ones((8, 16))
    assert ms.mixed_norm(v, (3, "inf")) == pytest.approx((2 * math.pi) ** (1 / 3))
    assert ms.mixed_norm(v, "1,1") == pytest.approx(4 * math.pi**2)


def test_spectrum_round_trip():
    s = ms.random_polynomial(3, 4, 2)
    c = s.coefficients
    assert c.shape == (5, 9)
    assert np.allclose(ms.Spectrum(c).coefficients, c)
    assert np.allclose(ms.Spectrum.from_json(s.to_json()).coefficients, c)
    x = ms.synthesize(s, 16, 8)
    assert x.shape == (8, 16)
    assert ms.mixed_norm(x, (2, 2)) == pytest.approx(1.0, rel=1e-12)


def test_rate_fit():
    d = np.array([2.0**-j for j in range(2, 10)])
    fit = ms.rate_fit(d, 3 * d * np.log2(2 / d) ** 0.5)
    assert fit["a"] == pytest.approx(1.0, abs=1e-9)
    assert fit["b"] == pytest.approx(0.5, abs=1e-9)


def test_ulyanov_report():
    r = ms.ulyanov(ms.f0(), delta_range="2:3", levels=6)
    assert len(r["rows"]) == 4
    assert 0 < r["min_ratio"] <= r["max_ratio"] < math.inf


def test_properties():
    assert ms.run_properties(names=[]) == []
    out = ms.run_properties(names=["conjugate_phase_identity"], corpus_size=3)
    assert out[0]["passed"]


def test_invalid_input():
    with pytest.raises(ValueError):
        ms.mixed_modulus(ms.f0(), norm=(0.5, 2))
    with pytest.raises(ValueError):
        ms.Spectrum(np.zeros((2, 3), dtype=complex))
