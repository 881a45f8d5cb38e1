import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from pwcapprox import (
    NoiseSpec,
    PGMError,
    add_gaussian_noise,
    from_values,
    interval_integrals,
    load_csv,
    load_pgm_row,
    make_chirp,
    make_steps,
)
from pwcapprox.signal import PGMFormatError, PGMMaxvalError, PGMRowError, chirp


def test_chirp_single_cell():
    s = make_chirp(1)
    expected = 255 * math.cos(2 * math.pi * 0.5 * (1 + 2.5))
    assert s.values[0] == pytest.approx(expected, abs=1e-12)
    assert abs(s.values[0]) < 1e-9
    assert (s.a, s.b) == (0.0, 1.0)


@pytest.mark.parametrize("M", [1, 7, 1000])
def test_chirp_first_midpoint(M):
    d = 1 / M
    assert make_chirp(M).values[0] == pytest.approx(
        255 * math.cos(2 * math.pi * (d / 2) * (1 + 5 * d / 2)), rel=1e-14, abs=1e-12
    )


def test_chirp_mean_square_against_quadrature(chirp):
    exact, _ = integrate.quad(lambda x: chirp_fn(x) ** 2, 0, 1, limit=500)
    # the slow start near x = 0 lifts the mean square ~2% above 255**2 / 2
    assert exact == pytest.approx(33183.75, rel=1e-6)
    assert chirp.prefix2[-1] == pytest.approx(exact, rel=1e-6)
    assert np.all(np.abs(chirp.values) <= 255)


def chirp_fn(x):
    return float(chirp(x))


@pytest.mark.parametrize("M", [0, -3, 2.5])
def test_chirp_rejects_bad_cell_count(M):
    with pytest.raises(ValueError):
        make_chirp(M)


def test_from_values_prefix():
    s = from_values([0, 1], 0, 2)
    assert s.prefix1.tolist() == [0, 0, 1]
    assert from_values([3.0], 0, 1).prefix2[1] == 9.0


@pytest.mark.parametrize("args", [([], 0, 1), ([1.0], 1, 1), ([1.0], 2, 1)])
def test_from_values_errors(args):
    with pytest.raises(ValueError):
        from_values(*args)


def test_signal_is_immutable(two_step):
    with pytest.raises(ValueError):
        two_step.values[0] = 1.0


def test_interval_integrals_examples(two_step):
    assert interval_integrals(two_step, 0, 2) == (13.5, 94.25, 2)
    assert interval_integrals(two_step, 1.5, 1.5) == (0.0, 0.0, 0.0)
    assert interval_integrals(from_values([0, 1], 0, 2), 0.5, 1.5)[0] == pytest.approx(0.5)


@pytest.mark.parametrize("xl, xr", [(2, 1), (-0.1, 1), (1, 4.5)])
def test_interval_integrals_errors(two_step, xl, xr):
    with pytest.raises(ValueError):
        interval_integrals(two_step, xl, xr)


values_st = st.lists(st.floats(-300, 300, allow_nan=False), min_size=1, max_size=40)


@given(values_st, st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
@settings(max_examples=200, deadline=None)
def test_interval_additivity(values, p, q, r):
    s = from_values(values, -1.0, 2.0)
    xl, xm, xr = sorted(-1.0 + 3.0 * np.array([p, q, r]))
    left = interval_integrals(s, xl, xm)
    right = interval_integrals(s, xm, xr)
    whole = interval_integrals(s, xl, xr)
    scale = 1.0 + interval_integrals(s, -1.0, 2.0)[1]
    for k in range(3):
        assert left[k] + right[k] == pytest.approx(whole[k], rel=1e-9, abs=1e-9 * scale)


@given(values_st, st.data())
@settings(max_examples=200, deadline=None)
def test_cell_aligned_integrals_match_direct_sum(values, data):
    s = from_values(values, 0.0, float(len(values)))
    i = data.draw(st.integers(0, len(values)))
    j = data.draw(st.integers(i, len(values)))
    I1, I2, width = interval_integrals(s, float(i), float(j))
    seg = np.array(values[i:j])
    assert I1 == pytest.approx(math.fsum(seg), rel=1e-12, abs=1e-9)
    assert I2 == pytest.approx(math.fsum(seg * seg), rel=1e-12, abs=1e-9)
    assert width == j - i


def test_prefix2_nondecreasing(chirp):
    assert np.all(np.diff(chirp.prefix2) >= 0)


def test_noise_zero_sigma_is_identity(two_step):
    out = add_gaussian_noise(two_step, NoiseSpec(0.0, 3))
    assert np.array_equal(out.values, two_step.values)


def test_noise_is_deterministic_and_leaves_input(two_step):
    before = two_step.values.copy()
    a = add_gaussian_noise(two_step, NoiseSpec(20.0, 7))
    b = add_gaussian_noise(two_step, NoiseSpec(20.0, 7))
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(two_step.values, before)
    assert not np.array_equal(a.values, add_gaussian_noise(two_step, NoiseSpec(20.0, 8)).values)


def test_noise_standard_deviation():
    s = from_values(np.zeros(10_000), 0, 1)
    diff = add_gaussian_noise(s, NoiseSpec(20.0, 1)).values - s.values
    assert 19 <= diff.std() <= 21


def test_noise_spec_rejects_negative_sigma():
    with pytest.raises(ValueError):
        NoiseSpec(-1.0)


def test_make_steps():
    s = make_steps(12, seed=3)
    assert s.M == 256 and (s.a, s.b) == (0.0, 256.0)
    assert np.count_nonzero(np.diff(s.values)) <= 11
    assert np.array_equal(s.values, make_steps(12, seed=3).values)


def _write_pgm(path, magic, width, height, maxval, pixels, comment=True):
    header = f"{magic}\n" + ("# made by a test\n" if comment else "") + f"{width} {height}\n{maxval}\n"
    if magic == "P5":
        path.write_bytes(header.encode() + bytes(pixels))
    else:
        path.write_text(header + " ".join(str(p) for p in pixels) + "\n")


@pytest.mark.parametrize("magic", ["P2", "P5"])
def test_pgm_row(tmp_path, magic):
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, (256, 256))
    path = tmp_path / "img.pgm"
    _write_pgm(path, magic, 256, 256, 255, img.ravel().tolist())
    s = load_pgm_row(path, 51)
    assert (s.M, s.a, s.b) == (256, 0.0, 256.0)
    assert np.array_equal(s.values, img[51].astype(float))


def test_pgm_single_pixel(tmp_path):
    path = tmp_path / "one.pgm"
    _write_pgm(path, "P5", 1, 1, 255, [7], comment=False)
    s = load_pgm_row(path, 0)
    ref = from_values([7], 0, 1)
    assert np.array_equal(s.values, ref.values) and (s.a, s.b) == (ref.a, ref.b)


def test_pgm_errors(tmp_path):
    path = tmp_path / "x.pgm"
    _write_pgm(path, "P2", 2, 2, 255, [1, 2, 3, 4])
    with pytest.raises(PGMRowError):
        load_pgm_row(path, 2)
    _write_pgm(path, "P2", 2, 2, 1023, [1, 2, 3, 4])
    with pytest.raises(PGMMaxvalError):
        load_pgm_row(path, 0)
    path.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
    with pytest.raises(PGMFormatError):
        load_pgm_row(path, 0)
    path.write_bytes(b"P5\n4 4\n255\n\x00")
    with pytest.raises(PGMFormatError):
        load_pgm_row(path, 0)
    assert issubclass(PGMRowError, PGMError)


def test_load_csv(tmp_path):
    path = tmp_path / "sig.csv"
    path.write_text("value\n8\n5.5\n2\n3\n")
    s = load_csv(path)
    assert s.values.tolist() == [8, 5.5, 2, 3] and (s.a, s.b) == (0.0, 4.0)
    assert load_csv(path, 0, 1).delta == 0.25
    path.write_text("1\nfoo\n")
    with pytest.raises(ValueError):
        load_csv(path)
