"""Symbol matrices, the corner-corrected determinant identity, and sampled
periodic spectra."""

from __future__ import annotations

import math

import numpy as np
import pytest

from signspectra.cloud import SpectrumCloud
from signspectra.polyroot import evaluate, match_multisets
from signspectra.signmodel import all_sign_vectors, parse_sign_vector
from signspectra.symbol import (
    periodic_spectrum,
    symbol_array,
    symbol_char_value,
    symbol_char_values,
    symbol_eigenvalues,
    symbol_matrix,
    symbol_poly,
    two_cos_pi,
)


def test_two_cos_pi_exact_points():
    assert two_cos_pi(0, 7) == 2.0
    assert two_cos_pi(7, 7) == -2.0
    assert two_cos_pi(1, 2) == 0.0
    assert two_cos_pi(1, 3) == 1.0
    assert two_cos_pi(2, 3) == -1.0
    assert two_cos_pi(14, 7) == 2.0  # full turn
    with pytest.raises(ValueError):
        two_cos_pi(1, 0)


def test_two_cos_pi_matches_cosine_and_mirrors():
    for denom in (5, 8, 840):
        for s in range(2 * denom):
            v = two_cos_pi(s, denom)
            assert v == pytest.approx(2 * math.cos(math.pi * s / denom), abs=1e-14)
            # mirror and shift identities hold bit for bit
            assert v == -two_cos_pi(denom - s, denom)
            assert v == two_cos_pi(s + 2 * denom, denom)


def test_symbol_array_layout_m3():
    a = symbol_array(parse_sign_vector("++-"), 0.0)
    expected = np.array([[0, 1, -1], [1, 0, 1], [1, 1, 0]], dtype=complex)
    assert np.allclose(a, expected, atol=1e-15)
    # exactly 2m nonzero entries of modulus one for m >= 3
    b = symbol_array(parse_sign_vector("+-+-"), 0.7)
    assert np.count_nonzero(b) == 8
    assert np.allclose(np.abs(b[b != 0]), 1.0, atol=1e-15)


def test_symbol_array_small_sizes_sum_overlaps():
    a = symbol_array(parse_sign_vector("++"), 0.0)
    assert np.allclose(a, [[0, 2], [2, 0]], atol=1e-15)
    s = symbol_array(parse_sign_vector("+"), math.pi / 2)
    assert abs(s[0, 0]) <= 1e-15
    sm = symbol_matrix(parse_sign_vector("+"), 0.25)
    assert sm.period == 1 and sm.matrix.shape == (1, 1)


def test_symbol_char_value_examples():
    assert symbol_char_value(parse_sign_vector("++"), 0.0, 0.0) == pytest.approx(-4.0)
    assert symbol_char_value(parse_sign_vector("+"), 0.0, 2.0) == pytest.approx(
        0.0, abs=1e-12
    )
    got = symbol_char_value(parse_sign_vector("+-"), math.pi / 2, 0.0)
    assert got == pytest.approx(2j, abs=1e-12)


def test_symbol_char_values_pairs_up():
    k = parse_sign_vector("+-+")
    phis = np.array([0.1, 2.0])
    lams = np.array([0.3 + 0.1j, -1.0])
    got = symbol_char_values(k, phis, lams)
    want = [symbol_char_value(k, p, z) for p, z in zip(phis, lams)]
    assert np.allclose(got, want, atol=1e-12)
    with pytest.raises(ValueError):
        symbol_char_values(k, phis, lams[:1])


@pytest.mark.parametrize(
    "text,coeffs",
    [
        ("++", (-2, 0, 1)),
        ("+-", (0, 0, 1)),
        ("+", (0, 1)),
        ("--", (2, 0, 1)),
    ],
)
def test_symbol_poly_examples(text, coeffs):
    sp = symbol_poly(parse_sign_vector(text))
    assert sp.int_poly().coeffs == coeffs
    assert sp.p.degree == len(text)
    assert sp.k_product == parse_sign_vector(text).product()


def test_symbol_poly_monic_integer_all_small_periods():
    for m in range(1, 9):
        for k in all_sign_vectors(m):
            sp = symbol_poly(k)
            assert sp.p.degree == m
            assert sp.p.coeffs[-1] == 1
            assert all(c.imag == 0 and c.real == int(c.real) for c in sp.p.coeffs)


def _transfer_trace(signs, lam):
    # product of the one-step recursion matrices [[lam, -k_j], [1, 0]];
    # its trace gives the same degree-m polynomial as the interpolation
    # route, with no determinant or Fourier step shared between them
    t = np.eye(2, dtype=complex)
    for s in signs:
        t = np.array([[lam, -s], [1.0, 0.0]], dtype=complex) @ t
    return t[0, 0] + t[1, 1]


def test_symbol_poly_against_transfer_trace():
    rng = np.random.default_rng(42)
    for m in range(1, 7):
        for k in all_sign_vectors(m):
            sp = symbol_poly(k)
            for _ in range(10):
                lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                want = _transfer_trace(k.signs, lam)
                got, _ = evaluate(sp.p, lam)
                assert abs(got - want) <= 1e-9 * (1 + abs(lam)) ** m


def test_corner_identity_sampled():
    # det(a(phi) - lam I) = (-1)^m (p(lam) - e^{i phi} K - e^{-i phi})
    rng = np.random.default_rng(314159)
    for m in range(1, 6):
        for k in all_sign_vectors(m):
            sp = symbol_poly(k)
            sign = (-1.0) ** m
            for _ in range(10):
                phi = rng.uniform(0, 2 * np.pi)
                lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                lu = symbol_char_value(k, phi, lam)
                pval, _ = evaluate(sp.p, lam)
                rhs = sign * (
                    pval - sp.k_product * np.exp(1j * phi) - np.exp(-1j * phi)
                )
                assert abs(lu - rhs) <= 1e-9 * (1 + abs(lam)) ** m


def test_even_parity_cosine_form_sampled():
    rng = np.random.default_rng(271828)
    for m in range(1, 6):
        for k in all_sign_vectors(m):
            if k.minus_count() % 2:
                continue
            sp = symbol_poly(k)
            sign = (-1.0) ** m
            for _ in range(10):
                phi = rng.uniform(0, 2 * np.pi)
                lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                lu = symbol_char_value(k, phi, lam)
                rhs = sign * (evaluate(sp.p, lam)[0] - 2 * np.cos(phi))
                assert abs(lu - rhs) <= 1e-9 * (1 + abs(lam)) ** m


@pytest.mark.parametrize(
    "text,phi,expected",
    [
        ("+", np.pi / 2, [0]),
        ("++", 0.0, [2, -2]),
    ],
)
def test_symbol_eigenvalues_examples(text, phi, expected):
    got = symbol_eigenvalues(parse_sign_vector(text), phi)
    assert match_multisets(got, expected, 1e-10)


def test_symbol_eigenvalues_double_point():
    # p - target has a double root here; the cluster is reported as-is
    got = symbol_eigenvalues(parse_sign_vector("++"), np.pi)
    assert match_multisets(got, [0, 0], 1e-4)


def test_symbol_eigenvalues_match_lu_oracle():
    rng = np.random.default_rng(5150)
    for m in range(1, 7):
        patterns = list(all_sign_vectors(m))
        for _ in range(4):
            k = patterns[int(rng.integers(0, len(patterns)))]
            phi = rng.uniform(0, 2 * np.pi)
            for lam in symbol_eigenvalues(k, phi):
                resid = abs(symbol_char_value(k, phi, complex(lam)))
                assert resid <= 1e-8 * (1 + abs(lam)) ** m


def test_periodic_spectrum_identity_pattern():
    cloud = periodic_spectrum(parse_sign_vector("+"), 3)
    vals = np.sort_complex(cloud.values())
    assert np.array_equal(vals, np.array([-2, 0, 2], dtype=complex))
    tags = {p.tag for p in cloud}
    assert tags == {"per:m=1:phi=0.000", "per:m=1:phi=1.571", "per:m=1:phi=3.142"}


def test_periodic_spectrum_imaginary_segment():
    cloud = periodic_spectrum(parse_sign_vector("-"), 257)
    v = cloud.values()
    assert len(v) == 2 * 257  # parity doubling makes the polynomial quadratic
    assert np.abs(v.real).max() <= 1e-8
    assert np.abs(v.imag).max() <= 2 + 1e-12


def test_periodic_spectrum_alternating_pattern_quartic():
    # "+-" has odd parity, so sampling doubles the word; the doubled word
    # has trace polynomial lam^4 + 2 and the targets sweep [-2, 2]
    cloud = periodic_spectrum(parse_sign_vector("+-"), 65)
    v = cloud.values()
    assert len(v) == 4 * 65
    w = v**4 + 2
    assert np.abs(w.imag).max() <= 1e-8
    assert w.real.min() >= -2 - 1e-8
    assert w.real.max() <= 2 + 1e-8


def test_periodic_spectrum_symmetries():
    # clouds close under conjugation and negation; the 2e-4 slack covers
    # root clusters at the segment endpoints where p - target degenerates
    for m in range(1, 7):
        for k in all_sign_vectors(m):
            v = periodic_spectrum(k, 17).values()
            assert match_multisets(v, np.conj(v), 2e-4), k.to_text()
            assert match_multisets(v, -v, 2e-4), k.to_text()


def test_periodic_spectrum_rejects_short_sampling():
    with pytest.raises(ValueError):
        periodic_spectrum(parse_sign_vector("+"), 1)


def test_cloud_plumbing():
    c = SpectrumCloud.from_values(np.array([1 + 2j, 0]), "a")
    assert len(c) == 2 and bool(c)
    d = c.merged(SpectrumCloud.from_values(np.array([5.0]), "b"))
    assert [p.tag for p in d.sorted()] == ["a", "a", "b"]
    snapped = SpectrumCloud.from_values(np.array([0, 1e-9, 1.0]), "x").snapped(1e-6)
    assert len(snapped) == 2
    with pytest.raises(ValueError):
        snapped.snapped(0.0)
