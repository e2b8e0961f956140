import numpy as np
import pytest

from distmind import _kernels
from distmind.fourier import (
    CharacterIndex,
    FourierSpectrum,
    HypercubeFunction,
    char_eval,
    inverse_wht,
    parity_signs,
    point,
    rank_of,
    rank_order,
    wht,
)


def naive_wht(values, nu):
    """Independent O(4^nu) oracle from the definition.

    coeffs[a] = 2^-nu sum_t f(t) * prod_{i: bit i of a set} x_i(t), with
    x_i(t) = +1 when bit (nu-1-i) of t is 1, else -1 (the documented order).
    """
    s = 1 << nu
    out = np.zeros(s)
    for a in range(s):
        acc = 0.0
        for t in range(s):
            chi = 1.0
            for i in range(nu):
                if (a >> (nu - 1 - i)) & 1:
                    chi *= 1.0 if (t >> (nu - 1 - i)) & 1 else -1.0
            acc += values[t] * chi
        out[a] = acc / s
    return out


class TestCharEval:
    def test_empty_character_is_one(self):
        a = CharacterIndex((0, 0))
        assert char_eval(a, (-1, -1)) == 1.0
        assert char_eval(a, (1, -1)) == 1.0

    def test_full_character_is_product(self):
        assert char_eval(CharacterIndex((1, 1)), (-1, 1)) == -1.0

    def test_skip_pattern(self):
        assert char_eval(CharacterIndex((1, 0, 1)), (-1, -1, -1)) == 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            char_eval(CharacterIndex((1, 0)), (-1, -1, -1))

    def test_weight(self):
        assert CharacterIndex((1, 0, 1, 1)).weight == 3
        with pytest.raises(ValueError):
            CharacterIndex((0, 2))

    def test_packed_round_trip(self):
        for nu in range(1, 5):
            for a in range(1 << nu):
                assert CharacterIndex.from_packed(a, nu).packed == a


class TestWht:
    def test_constant_function(self):
        coeffs = wht([1.0, 1.0, 1.0, 1.0])
        assert coeffs[0] == 1.0
        assert np.all(coeffs[1:] == 0.0)

    def test_basis_function(self):
        # f = chi_{11} on nu=2
        values = [char_eval(CharacterIndex((1, 1)), point(t, 2)) for t in range(4)]
        coeffs = wht(values)
        expected = np.zeros(4)
        expected[0b11] = 1.0
        assert np.array_equal(coeffs, expected)

    @pytest.mark.parametrize("nu", range(0, 7))
    def test_matches_naive_definition(self, nu):
        rng = np.random.default_rng(100 + nu)
        values = rng.standard_normal(1 << nu)
        reference = naive_wht(values, nu)
        got = wht(values)
        assert np.max(np.abs(got - reference)) <= 1e-12 * max(1.0, np.max(np.abs(reference)))

    @pytest.mark.parametrize("nu", range(0, 11))
    def test_round_trip(self, nu):
        rng = np.random.default_rng(nu)
        values = rng.standard_normal(1 << nu)
        back = inverse_wht(wht(values))
        assert np.max(np.abs(back - values)) <= 1e-12 * max(1.0, np.max(np.abs(values)))

    def test_inverse_of_delta_spectrum_is_constant(self):
        spectrum = np.zeros(8)
        spectrum[0] = 1.0
        assert np.array_equal(inverse_wht(spectrum), np.ones(8))

    def test_inverse_of_zero_spectrum(self):
        assert np.array_equal(inverse_wht(np.zeros(16)), np.zeros(16))

    def test_parseval(self):
        rng = np.random.default_rng(5)
        for nu in (3, 6, 9):
            values = rng.standard_normal(1 << nu)
            coeffs = wht(values)
            lhs = np.mean(values**2)
            rhs = np.sum(coeffs**2)
            assert abs(lhs - rhs) <= 1e-9 * abs(lhs)

    def test_linearity(self):
        rng = np.random.default_rng(6)
        f, g = rng.standard_normal(64), rng.standard_normal(64)
        combo = wht(2.5 * f - 1.25 * g)
        split = 2.5 * wht(f) - 1.25 * wht(g)
        assert np.max(np.abs(combo - split)) <= 1e-12

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            wht([1.0, 2.0, 3.0])

    def test_accepts_wrapper_types(self):
        fn = HypercubeFunction(values=(1.0, 0.0, 0.0, 0.0))
        spec = FourierSpectrum(coeffs=tuple(wht(fn)))
        assert np.array_equal(inverse_wht(spec), fn.as_array())

    def test_wrapper_validation(self):
        with pytest.raises(ValueError):
            HypercubeFunction(values=(1.0, 2.0, 3.0))
        with pytest.raises(ValueError):
            FourierSpectrum(coeffs=())


class TestKernels:
    def test_numpy_kernel_standalone(self):
        rng = np.random.default_rng(2)
        data = rng.standard_normal(256)
        a = data.copy()
        _kernels.fwht_inplace_numpy(a)
        # the standard unnormalized transform: a[j] = sum_t (-1)^popcount(j&t) data[t]
        j = 37
        expected = sum(data[t] * (-1) ** ((j & t).bit_count()) for t in range(256))
        assert abs(a[j] - expected) <= 1e-9

    @pytest.mark.skipif(not _kernels.HAVE_ACCEL, reason="compiled kernel not built")
    def test_compiled_matches_fallback_bitwise(self):
        rng = np.random.default_rng(3)
        for nu in range(0, 13):
            data = rng.standard_normal(1 << nu)
            a, b = data.copy(), data.copy()
            _kernels.fwht_inplace(a)
            _kernels.fwht_inplace_numpy(b)
            assert np.array_equal(a, b)


class TestOrdering:
    def test_rank_order_is_weight_major(self):
        order = rank_order(3)
        assert order[0] == 0b111
        weights = [a.bit_count() for a in order]
        assert weights == sorted(weights, reverse=True)
        # ties broken by packed value ascending
        assert list(order[1:4]) == [0b011, 0b101, 0b110]
        assert order[-1] == 0

    def test_rank_of_inverts_order(self):
        order = rank_order(4)
        ranks = rank_of(4)
        for pos, a in enumerate(order):
            assert ranks[a] == pos

    def test_parity_signs(self):
        signs = parity_signs(3)
        for a in range(8):
            assert signs[a] == (-1) ** a.bit_count()
