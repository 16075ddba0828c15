from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpgeom.ffpoly import Poly
from fpgeom.fourier import (
    BINOMIAL,
    L,
    MULTIPLICATIVE,
    T,
    A1Elem,
    H1Elem,
    coevaluation_integral,
    coevaluation_integral_exp_form,
    deltaL,
    deltaL_group_like,
    derivative_a1,
    derivative_h1,
    exp_series,
    fourier,
    fourier_exp_kernel,
    h0_h1_a1,
    integral,
    inverse_fourier,
    inverse_fourier_exp_kernel,
    log_t,
    shift_symbol,
    swinging_coefficients,
    tensor_exp,
    trunc_exp,
    trunc_log,
    verify_fourier_identities,
)
from fpgeom.hopf import NIL, TensorElem, delta

ODD = (3, 5, 7, 11)


def a1(p, *c):
    return A1Elem(p, Poly(p, c))


def t_(p, n):
    return H1Elem.t_power(p, n)


def l_(p, n):
    return H1Elem.l_power(p, n)


class TestIntegrals:
    @pytest.mark.parametrize("p", (2, 3, 5, 7))
    def test_delta_integrates_to_one(self, p):
        assert all(integral(A1Elem(p, delta(i, p))) == 1 for i in range(p))
        assert integral(H1Elem.one(p)) == 1

    @pytest.mark.parametrize("p", ODD)
    def test_l_basis_integrals(self, p):
        for i in range(p):
            assert integral(l_(p, i)) == (1 if i in (0, p - 1) else 0)
            assert integral(l_(p, i).to_basis(T)) == integral(l_(p, i))

    @pytest.mark.parametrize("p", (3, 5, 7))
    def test_top_coefficient_convention_differs_by_sign(self, p):
        # sum-of-values normalisation: x^(p-1) integrates to -1, so reading off the
        # top coefficient instead would give every delta_i integral -1
        assert integral(A1Elem(p, Poly.monomial(p, p - 1))) == p - 1
        assert all(delta(i, p).coeff(p - 1) == p - 1 for i in range(p))

    @pytest.mark.parametrize("p", ODD)
    def test_volume(self, p):
        assert coevaluation_integral(p) == 1
        assert coevaluation_integral_exp_form(p) == 1


class TestTransform:
    def test_examples(self):
        assert fourier(A1Elem(3, delta(1, 3))) == t_(3, 1)
        assert fourier(a1(5, 1)) == H1Elem(5, T, Poly(5, (1,) * 5))
        assert inverse_fourier(t_(3, 2)) == a1(3, 0, 1, 2)

    @pytest.mark.parametrize("p", (2, 3, 5, 7, 11))
    def test_mutually_inverse_on_bases(self, p):
        for n in range(p):
            f = A1Elem(p, Poly.monomial(p, n))
            assert inverse_fourier(fourier(f)) == f
            assert fourier(inverse_fourier(t_(p, n))) == t_(p, n)

    @pytest.mark.parametrize("p", ODD)
    def test_exp_kernel_forms(self, p):
        for n in range(p):
            f = A1Elem(p, Poly.monomial(p, n))
            assert fourier_exp_kernel(f).to_basis(T) == fourier(f)
            assert inverse_fourier_exp_kernel(t_(p, n)) == inverse_fourier(t_(p, n))

    @given(st.sampled_from(ODD), st.data())
    def test_linearity(self, p, data):
        cs = st.lists(st.integers(0, p - 1), max_size=p).map(lambda v: A1Elem(p, Poly(p, v)))
        f, g = data.draw(cs), data.draw(cs)
        k = data.draw(st.integers(0, p - 1))
        assert fourier(f + g * k) == fourier(f) + fourier(g) * k


class TestExpLog:
    def test_examples(self):
        assert log_t(3) == H1Elem(3, T, Poly(3, (0, 2, 1)))
        assert trunc_exp(trunc_log(t_(3, 1))) == t_(3, 1)
        assert trunc_exp(H1Elem(5, L, Poly(5))) == H1Elem.one(5)
        assert trunc_exp(l_(7, 1)) == t_(7, 1)
        assert trunc_log(t_(7, 1)) == l_(7, 1)

    def test_p2_rejected(self):
        with pytest.raises(ValueError):
            trunc_exp(H1Elem(2, T, Poly(2, (0, 1))))
        with pytest.raises(ValueError):
            H1Elem(2, L, Poly(2, (0, 1)))
        with pytest.raises(ValueError):
            deltaL(2)

    @pytest.mark.parametrize("p", ODD)
    def test_round_trips(self, p):
        for n in range(1, p):
            for k in range(1, p):
                a = l_(p, n) * k
                assert trunc_log(trunc_exp(a)) == a
        for n in range(p):
            assert trunc_exp(trunc_log(t_(p, n))) == t_(p, n)
            assert t_(p, n).to_basis(L).to_basis(T) == t_(p, n)

    @pytest.mark.parametrize("p", ODD)
    def test_group_law(self, p):
        L1 = l_(p, 1)
        for i, j in itertools.product(range(p), repeat=2):
            assert trunc_exp(L1 * i) * trunc_exp(L1 * j) == trunc_exp(L1 * ((i + j) % p))
            assert trunc_exp(L1 * i) == t_(p, i)


class TestDeltaL:
    def test_p3_form(self):
        expected = TensorElem(3, 3, {(1, 0): 1, (0, 1): 1, (1, 2): 2, (2, 1): 2}, NIL)
        assert deltaL(3) == expected

    @pytest.mark.parametrize("p", ODD)
    def test_forms_agree_and_group_like(self, p):
        dl = deltaL(p, BINOMIAL)
        assert dl == deltaL(p, MULTIPLICATIVE)
        assert dl == deltaL_group_like(p)
        e = exp_series(p, 1)
        assert tensor_exp(dl) == TensorElem.pure(e, e, p, NIL)

    @pytest.mark.parametrize("p", (5, 7, 11, 13))
    def test_swinging_coefficients(self, p):
        a = swinging_coefficients(p)
        assert a[1] == 1
        assert a[2] == (p - 3) // 2 % p
        assert all(a[i] == a[p - 1 - i] for i in range(1, p - 1))

    def test_swinging_values(self):
        assert swinging_coefficients(5) == [0, 1, 1, 1]
        assert swinging_coefficients(7) == [0, 1, 2, 3, 2, 1]

    def test_unknown_form(self):
        with pytest.raises(ValueError):
            deltaL(5, "other")


class TestDerivatives:
    def test_examples(self):
        for mu in (1, 2, 3, 4):
            assert derivative_a1(a1(5, 0, 1), mu) == a1(5, 1)
        assert derivative_h1(t_(5, 2)) == t_(5, 2) * 2
        assert derivative_h1(l_(3, 1)) == H1Elem(3, L, Poly(3, (1, 0, 2)))
        with pytest.raises(ValueError):
            derivative_a1(a1(5, 0, 1), 0)

    @pytest.mark.parametrize("p", (3, 5, 7))
    def test_l_derivative_matches_degree_operator(self, p):
        for m in range(p):
            g = t_(p, m)
            assert derivative_h1(g.to_basis(L)).to_basis(T) == derivative_h1(g)
        for i in range(2, p):
            assert derivative_h1(l_(p, i)) == l_(p, i - 1) * i

    def test_intertwining_example(self):
        # F(d x) against the shift symbol, p = 3, mu = 1
        f = a1(3, 0, 1)
        lhs = fourier(derivative_a1(f, 1))
        assert lhs == shift_symbol(3, 1) * fourier(f)

    def test_positive_shift_symbol_fails(self):
        # with F(f) = sum t^i f(i) the multiplier is (t^-mu - 1)/mu, not (t^mu - 1)/mu
        f = a1(3, 0, 1)
        wrong = (t_(3, 1) - H1Elem.one(3)) * fourier(f)
        assert fourier(derivative_a1(f, 1)) != wrong

    @pytest.mark.parametrize("p", (2, 3, 5, 7, 11))
    def test_identities_all_mu(self, p):
        for mu in range(1, p):
            rep = verify_fourier_identities(p, mu)
            assert rep.passed, rep.failures

    def test_constant_has_zero_derivative(self):
        assert derivative_a1(a1(5, 1), 2) == a1(5)


class TestCohomology:
    @pytest.mark.parametrize("p,mu", [(3, 1), (5, 3), (7, 2), (11, 5), (2, 1)])
    def test_dims(self, p, mu):
        coh = h0_h1_a1(p, mu)
        assert (coh.h0_dim, coh.h1_dim) == (1, 1)
        assert coh.h0_basis == [Poly.const(p, 1)]
        assert coh.h1_representatives == [Poly.monomial(p, p - 1)]

    def test_mu_zero_rejected(self):
        with pytest.raises(ValueError):
            h0_h1_a1(5, 0)
