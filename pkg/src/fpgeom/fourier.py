"""Fourier theory between A_1 = F_p[x]/(x^p - x) and H_1 = F_p[t]/(t^p - 1).

H_1 is also handled in the basis of powers of L = ln t, where
t = e^L = sum_{i<p} L^i / i! and L^p = 0 (only for p > 2).

Integrals are normalised so that int f = sum_i f(i) on A_1 (hence every
delta_i integrates to 1 and x^(p-1) integrates to -1) and int t^n = [n == 0]
on H_1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .ffpoly import FpMatrix, Poly, check_prime
from .hopf import CYCLIC, NIL, CheckReport, TensorElem, delta, reduce_poly

T = "T"
L = "L"


def _need_odd(p: int) -> None:
    if p == 2:
        raise ValueError("truncated exp/log and the L basis are not defined for p=2")


def _inv_fact(k: int, p: int) -> int:
    return pow(factorial(k), -1, p)


@dataclass(frozen=True)
class A1Elem:
    p: int
    coeffs: Poly

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "coeffs", reduce_poly(self.coeffs, self.p))

    @classmethod
    def from_poly(cls, f: Poly) -> A1Elem:
        return cls(f.p, f)

    @classmethod
    def from_values(cls, p: int, values) -> A1Elem:
        values = list(values)
        if len(values) != p:
            raise ValueError("need one value per point of Z/p")
        out = Poly(p)
        for i, v in enumerate(values):
            out = out + delta(i, p).scale(v)
        return cls(p, out)

    def values(self) -> tuple[int, ...]:
        return tuple(self.coeffs(i) for i in range(self.p))

    delta_coords = values

    def __add__(self, other: A1Elem) -> A1Elem:
        return A1Elem(self.p, self.coeffs + other.coeffs)

    def __sub__(self, other: A1Elem) -> A1Elem:
        return A1Elem(self.p, self.coeffs - other.coeffs)

    def __mul__(self, other: A1Elem | int) -> A1Elem:
        if isinstance(other, int):
            return A1Elem(self.p, self.coeffs.scale(other))
        return A1Elem(self.p, self.coeffs * other.coeffs)

    __rmul__ = __mul__


@dataclass(frozen=True)
class H1Elem:
    """Element of H_1 in the t basis (t^p = 1) or the L basis (L^p = 0)."""

    p: int
    basis_tag: str
    coeffs: Poly

    def __post_init__(self):
        check_prime(self.p)
        if self.basis_tag not in (T, L):
            raise ValueError(f"unknown basis {self.basis_tag!r}")
        if self.basis_tag == L:
            _need_odd(self.p)
        rel = CYCLIC if self.basis_tag == T else NIL
        object.__setattr__(self, "coeffs", reduce_poly(self.coeffs, self.p, rel))

    @classmethod
    def t_power(cls, p: int, n: int) -> H1Elem:
        return cls(p, T, Poly.monomial(p, n % p))

    @classmethod
    def l_power(cls, p: int, n: int) -> H1Elem:
        return cls(p, L, Poly.monomial(p, n))

    @classmethod
    def one(cls, p: int, basis_tag: str = T) -> H1Elem:
        return cls(p, basis_tag, Poly.const(p, 1))

    def _same(self, other: H1Elem) -> H1Elem:
        if other.p != self.p:
            raise ValueError("mismatched primes")
        return other.to_basis(self.basis_tag)

    def __add__(self, other: H1Elem) -> H1Elem:
        return H1Elem(self.p, self.basis_tag, self.coeffs + self._same(other).coeffs)

    def __sub__(self, other: H1Elem) -> H1Elem:
        return H1Elem(self.p, self.basis_tag, self.coeffs - self._same(other).coeffs)

    def __neg__(self) -> H1Elem:
        return H1Elem(self.p, self.basis_tag, -self.coeffs)

    def __mul__(self, other: H1Elem | int) -> H1Elem:
        if isinstance(other, int):
            return H1Elem(self.p, self.basis_tag, self.coeffs.scale(other))
        return H1Elem(self.p, self.basis_tag, self.coeffs * self._same(other).coeffs)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> H1Elem:
        out = H1Elem.one(self.p, self.basis_tag)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.coeffs.is_zero()

    def to_basis(self, tag: str) -> H1Elem:
        if tag == self.basis_tag:
            return self
        p = self.p
        _need_odd(p)
        if tag == L:
            # t^n = e^(nL)
            out = Poly(p)
            for n, c in enumerate(self.coeffs.coeffs):
                out = out + exp_series(p, n).scale(c)
            return H1Elem(p, L, out)
        # L = ln t, evaluated by Horner in the t basis
        ln_t = log_t(p)
        acc = H1Elem(p, T, Poly(p))
        for c in reversed(self.coeffs.coeffs):
            acc = acc * ln_t + H1Elem(p, T, Poly.const(p, c))
        return acc


def exp_series(p: int, n: int = 1) -> Poly:
    """Coefficients of e^(nL) in the L basis."""
    return Poly(p, (pow(n, k, p) * _inv_fact(k, p) for k in range(p)))


def log_t(p: int) -> H1Elem:
    """ln t = -sum_{1 <= i < p} t^i / i, in the t basis."""
    _need_odd(p)
    return H1Elem(p, T, Poly(p, [0] + [-pow(i, -1, p) for i in range(1, p)]))


def trunc_exp(a: H1Elem) -> H1Elem:
    """sum_{i<p} a^i / i!, computed in the L basis and returned in the t basis."""
    p = a.p
    _need_odd(p)
    a = a.to_basis(L)
    acc = H1Elem(p, L, Poly(p))
    power = H1Elem.one(p, L)
    for i in range(p):
        acc = acc + power * _inv_fact(i, p)
        power = power * a
    return acc.to_basis(T)


def trunc_log(b: H1Elem) -> H1Elem:
    """-sum_{1 <= i < p} b^i / i, computed in the t basis and returned in the L basis."""
    p = b.p
    _need_odd(p)
    b = b.to_basis(T)
    acc = H1Elem(p, T, Poly(p))
    power = b
    for i in range(1, p):
        acc = acc - power * pow(i, -1, p)
        power = power * b
    return acc.to_basis(L)


# -- integrals and transforms ------------------------------------------------


def integral(f: A1Elem | H1Elem) -> int:
    if isinstance(f, A1Elem):
        return sum(f.values()) % f.p
    if f.basis_tag == T:
        return f.coeffs.coeff(0)
    return (f.coeffs.coeff(0) + f.coeffs.coeff(f.p - 1)) % f.p


def fourier(f: A1Elem) -> H1Elem:
    """F(f) = sum_i t^i f(i)."""
    return H1Elem(f.p, T, Poly(f.p, f.values()))


def inverse_fourier(g: H1Elem) -> A1Elem:
    """F^-1(t^i) = delta_i."""
    g = g.to_basis(T)
    return A1Elem.from_values(g.p, g.coeffs.padded(g.p))


def fourier_exp_kernel(f: A1Elem) -> H1Elem:
    """F(f) = int e^(L (x) x) f(x), evaluated in the L basis."""
    p = f.p
    _need_odd(p)
    coeffs = []
    for m in range(p):
        xm = A1Elem(p, Poly.monomial(p, m))
        coeffs.append(_inv_fact(m, p) * integral(xm * f))
    return H1Elem(p, L, Poly(p, coeffs))


def inverse_fourier_exp_kernel(g: H1Elem) -> A1Elem:
    """F^-1(g) = int g(L) e^(-L (x) x)."""
    p = g.p
    _need_odd(p)
    g = g.to_basis(L)
    coeffs = []
    for m in range(p):
        lm = H1Elem.l_power(p, m)
        coeffs.append((-1) ** m * _inv_fact(m, p) * integral(g * lm))
    return A1Elem(p, Poly(p, coeffs))


def coevaluation_integral(p: int) -> int:
    """(int (x) int) of exp = sum_i t^i (x) delta_i."""
    return sum(integral(H1Elem.t_power(p, i)) * integral(A1Elem(p, delta(i, p))) for i in range(p)) % p


def coevaluation_integral_exp_form(p: int) -> int:
    """The same volume from exp = e^(L (x) x) = sum_m L^m/m! (x) x^m."""
    _need_odd(p)
    return sum(
        _inv_fact(m, p) * integral(H1Elem.l_power(p, m)) * integral(A1Elem(p, Poly.monomial(p, m)))
        for m in range(p)
    ) % p


# -- coproduct of L -----------------------------------------------------------

BINOMIAL = "binomial"
MULTIPLICATIVE = "multiplicative"


def _ltensor(p: int, coeffs=None) -> TensorElem:
    return TensorElem(p, p, coeffs or {}, NIL)


def swinging_coefficients(p: int) -> list[int]:
    """a_i = (C(p-1, i) - (-1)^i) / p mod p, for i = 1 .. p-2 (index 0 unused)."""
    out = [0]
    for i in range(1, p - 1):
        num = comb(p - 1, i) - (-1) ** i
        if num % p:
            raise AssertionError(f"p does not divide C(p-1,{i}) - (-1)^{i}")
        out.append(num // p % p)
    return out


def deltaL(p: int, form: str = BINOMIAL) -> TensorElem:
    """Delta L in H_1 (x) H_1, both legs in the L basis."""
    check_prime(p)
    _need_odd(p)
    prim = _ltensor(p, {(1, 0): 1, (0, 1): 1})
    if form == BINOMIAL:
        corr = {}
        for i in range(1, p):
            c = comb(p, i)
            if c % p:
                raise AssertionError("p does not divide C(p, i)")
            corr[(i, p - i)] = -(c // p)
        return prim + _ltensor(p, corr)
    if form == MULTIPLICATIVE:
        a = swinging_coefficients(p)
        factor = _ltensor(p, {(0, 0): 1})
        factor = factor - _ltensor(p, {(i, p - 1 - i): a[i] for i in range(1, p - 1)})
        return factor * prim
    raise ValueError(f"unknown form {form!r}")


def deltaL_group_like(p: int) -> TensorElem:
    """Delta L = ln(t (x) t) = -sum_i (t^i (x) t^i)/i, legs converted to the L basis."""
    _need_odd(p)
    out = _ltensor(p)
    for i in range(1, p):
        e = exp_series(p, i)
        out = out + TensorElem.pure(e, e, p, NIL).scale(-pow(i, -1, p))
    return out


def tensor_exp(X: TensorElem) -> TensorElem:
    p = X.p
    acc = _ltensor(p)
    power = _ltensor(p, {(0, 0): 1})
    for k in range(p):
        acc = acc + power.scale(_inv_fact(k, p))
        power = power * X
    return acc


# -- derivatives ---------------------------------------------------------------


def derivative_a1(f: A1Elem, mu: int) -> A1Elem:
    """(f(x+mu) - f(x)) / mu."""
    p = f.p
    if mu % p == 0:
        raise ValueError("mu must be nonzero mod p")
    shifted = f.coeffs.compose(Poly(p, (mu, 1)))
    return A1Elem(p, (shifted - f.coeffs).scale(pow(mu, -1, p)))


def derivative_h1(g: H1Elem) -> H1Elem:
    """Left-invariant derivative: t^m -> m t^m; in the L basis f'(L)(1 - L^(p-1))."""
    p = g.p
    if g.basis_tag == T:
        return H1Elem(p, T, Poly(p, (n * c for n, c in enumerate(g.coeffs.coeffs))))
    corr = H1Elem(p, L, Poly.const(p, 1) - Poly.monomial(p, p - 1))
    return H1Elem(p, L, g.coeffs.derivative()) * corr


def shift_symbol(p: int, mu: int) -> H1Elem:
    """(t^-mu - 1) / mu: the multiplier that F turns the mu-step derivative into."""
    return (H1Elem.t_power(p, -mu) - H1Elem.one(p)) * pow(mu, -1, p)


def verify_fourier_identities(p: int, mu: int) -> CheckReport:
    """F d = ((t^-mu - 1)/mu) F on A_1 and F^-1 d = x F^-1 on H_1, on full bases."""
    check_prime(p)
    rep = CheckReport(f"fourier_identities p={p} mu={mu}")
    sym = shift_symbol(p, mu)
    x = A1Elem(p, Poly.x(p))
    for n in range(p):
        f = A1Elem(p, Poly.monomial(p, n))
        rep.check(fourier(derivative_a1(f, mu)) == sym * fourier(f), f"F d x^{n}")
        g = H1Elem.t_power(p, n)
        rep.check(inverse_fourier(derivative_h1(g)) == x * inverse_fourier(g), f"F^-1 d t^{n}")
    if p > 2:
        for n in range(p):
            g = H1Elem.l_power(p, n)
            lhs = inverse_fourier(derivative_h1(g))
            rep.check(lhs == x * inverse_fourier(g), f"F^-1 d L^{n}")
            rep.check(
                derivative_h1(g).to_basis(T) == derivative_h1(g.to_basis(T)),
                f"L-basis derivative of L^{n} matches the degree operator",
            )
    return rep


def a1_derivative_matrix(p: int, mu: int) -> FpMatrix:
    cols = [derivative_a1(A1Elem(p, Poly.monomial(p, n)), mu).coeffs.padded(p) for n in range(p)]
    return FpMatrix.from_columns(p, cols, p)


@dataclass(frozen=True)
class A1Cohomology:
    h0_dim: int
    h1_dim: int
    h0_basis: list[Poly]
    h1_representatives: list[Poly]


def h0_h1_a1(p: int, mu: int) -> A1Cohomology:
    """H^0 = ker d and H^1 = A_1 dx / im d for the mu-step calculus (Omega^2 = 0)."""
    if mu % p == 0:
        raise ValueError("mu must be nonzero mod p")
    M = a1_derivative_matrix(p, mu)
    kern = [Poly(p, v) for v in M.kernel()]
    image = FpMatrix(p, [list(col) for col in zip(*M.rows)], ncols=p)
    _, pivots = image.rref()
    reps = [Poly.monomial(p, k) for k in range(p) if k not in pivots]
    return A1Cohomology(len(kern), p - M.rank(), kern, reps)
