"""The calculus Omega(F_p[x]; m) and its zeroth cohomology.

One-forms live in K[x] with K = F_p[mu]/(m); the differential is
d f = (f(x+mu) - f(x)) mu^-1 and the right action is v.f(x) = f(x+mu) v.
The modulus m = x (mu = 0) stands for the classical calculus.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum

from .ffpoly import ColumnReducer, ExtPoly, ExtScalar, FpMatrix, Poly
from .monics import g_poly, h_poly, is_irreducible, is_regular

DEFAULT_MATRIX_CAP = 3**10


def matrix_cap() -> int:
    return int(os.environ.get("FPGEOM_MATRIX_CAP", DEFAULT_MATRIX_CAP))


@dataclass(frozen=True)
class CalculusData:
    m: Poly
    mu: ExtScalar
    mu_inv: ExtScalar | None

    @classmethod
    def from_modulus(cls, m: Poly) -> CalculusData:
        if not is_irreducible(m):
            raise ValueError(f"{m} is not irreducible")
        mu = ExtScalar.mu(m)
        return cls(m, mu, None if mu.is_zero() else mu.inverse())

    @property
    def p(self) -> int:
        return self.m.p

    @property
    def d(self) -> int:
        return self.m.degree

    @property
    def classical(self) -> bool:
        return self.mu_inv is None


def _calc(c: CalculusData | Poly) -> CalculusData:
    return c if isinstance(c, CalculusData) else CalculusData.from_modulus(c)


def differential(f: Poly, c: CalculusData | Poly) -> ExtPoly:
    c = _calc(c)
    if c.classical:
        return ExtPoly.from_poly(f.derivative(), c.m)
    F = ExtPoly.from_poly(f, c.m)
    return (F.shift() - F) * c.mu_inv


def right_act(omega: ExtPoly, f: Poly, c: CalculusData | Poly) -> ExtPoly:
    """omega . f = omega * f(x+mu)."""
    c = _calc(c)
    F = ExtPoly.from_poly(f, c.m)
    return omega * (F if c.classical else F.shift())


class H0Class(str, Enum):
    G_D = "G_D"
    H_D = "H_D"
    X_POWER_P = "X_POWER_P"
    OTHER = "OTHER"


@dataclass(frozen=True)
class H0Report:
    m: Poly
    generator: Poly | None
    classification: H0Class | None
    search_bound: int

    def to_json(self) -> dict:
        return {
            "m": self.m.format("mu"),
            "p": self.m.p,
            "d": self.m.degree,
            "generator": None if self.generator is None else self.generator.format(),
            "generator_degree": None if self.generator is None else self.generator.degree,
            "classification": None if self.classification is None else self.classification.value,
            "search_bound": self.search_bound,
        }


def _classify(g: Poly, m: Poly) -> H0Class:
    p, d = m.p, m.degree
    if m == Poly.x(p):
        return H0Class.X_POWER_P if g == Poly.monomial(p, p) else H0Class.OTHER
    if g == g_poly(p, d):
        return H0Class.G_D
    if g == h_poly(p, d):
        return H0Class.H_D
    return H0Class.OTHER


def h0_generator(m: Poly, bound: int | None = None) -> H0Report:
    """Monic generator of minimal positive degree of H^0(F_p[x]; m).

    Columns are the images of x^n under f -> f(x+mu) - f(x) (or the formal
    derivative in the classical case); the first linear dependency involving
    x^t gives the generator, with its constant term set to zero.
    """
    c = CalculusData.from_modulus(m)
    p, d = c.p, c.d
    if bound is None:
        bound = p**d + 1
    red = ColumnReducer(p)
    mu = c.mu
    power = [ExtScalar(m, 1)]  # coefficients of (x+mu)^n
    red.add([0])
    for t in range(1, bound + 1):
        if c.classical:
            col = [0] * (t - 1) + [t % p]
        else:
            power = [
                (power[k - 1] if k >= 1 else ExtScalar(m, 0))
                + (mu * power[k] if k < len(power) else ExtScalar(m, 0))
                for k in range(len(power) + 1)
            ]
            col = []
            for k in range(t):
                col.extend(power[k].vector())
        dep = red.add(col)
        if dep is not None:
            coeffs = list(dep)
            coeffs[0] = 0
            g = Poly(p, coeffs)
            if not differential(g, c).is_zero():
                raise AssertionError(f"generator {g} is not closed")
            return H0Report(m, g, _classify(g, m), bound)
    return H0Report(m, None, None, bound)


def quotient_d_matrix(m: Poly) -> FpMatrix:
    """d on A_d = F_p[x]/(g_d) as a (d p^d) x p^d matrix, via f(x+mu) - f(x).

    Using the invariance condition avoids the mu^-1 factor; the kernels agree.
    """
    c = CalculusData.from_modulus(m)
    if c.classical:
        raise ValueError("the classical calculus (m = x) does not descend to A_d: d(g_d) = -1")
    p, d = c.p, c.d
    q = p**d
    if q > matrix_cap():
        raise ValueError(f"p^d = {q} exceeds the matrix cap {matrix_cap()}")
    gd = g_poly(p, d)
    cols = []
    for n in range(q):
        F = ExtPoly.from_poly(Poly.monomial(p, n), m)
        img = (F.shift() - F) % gd
        cols.append(img.vector(q))
    return FpMatrix.from_columns(p, cols, d * q)


def h0_on_quotient(m: Poly) -> tuple[int, list[Poly]]:
    """Dimension and basis of ker d on A_d."""
    basis = quotient_d_matrix(m).kernel()
    return len(basis), [Poly(m.p, v) for v in basis]


@dataclass
class ConjectureEvidence:
    m: Poly
    holds: bool
    report: H0Report
    note: str = field(default="finite search only; consistent with, not a proof of, H^0 = F_p[h_d]")


def conjecture_probe(m: Poly, bound: int | None = None) -> bool:
    """True iff the minimal H^0 generator within ``bound`` is h_d.

    Only for non-regular m of degree > 1.  A positive answer is evidence.
    """
    if m.degree <= 1:
        raise ValueError("the probe needs degree > 1")
    if is_regular(m):
        raise ValueError(f"{m.format('mu')} is regular; the probe concerns non-regular moduli")
    return h0_generator(m, bound).classification is H0Class.H_D


def conjecture_evidence(m: Poly, bound: int | None = None) -> ConjectureEvidence:
    holds = conjecture_probe(m, bound)
    return ConjectureEvidence(m, holds, h0_generator(m, bound))
