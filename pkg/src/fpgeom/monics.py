"""Monic irreducibles over F_p: enumeration, regularity and counting formulas."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ffpoly import ExtScalar, Poly, check_prime

DEFAULT_ENUM_CAP = 2**20


class InternalInconsistency(RuntimeError):
    """Two independent routes to the same quantity disagreed."""


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    k = 2
    while k * k <= n:
        while n % k == 0:
            out[k] = out.get(k, 0) + 1
            n //= k
        k += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def totient(n: int) -> int:
    out = n
    for q in factorize(n):
        out = out // q * (q - 1)
    return out


def g_poly(p: int, n: int) -> Poly:
    """x^(p^n) - x."""
    return Poly.monomial(p, p**n) - Poly.x(p)


def h_poly(p: int, d: int) -> Poly:
    """Trace polynomial x^(p^(d-1)) + ... + x^p + x."""
    coeffs = [0] * (p ** (d - 1) + 1)
    for i in range(d):
        coeffs[p**i] = 1
    return Poly(p, coeffs)


def _frobenius_power(p: int, k: int, f: Poly) -> Poly:
    """x^(p^k) mod f by k successive p-th powers."""
    r = Poly.x(p) % f
    for _ in range(k):
        r = r.powmod(p, f)
    return r


def is_irreducible(f: Poly) -> bool:
    """Frobenius test: f | x^(p^d) - x and gcd(f, x^(p^k) - x) = 1 for proper k | d."""
    if f.degree < 1 or not f.is_monic():
        raise ValueError("irreducibility test needs a monic non-constant polynomial")
    p, d = f.p, f.degree
    if d == 1:
        return True
    x = Poly.x(p)
    if _frobenius_power(p, d, f) != x % f:
        return False
    for k in divisors(d)[:-1]:
        if (_frobenius_power(p, k, f) - x).gcd(f).degree > 0:
            return False
    return True


def gauss_count(p: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_p."""
    check_prime(p)
    total = sum(mobius(k) * p ** (d // k) for k in divisors(d))
    if total % d:
        raise InternalInconsistency("Gauss sum not divisible by d")
    return total // d


def regular_count(p: int, d: int) -> int:
    """Number of monic irreducibles of degree d with nonzero x^(d-1) coefficient."""
    check_prime(p)
    total = (p - 1) * sum(mobius(k) * p ** (d // k) for k in divisors(d) if k % p)
    if total % (p * d):
        raise InternalInconsistency("regular count is not an integer")
    return total // (p * d)


def monics(p: int, d: int):
    """All monic degree-d polynomials, ordered by the integer sum m_i p^i."""
    for low in itertools.product(range(p), repeat=d):
        yield Poly(p, tuple(reversed(low)) + (1,))


def enumerate_irreducibles(p: int, d: int, cap: int = DEFAULT_ENUM_CAP) -> list[Poly]:
    check_prime(p)
    if d < 1:
        raise ValueError("degree must be at least 1")
    if p**d > cap:
        raise ValueError(f"{p}^{d} candidates exceed the enumeration cap {cap}")
    return [m for m in monics(p, d) if is_irreducible(m)]


def trace_of_mu(m: Poly) -> int:
    """h_d(mu) computed inside K = F_p[mu]/(m)."""
    mu = ExtScalar.mu(m)
    acc = ExtScalar(m, 0)
    for i in range(m.degree):
        acc = acc + mu ** (m.p**i)
    return acc.as_residue()


def norm_of_mu(m: Poly) -> int:
    """mu^(1 + p + ... + p^(d-1)) in K."""
    p, d = m.p, m.degree
    return (ExtScalar.mu(m) ** ((p**d - 1) // (p - 1))).as_residue()


def is_regular(m: Poly) -> bool:
    """Nonzero coefficient in degree d-1, cross-checked against h_d(mu) != 0."""
    if not is_irreducible(m):
        raise ValueError(f"{m} is not irreducible")
    by_coeff = m.coeff(m.degree - 1) != 0
    by_trace = trace_of_mu(m) != 0
    if by_coeff != by_trace:
        raise InternalInconsistency(f"trace and coefficient criteria disagree for {m}")
    return by_coeff


@dataclass(frozen=True)
class MonicRecord:
    m: Poly
    irreducible: bool
    regular: bool
    trace_of_mu: int
    norm_of_mu: int

    def to_json(self) -> dict:
        return {
            "m": self.m.format(),
            "coeffs": list(self.m.coeffs),
            "irreducible": self.irreducible,
            "regular": self.regular,
            "trace_of_mu": self.trace_of_mu,
            "norm_of_mu": self.norm_of_mu,
        }


def monic_record(m: Poly) -> MonicRecord:
    p, d = m.p, m.degree
    irr = is_irreducible(m)
    trace = -m.coeff(d - 1) % p
    norm = (-1) ** d * m.coeff(0) % p
    if irr:
        if trace_of_mu(m) != trace or norm_of_mu(m) != norm:
            raise InternalInconsistency(f"trace/norm routes disagree for {m}")
    return MonicRecord(m, irr, irr and trace != 0, trace, norm)


def census(p: int, d: int, regular_only: bool = False, cap: int = DEFAULT_ENUM_CAP) -> list[MonicRecord]:
    recs = [monic_record(m) for m in enumerate_irreducibles(p, d, cap)]
    if regular_only:
        recs = [r for r in recs if r.regular]
    return recs
