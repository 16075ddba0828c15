"""Hopf structure of A_d = F_p[x]/(x^(p^d) - x).

Elements of A_d are Polys of degree < p^d.  Tensors are sparse dicts keyed
on exponent pairs.  The same tensor class also serves the truncated
(L^q = 0) and cyclic (t^q = 1) algebras used on the Fourier side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb

from .ffpoly import FpMatrix, Poly, check_prime
from .monics import divisors, gauss_count, g_poly, h_poly, totient

IDEM = "idem"  # x^q = x
NIL = "nil"  # x^q = 0
CYCLIC = "cyclic"  # x^q = 1


def reduce_exponent(n: int, q: int, relation: str = IDEM) -> int | None:
    """Canonical exponent of x^n under the leg relation; None means zero."""
    if n < q:
        return n
    if relation == IDEM:
        return (n - 1) % (q - 1) + 1
    if relation == NIL:
        return None
    if relation == CYCLIC:
        return n % q
    raise ValueError(f"unknown relation {relation!r}")


def reduce_poly(f: Poly, q: int, relation: str = IDEM) -> Poly:
    out = [0] * q
    for n, c in enumerate(f.coeffs):
        k = reduce_exponent(n, q, relation)
        if k is not None:
            out[k] += c
    return Poly(f.p, out)


def reduce_ad(f: Poly, d: int) -> Poly:
    return reduce_poly(f, f.p**d)


class TensorElem:
    """Sparse element of B (x) B for B = F_p[x]/(relation in degree q)."""

    __slots__ = ("p", "q", "relation", "coeffs")

    def __init__(self, p: int, q: int, coeffs=None, relation: str = IDEM):
        self.p = p
        self.q = q
        self.relation = relation
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in (coeffs or {}).items():
            i2 = reduce_exponent(i, q, relation)
            j2 = reduce_exponent(j, q, relation)
            if i2 is None or j2 is None:
                continue
            out[(i2, j2)] = (out.get((i2, j2), 0) + c) % p
        self.coeffs = {k: v for k, v in sorted(out.items()) if v}

    @classmethod
    def for_ad(cls, p: int, d: int, coeffs=None) -> TensorElem:
        return cls(p, p**d, coeffs, IDEM)

    @classmethod
    def pure(cls, f: Poly, g: Poly, q: int, relation: str = IDEM) -> TensorElem:
        return cls(
            f.p, q, {(i, j): a * b for i, a in enumerate(f.coeffs) for j, b in enumerate(g.coeffs)}, relation
        )

    def _like(self, coeffs) -> TensorElem:
        return TensorElem(self.p, self.q, coeffs, self.relation)

    def _check(self, other: TensorElem) -> None:
        if (self.p, self.q, self.relation) != (other.p, other.q, other.relation):
            raise ValueError("incompatible tensor spaces")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElem):
            return NotImplemented
        return (self.p, self.q, self.relation, self.coeffs) == (other.p, other.q, other.relation, other.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*x^{i}(x)x^{j}" for (i, j), c in self.coeffs.items()]
        return "TensorElem(" + (" + ".join(terms) or "0") + ")"

    def __add__(self, other: TensorElem) -> TensorElem:
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return self._like(out)

    def __neg__(self) -> TensorElem:
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: TensorElem) -> TensorElem:
        return self + (-other)

    def scale(self, c: int) -> TensorElem:
        return self._like({k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other: TensorElem) -> TensorElem:
        self._check(other)
        out: dict[tuple[int, int], int] = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                i2 = reduce_exponent(i + k, self.q, self.relation)
                j2 = reduce_exponent(j + l, self.q, self.relation)
                if i2 is None or j2 is None:
                    continue
                out[(i2, j2)] = out.get((i2, j2), 0) + a * b
        return self._like(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def map_legs(self, f, g) -> TensorElem:
        """Apply linear maps (exponent -> Poly) to each leg."""
        out = TensorElem(self.p, self.q, {}, self.relation)
        for (i, j), c in self.coeffs.items():
            out = out + TensorElem.pure(f(i), g(j), self.q, self.relation).scale(c)
        return out

    def to_json(self) -> list:
        return [[i, j, c] for (i, j), c in self.coeffs.items()]


def binom_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        out = out * comb(a, b) % p
        n //= p
        k //= p
    return out


def coproduct_monomial(n: int, p: int, d: int) -> TensorElem:
    return TensorElem.for_ad(p, d, {(k, n - k): binom_mod(n, k, p) for k in range(n + 1)})


def coproduct(f: Poly, d: int) -> TensorElem:
    """Delta f in A_d (x) A_d, with x primitive."""
    p = f.p
    f = reduce_ad(f, d)
    out = TensorElem.for_ad(p, d)
    for n, c in enumerate(f.coeffs):
        if c:
            out = out + coproduct_monomial(n, p, d).scale(c)
    return out


def counit(f: Poly) -> int:
    return f(0)


def antipode(f: Poly, d: int) -> Poly:
    """S f = f(-x)."""
    return reduce_ad(f.compose(Poly(f.p, (0, -1))), d)


def is_primitive(f: Poly, d: int) -> bool:
    one = Poly.const(f.p, 1)
    q = f.p**d
    return coproduct(f, d) == TensorElem.pure(f, one, q) + TensorElem.pure(one, f, q)


def primitives(p: int, d: int) -> list[Poly]:
    """Basis {x^(p^i) : i < d} of primitives, checked against every monomial."""
    check_prime(p)
    expected = [p**i for i in range(d)]
    found = [n for n in range(p**d) if is_primitive(Poly.monomial(p, n), d)]
    if found != expected:
        raise AssertionError(f"primitive monomials {found} != {expected}")
    return [Poly.monomial(p, n) for n in expected]


def primitive_space_dim(p: int, d: int) -> int:
    """dim ker(Delta - id (x) 1 - 1 (x) id) on all of A_d, not just monomials."""
    q = p**d
    cols = []
    for n in range(q):
        f = Poly.monomial(p, n)
        defect = coproduct(f, d) - TensorElem.pure(f, Poly.const(p, 1), q) - TensorElem.pure(Poly.const(p, 1), f, q)
        cols.append([defect.coeffs.get((i, j), 0) for i in range(q) for j in range(q)])
    return len(FpMatrix.from_columns(p, cols, q * q).kernel())


def coassociativity_defects(p: int, d: int) -> list[int]:
    """Exponents n for which (Delta (x) id) Delta x^n != (id (x) Delta) Delta x^n."""
    bad = []
    for n in range(p**d):
        left: dict[tuple[int, int, int], int] = {}
        right: dict[tuple[int, int, int], int] = {}
        for (i, j), c in coproduct_monomial(n, p, d).coeffs.items():
            for (a, b), e in coproduct_monomial(i, p, d).coeffs.items():
                left[(a, b, j)] = (left.get((a, b, j), 0) + c * e) % p
            for (a, b), e in coproduct_monomial(j, p, d).coeffs.items():
                right[(i, a, b)] = (right.get((i, a, b), 0) + c * e) % p
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            bad.append(n)
    return bad


def counit_defects(p: int, d: int) -> list[int]:
    bad = []
    for n in range(p**d):
        lhs = [0] * (p**d)
        rhs = [0] * (p**d)
        for (i, j), c in coproduct_monomial(n, p, d).coeffs.items():
            lhs[j] += c * counit(Poly.monomial(p, i))
            rhs[i] += c * counit(Poly.monomial(p, j))
        x_n = Poly.monomial(p, n)
        if Poly(p, lhs) != x_n or Poly(p, rhs) != x_n:
            bad.append(n)
    return bad


def multiplicativity_defects(p: int, d: int) -> list[tuple[int, int]]:
    """Pairs (a, b) of exponents with Delta(x^a x^b) != Delta(x^a) Delta(x^b)."""
    q = p**d
    bad = []
    for a, b in product(range(q), repeat=2):
        prod = reduce_ad(Poly.monomial(p, a + b), d)
        if coproduct(prod, d) != coproduct_monomial(a, p, d) * coproduct_monomial(b, p, d):
            bad.append((a, b))
    return bad


# -- delta functions and the cocycle ----------------------------------------


def delta(i: int, p: int) -> Poly:
    """-prod_{j != i} (x - j); evaluates to the Kronecker delta at i."""
    i %= p
    return -Poly.from_roots(p, (j for j in range(p) if j != i))


def g1(p: int) -> Poly:
    return g_poly(p, 1)


def cocycle_chi(i: int, j: int, p: int) -> Poly:
    """chi(delta_i (x) delta_j) as a polynomial in the variable g_1."""
    i %= p
    j %= p
    if p == 2:
        return Poly(2, (int(i == 0 and j == 0), 1))
    if i == 0 and j == 0:
        return Poly.const(p, 1)
    if i == 0:
        return Poly(p, (0, pow(j, -1, p)))
    if j == 0:
        return Poly(p, (0, pow(i, -1, p)))
    if i == j:
        return Poly(p, (0, -pow(i, -1, p)))
    return Poly(p)


def chi_in_x(i: int, j: int, p: int) -> Poly:
    return cocycle_chi(i, j, p).compose(g1(p))


@dataclass
class CheckReport:
    """Named pass/fail checks; ``failures`` holds a description of each miss."""

    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, ok: bool, what: str) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(what)
        return ok

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checks": self.checks,
            "failed": len(self.failures),
            "failures": list(self.failures),
            "data": self.data,
        }


def chi_by_convolution(i: int, j: int, p: int) -> Poly:
    """sum_k delta_{i+k} delta_{j+k} delta_k, computed directly in F_p[x]."""
    return sum((delta(i + k, p) * delta(j + k, p) * delta(k, p) for k in range(p)), Poly(p))


def product_reconstruction(i: int, j: int, p: int, chi=None) -> Poly:
    """sum_k chi(delta_{i-k} (x) delta_{j-k}) delta_k, in F_p[x]."""
    chi = chi or chi_in_x
    out = Poly(p)
    for k in range(p):
        out = out + chi(i - k, j - k, p) * delta(k, p)
    return out


def verify_delta_identities(p: int) -> CheckReport:
    """Delta-function product identities, cocycle reconstruction and the convolution inverse."""
    check_prime(p)
    rep = CheckReport(f"delta_identities p={p}")
    g = g1(p)
    ds = [delta(i, p) for i in range(p)]
    one = Poly.const(p, 1)
    rep.check(sum(ds, Poly(p)) == one, "sum of delta_i != 1")
    for i in range(p):
        rep.check(all(ds[i](j) == int(i == j) for j in range(p)), f"delta_{i} values")
    if p == 2:
        rep.check(ds[0] * ds[0] == ds[0] + g, "delta_0^2 != delta_0 + g_1")
        rep.check(ds[1] * ds[1] == ds[1] + g, "delta_1^2 != delta_1 + g_1")
        rep.check(ds[0] * ds[1] == g, "delta_0 delta_1 != g_1")
    else:
        for i in range(p):
            rhs = ds[i] + g * sum((ds[(i + k) % p].scale(pow(k, -1, p)) for k in range(1, p)), Poly(p))
            rep.check(ds[i] * ds[i] == rhs, f"square identity (p={p}, i={i})")
            for j in range(p):
                if i != j:
                    rhs = -(g * (ds[i] - ds[j])).scale(pow(i - j, -1, p))
                    rep.check(ds[i] * ds[j] == rhs, f"product identity (p={p}, i={i}, j={j})")
        for i, j in product(range(p), repeat=2):
            rep.check(chi_by_convolution(i, j, p) == chi_in_x(i, j, p), f"chi convolution (p={p}, i={i}, j={j})")
        for i in range(p):
            conv = sum((ds[j] * ds[(j - i) % p] for j in range(p)), Poly(p))
            rep.check(conv == Poly.const(p, int(i == 0)), f"convolution inverse (p={p}, i={i})")
    for i, j in product(range(p), repeat=2):
        rep.check(
            ds[i] * ds[j] == product_reconstruction(i, j, p),
            f"product reconstruction (p={p}, i={i}, j={j})",
        )
    return rep


def coproduct_of_deltas_defects(p: int, d: int = 1) -> list[int]:
    """Indices i with Delta delta_i != sum_j delta_{i-j} (x) delta_j in A_d."""
    q = p**d
    bad = []
    for i in range(p):
        rhs = TensorElem(p, q)
        for j in range(p):
            rhs = rhs + TensorElem.pure(delta(i - j, p), delta(j, p), q)
        if coproduct(delta(i, p), d) != rhs:
            bad.append(i)
    return bad


def psi(f: Poly) -> Poly:
    """f(x + 1)."""
    return f.compose(Poly(f.p, (1, 1)))


# -- C_d and Frobenius-fixed subalgebras ---------------------------------------


def _linear_map_matrix(p: int, q: int, image) -> FpMatrix:
    cols = [reduce_poly(image(Poly.monomial(p, n)), q).padded(q) for n in range(q)]
    return FpMatrix.from_columns(p, cols, q)


def psi_fixed_basis(p: int, d: int) -> list[Poly]:
    q = p**d
    M = _linear_map_matrix(p, q, lambda f: psi(f) - f)
    return [Poly(p, v) for v in M.kernel()]


def cd_extension_check(p: int, d: int) -> CheckReport:
    """C_d = A_d^psi has dimension p^(d-1), is spanned by powers of g_1 and h_d(g_1) = 0."""
    from .calculus import matrix_cap

    check_prime(p)
    q = p**d
    if q > matrix_cap():
        raise ValueError(f"p^d = {q} exceeds the matrix cap")
    rep = CheckReport(f"cd_extension p={p} d={d}")
    fixed = psi_fixed_basis(p, d)
    dim = len(fixed)
    rep.data["dim"] = dim
    rep.check(dim == p ** (d - 1), f"dim C_d = {dim}, expected {p ** (d - 1)}")
    g = g1(p)
    powers = [reduce_ad(g**i, d) for i in range(p ** (d - 1))]
    rep.data["basis"] = [f.format() for f in powers]
    rep.check(all(psi(f) == f for f in powers), "a power of g_1 is not psi-fixed")
    M_pow = FpMatrix(p, (f.padded(q) for f in powers), ncols=q)
    M_all = FpMatrix(p, [f.padded(q) for f in powers] + [f.padded(q) for f in fixed], ncols=q)
    rep.check(M_pow.rank() == len(powers) == M_all.rank(), "powers of g_1 do not span C_d")
    rep.check(reduce_ad(h_poly(p, d).compose(g), d).is_zero(), "h_d(g_1) != 0 in A_d")
    rep.check(h_poly(p, d).compose(g) == g_poly(p, d), "h_d(g_1) != g_d in F_p[x]")
    one = Poly.const(p, 1)
    rep.check(
        coproduct(g, d) == TensorElem.pure(g, one, q) + TensorElem.pure(one, g, q),
        "g_1 is not primitive in A_d",
    )
    rep.check(reduce_ad(g, 1).is_zero(), "g_1 does not vanish in A_1")
    rep.check(p * dim == q, "dim A_1 * dim C_d != dim A_d")
    return rep


def cyclotomic_cosets(p: int, d: int) -> list[tuple[int, ...]]:
    """Orbits of s -> p*s on Z/(p^d - 1)Z, each sorted, ordered by least element."""
    n = p**d - 1
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        orbit = set()
        t = s
        while t not in orbit:
            orbit.add(t)
            seen[t] = True
            t = t * p % n
        out.append(tuple(sorted(orbit)))
    return out


@dataclass(frozen=True)
class FrobeniusCounts:
    formula_count: int
    coset_count: int
    factor_count: int

    @property
    def agree(self) -> bool:
        return self.formula_count == self.coset_count == self.factor_count


def frobenius_fixed_dim(p: int, d: int) -> FrobeniusCounts:
    check_prime(p)
    total = sum(totient(k) * p ** (d // k) for k in divisors(d))
    if total % d:
        raise AssertionError("totient sum not divisible by d")
    cosets = len(cyclotomic_cosets(p, d)) + 1
    factors = sum(gauss_count(p, k) for k in divisors(d))
    return FrobeniusCounts(total // d, cosets, factors)


def frobenius_fixed_dim_direct(p: int, d: int) -> int:
    """dim ker(F - id) on A_d, F(f) = f^p, by linear algebra."""
    q = p**d
    M = _linear_map_matrix(p, q, lambda f: reduce_ad(f**p, d) - f)
    return len(M.kernel())
