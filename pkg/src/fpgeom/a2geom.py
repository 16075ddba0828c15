"""Riemannian geometry of A_2 = F_2[x]/(x^4 + x) with its inherited calculus.

One-forms are modelled inside F_4[x]/(x^4 + x), F_4 = F_2[mu]/(mu^2 + mu + 1):
the form a(x) dx + b(x) mu is the element a + b*mu, and the right action is
omega . f = omega * f(x + mu).  Every relation used below (commutators,
right actions on tensors, d) is computed from that model, not tabulated.

Left-coefficient form is canonical everywhere: a rank-r tensor is a map from
basis words e_{i1} (x) ... (x) e_{ir} (e_0 = dx, e_1 = mu) to A_2 coefficients
standing on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .ffpoly import ExtPoly, ExtScalar, FpMatrix, Poly
from .hopf import (
    CheckReport,
    TensorElem,
    coassociativity_defects,
    coproduct,
    counit_defects,
    delta,
    multiplicativity_defects,
    product_reconstruction,
    reduce_ad,
)

# -- the algebra --------------------------------------------------------------


def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _reduce_bits(v: int) -> int:
    # x^4 = x, x^5 = x^2, x^6 = x^3
    for n in (6, 5, 4):
        if v >> n & 1:
            v ^= (1 << n) | (1 << (n - 3))
    return v


@dataclass(frozen=True, order=True)
class A2Elem:
    """Element of A_2; bit n of ``bits`` is the coefficient of x^n."""

    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < 16:
            raise ValueError("A_2 elements have four bits")

    @classmethod
    def from_poly(cls, f: Poly) -> A2Elem:
        if f.p != 2:
            raise ValueError("A_2 lives over F_2")
        f = reduce_ad(f, 2)
        return cls(sum(c << n for n, c in enumerate(f.coeffs)))

    def to_poly(self) -> Poly:
        return Poly(2, [(self.bits >> n) & 1 for n in range(4)])

    def __add__(self, other: A2Elem) -> A2Elem:
        return A2Elem(self.bits ^ other.bits)

    __sub__ = __add__

    def __neg__(self) -> A2Elem:
        return self

    def __mul__(self, other: A2Elem) -> A2Elem:
        return A2Elem(_reduce_bits(_clmul(self.bits, other.bits)))

    def __pow__(self, n: int) -> A2Elem:
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.bits)

    def counit(self) -> int:
        return self.bits & 1

    def __repr__(self) -> str:
        return f"A2({self.to_poly().format()})"


ZERO = A2Elem(0)
ONE = A2Elem(1)
X = A2Elem(2)
E1 = A2Elem(0b0110)  # x^2 + x
E3 = A2Elem(0b1001)  # x^3 + 1
E2 = ONE + E1 + E3  # x^3 + x^2 + x
ELEMENTS = tuple(A2Elem(b) for b in range(16))
MONOMIALS = tuple(A2Elem(1 << n) for n in range(4))

# -- the F_4[x] model -------------------------------------------------------------

M_F4 = Poly(2, (1, 1, 1))
G2 = Poly(2, (0, 1, 0, 0, 1))
MU = ExtScalar.mu(M_F4)
MU_INV = MU.inverse()


def _to_ext(cdx: A2Elem, cmu: A2Elem) -> ExtPoly:
    return ExtPoly(
        M_F4, (ExtScalar(M_F4, ((cdx.bits >> n) & 1, (cmu.bits >> n) & 1)) for n in range(4))
    )


def _from_ext(w: ExtPoly) -> Omega1:
    cdx = cmu = 0
    for n in range(4):
        a, b = w.coeff(n).vector()
        cdx |= a << n
        cmu |= b << n
    return Omega1(A2Elem(cdx), A2Elem(cmu))


def _shifted(f: A2Elem) -> ExtPoly:
    return ExtPoly.from_poly(f.to_poly(), M_F4).shift() % G2


@lru_cache(maxsize=None)
def _basis_right(i: int, fbits: int) -> Omega1:
    """e_i . f computed in the model."""
    e = _to_ext(ONE, ZERO) if i == 0 else _to_ext(ZERO, ONE)
    return _from_ext(e * _shifted(A2Elem(fbits)) % G2)


# -- forms --------------------------------------------------------------------------


@dataclass(frozen=True)
class Omega2:
    """c . (dx ^ mu)."""

    c: A2Elem

    def __add__(self, other: Omega2) -> Omega2:
        return Omega2(self.c + other.c)

    __sub__ = __add__

    def is_zero(self) -> bool:
        return not self.c


# e_i ^ e_j as a multiple of dx ^ mu (signs are trivial over F_2 but kept explicit)
_WEDGE = {(0, 0): 0, (1, 1): 0, (0, 1): 1, (1, 0): -1 % 2}


@dataclass(frozen=True)
class Omega1:
    cdx: A2Elem
    cmu: A2Elem

    def coeffs(self) -> tuple[A2Elem, A2Elem]:
        return (self.cdx, self.cmu)

    def __add__(self, other: Omega1) -> Omega1:
        return Omega1(self.cdx + other.cdx, self.cmu + other.cmu)

    __sub__ = __add__

    def left(self, a: A2Elem) -> Omega1:
        return Omega1(a * self.cdx, a * self.cmu)

    def right(self, f: A2Elem) -> Omega1:
        out = Omega1(ZERO, ZERO)
        for i, a in enumerate(self.coeffs()):
            if a:
                out = out + _basis_right(i, f.bits).left(a)
        return out

    def wedge(self, other: Omega1) -> Omega2:
        c = ZERO
        for j, b in enumerate(other.coeffs()):
            moved = self.right(b)
            for k, a in enumerate(moved.coeffs()):
                if _WEDGE[(k, j)]:
                    c = c + a
        return Omega2(c)

    def is_zero(self) -> bool:
        return not (self.cdx or self.cmu)

    def vector(self) -> list[int]:
        return [(self.cdx.bits >> n) & 1 for n in range(4)] + [(self.cmu.bits >> n) & 1 for n in range(4)]

    def __repr__(self) -> str:
        return f"Omega1(({self.cdx.to_poly().format()})dx + ({self.cmu.to_poly().format()})mu)"


DX = Omega1(ONE, ZERO)
MU1 = Omega1(ZERO, ONE)
THETA = DX + MU1
BASIS1 = (DX, MU1)
OMEGA1_ELEMENTS = tuple(Omega1(a, b) for a in ELEMENTS for b in ELEMENTS)


def d0(f: A2Elem) -> Omega1:
    """(f(x+mu) - f(x)) mu^-1 in F_4[x]/(g_2), read off on the basis dx, mu."""
    F = ExtPoly.from_poly(f.to_poly(), M_F4)
    return _from_ext((_shifted(f) - F) * MU_INV % G2)


def partials(f: A2Elem) -> tuple[A2Elem, A2Elem]:
    w = d0(f)
    return w.cdx, w.cmu


def d1(w: Omega1) -> Omega2:
    """d(f1 dx + f2 mu) = (d_1 f2 - d_2 f1) dx ^ mu."""
    return Omega2(partials(w.cmu)[0] - partials(w.cdx)[1])


def d1_inner(w: Omega1) -> Omega2:
    """The same differential as the graded commutator theta ^ w + w ^ theta."""
    return THETA.wedge(w) + w.wedge(THETA)


def commutator(w: Omega1, f: A2Elem) -> Omega1:
    return w.right(f) - w.left(f)


# -- tensors ------------------------------------------------------------------------


class FormTensor:
    """Element of (Omega^1)^{(x) r} over A_2 in left-coefficient form."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank: int, coeffs=None):
        self.rank = rank
        self.coeffs = {k: v for k, v in sorted((coeffs or {}).items()) if v}

    @classmethod
    def basis(cls, *idx: int) -> FormTensor:
        return cls(len(idx), {tuple(idx): ONE})

    @classmethod
    def of_form(cls, w: Omega1) -> FormTensor:
        return cls(1, {(0,): w.cdx, (1,): w.cmu})

    def as_form(self) -> Omega1:
        if self.rank != 1:
            raise ValueError("not a one-form")
        return Omega1(self.coeffs.get((0,), ZERO), self.coeffs.get((1,), ZERO))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormTensor):
            return NotImplemented
        return self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.rank, tuple(self.coeffs.items())))

    def __add__(self, other: FormTensor) -> FormTensor:
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return FormTensor(self.rank, out)

    __sub__ = __add__

    def left(self, a: A2Elem) -> FormTensor:
        return FormTensor(self.rank, {k: a * v for k, v in self.coeffs.items()})

    def right(self, f: A2Elem) -> FormTensor:
        """Move f from the right across every leg into left coefficients."""
        out = FormTensor(self.rank)
        for k, c in self.coeffs.items():
            out = out + _basis_word_right(k, f.bits).left(c)
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(v.bits in (0, 1) for v in self.coeffs.values())

    def wedge(self) -> Omega2:
        if self.rank != 2:
            raise ValueError("wedge needs rank 2")
        c = ZERO
        for (i, j), v in self.coeffs.items():
            if _WEDGE[(i, j)]:
                c = c + v
        return Omega2(c)

    def bits(self) -> tuple[int, ...]:
        """Coefficient bits for constant tensors, in lexicographic word order."""
        if not self.is_constant():
            raise ValueError("tensor has non-constant coefficients")
        return tuple(self.coeffs.get(w, ZERO).bits for w in product((0, 1), repeat=self.rank))

    def vector(self) -> list[int]:
        return [(self.coeffs.get(w, ZERO).bits >> n) & 1 for w in product((0, 1), repeat=self.rank) for n in range(4)]

    def __repr__(self) -> str:
        return "FormTensor(" + (" + ".join(_term(k, v) for k, v in self.coeffs.items()) or "0") + ")"

    def label(self) -> str:
        return " + ".join(_term(k, v) for k, v in self.coeffs.items()) or "0"


_NAMES = ("dx", "mu")


def _term(word, c: A2Elem) -> str:
    mono = "(x)".join(_NAMES[i] for i in word)
    return mono if c == ONE else f"({c.to_poly().format()}){mono}"


@lru_cache(maxsize=None)
def _basis_word_right(word: tuple[int, ...], fbits: int) -> FormTensor:
    f = A2Elem(fbits)
    last = BASIS1[word[-1]].right(f)
    if len(word) == 1:
        return FormTensor.of_form(last)
    out = FormTensor(len(word))
    for k, c in enumerate(last.coeffs()):
        if c:
            head = _basis_word_right(word[:-1], c.bits)
            out = out + FormTensor(len(word), {hw + (k,): hv for hw, hv in head.coeffs.items()})
    return out


def tensor(a: FormTensor | Omega1, b: FormTensor | Omega1) -> FormTensor:
    """a (x)_{A_2} b, normalised to left coefficients."""
    if isinstance(a, Omega1):
        a = FormTensor.of_form(a)
    if isinstance(b, Omega1):
        b = FormTensor.of_form(b)
    out = FormTensor(a.rank + b.rank)
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            moved = _basis_word_right(ka, vb.bits).left(va)
            out = out + FormTensor(out.rank, {k + kb: v for k, v in moved.coeffs.items()})
    return out


DXDX = FormTensor.basis(0, 0)
DXMU = FormTensor.basis(0, 1)
MUDX = FormTensor.basis(1, 0)
MUMU = FormTensor.basis(1, 1)
BASIS2 = (DXDX, DXMU, MUDX, MUMU)
WORDS2 = ((0, 0), (0, 1), (1, 0), (1, 1))
F_SYM = DXMU + MUDX
H_SYM = DXDX + MUMU
THETA2 = tensor(THETA, THETA)


def constant_tensor(bits: tuple[int, ...] | int) -> FormTensor:
    """Constant rank-2 tensor from 4 bits ordered (dxdx, dxmu, mudx, mumu) or a 4-bit int."""
    if isinstance(bits, int):
        bits = tuple((bits >> (3 - k)) & 1 for k in range(4))
    return FormTensor(2, {w: A2Elem(b) for w, b in zip(WORDS2, bits)})


def tensor_commutator(t: FormTensor, f: A2Elem) -> FormTensor:
    return t.right(f) - t.left(f)


# -- structure and cohomology ------------------------------------------------------


def _poly(a: A2Elem) -> Poly:
    return a.to_poly()


def a2_structure_check() -> CheckReport:
    """Algebra relations, idempotents, Hopf structure and the p = 2 cocycle in A_2."""
    rep = CheckReport("a2_structure")
    rep.check(all(a**4 == a for a in ELEMENTS), "a^4 != a for some a")
    rep.check(all(a**n for a in ELEMENTS if a for n in range(1, 5)), "A_2 has a nilpotent")
    for i, ei in enumerate((E1, E2, E3)):
        for j, ej in enumerate((E1, E2, E3)):
            rep.check(ei * ej == (ei if i == j else ZERO), f"e_{i + 1} e_{j + 1}")
    rep.check(E1 + E2 + E3 == ONE, "sum of idempotents != 1")
    rep.check(X * X == X + E1, "x^2 != x + e_1")
    rep.check(E1 * X == E2 + X, "e_1 x != e_2 + x")
    rep.check(E2 * X == E2, "e_2 x != e_2")
    rep.check(E3 * X == ZERO, "e_3 x != 0")
    boolean = [a for a in ELEMENTS if a * a == a]
    span = {sum_bits(c, (ONE, E1, E3)) for c in product((0, 1), repeat=3)}
    rep.check(set(boolean) == span and len(boolean) == 8, "Boolean part is not spanned by 1, e_1, e_3")
    rep.data["boolean_dim"] = 3
    rep.check([X.counit(), E1.counit(), E2.counit(), E3.counit()] == [0, 0, 0, 1], "counit values")

    def t(a: A2Elem, b: A2Elem) -> TensorElem:
        return TensorElem.pure(_poly(a), _poly(b), 4)

    rep.check(coproduct(_poly(X), 2) == t(X, ONE) + t(ONE, X), "Delta x")
    rep.check(coproduct(_poly(E1), 2) == t(E1, ONE) + t(ONE, E1), "Delta e_1")
    rep.check(coproduct(_poly(E2), 2) == t(E2, ONE) + t(ONE, E2) + t(E1, X) + t(X, E1), "Delta e_2")
    rep.check(
        coproduct(_poly(E3), 2) == t(ONE, ONE) + t(E3, ONE) + t(ONE, E3) + t(E1, X) + t(X, E1), "Delta e_3"
    )
    rep.check(not coassociativity_defects(2, 2), "coassociativity")
    rep.check(not counit_defects(2, 2), "counit axiom")
    rep.check(not multiplicativity_defects(2, 2), "Delta is not multiplicative")
    # antipode S = id: m(S (x) id) Delta a = m(id (x) S) Delta a = eps(a) 1
    for a in MONOMIALS:
        acc = ZERO
        for (i, j), c in coproduct(_poly(a), 2).coeffs.items():
            if c:
                acc = acc + MONOMIALS[i] * MONOMIALS[j]
        rep.check(acc == (ONE if a.counit() else ZERO), f"antipode axiom on {a}")
    sub = p2_cocycle_check()
    rep.checks += sub.checks
    rep.failures.extend(sub.failures)
    return rep


def p2_cocycle_check() -> CheckReport:
    """The p = 2 delta identities and cocycle reconstruction, in F_2[x] and in A_2."""
    rep = CheckReport("p2_cocycle")
    g = Poly(2, (0, 1, 1))
    d0_, d1_ = delta(0, 2), delta(1, 2)
    rep.check(d0_ == Poly(2, (1, 1)) and d1_ == Poly(2, (0, 1)), "delta functions")
    for lhs, rhs, name in (
        (d0_ * d0_, d0_ + g, "delta_0^2 = delta_0 + g_1"),
        (d1_ * d1_, d1_ + g, "delta_1^2 = delta_1 + g_1"),
        (d0_ * d1_, g, "delta_0 delta_1 = g_1"),
    ):
        rep.check(lhs == rhs, f"{name} in F_2[x]")
        rep.check(A2Elem.from_poly(lhs) == A2Elem.from_poly(rhs), f"{name} in A_2")
    for i, j in product(range(2), repeat=2):
        prod = delta(i, 2) * delta(j, 2)
        rec = product_reconstruction(i, j, 2)
        rep.check(prod == rec, f"reconstruction in F_2[x] ({i},{j})")
        rep.check(A2Elem.from_poly(prod) == A2Elem.from_poly(rec), f"reconstruction in A_2 ({i},{j})")
    rep.check(A2Elem.from_poly(g * g + g) == ZERO, "g_1^2 + g_1 != 0 in A_2")
    return rep


def sum_bits(coeffs, elems) -> A2Elem:
    out = ZERO
    for c, e in zip(coeffs, elems):
        if c:
            out = out + e
    return out


def omega_relations() -> dict[str, bool]:
    """The displayed bimodule relations, the inner form, and the universal-calculus quotient."""
    return {
        "[dx,x]=mu": commutator(DX, X) == MU1,
        "[mu,x]=dx+mu": commutator(MU1, X) == DX + MU1,
        "inner: [theta,a]=da": all(commutator(THETA, a) == d0(a) for a in ELEMENTS),
        "universal [mu,x]=theta": commutator(MU1, X) == THETA,
        "universal [theta,x]=dx": commutator(THETA, X) == DX,
        "d1 = graded commutator with theta": all(d1(w) == d1_inner(w) for w in OMEGA1_ELEMENTS),
        "d1 d0 = 0": all(d1(d0(a)).is_zero() for a in ELEMENTS),
    }


def _d0_matrix() -> FpMatrix:
    return FpMatrix.from_columns(2, [d0(a).vector() for a in MONOMIALS], 8)


def _d1_matrix() -> FpMatrix:
    cols = []
    for i in range(2):
        for n in range(4):
            w = Omega1(MONOMIALS[n], ZERO) if i == 0 else Omega1(ZERO, MONOMIALS[n])
            c = d1(w).c
            cols.append([(c.bits >> k) & 1 for k in range(4)])
    return FpMatrix.from_columns(2, cols, 4)


def _rank_of(vectors) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return FpMatrix(2, vectors).rank()


@dataclass(frozen=True)
class A2Cohomology:
    dims: tuple[int, int, int]
    h0: tuple[A2Elem, ...]
    h1: tuple[Omega1, ...]
    h2: tuple[A2Elem, ...]
    exact1: tuple[Omega1, ...]
    closed1_dim: int
    exact2_dim: int


# representatives to be tested: 1; x dx, x^2 mu; x^3 dx^mu
H1_REPRESENTATIVES = (Omega1(X, ZERO), Omega1(ZERO, X * X))
H2_REPRESENTATIVES = (X**3,)


def cohomology() -> A2Cohomology:
    D0, D1 = _d0_matrix(), _d1_matrix()
    r0, r1 = D0.rank(), D1.rank()
    ker0 = D0.kernel()
    closed = D1.kernel()
    dims = (len(ker0), len(closed) - r0, 4 - r1)
    exact = tuple(d0(a) for a in MONOMIALS)
    return A2Cohomology(
        dims=dims,
        h0=tuple(A2Elem.from_poly(Poly(2, v)) for v in ker0),
        h1=H1_REPRESENTATIVES,
        h2=H2_REPRESENTATIVES,
        exact1=exact,
        closed1_dim=len(closed),
        exact2_dim=r1,
    )


def representatives_check() -> CheckReport:
    """The stated representatives are closed and independent modulo exact forms."""
    rep = CheckReport("a2_cohomology_representatives")
    coh = cohomology()
    rep.data["dims"] = list(coh.dims)
    rep.check(coh.dims == (1, 2, 1), f"dims {coh.dims}")
    rep.check(coh.h0 == (ONE,), "H^0 is not spanned by 1")
    exact = [w.vector() for w in coh.exact1]
    r_exact = _rank_of(exact)
    rep.check(r_exact == 3, "im d0 has rank != 3")
    target = [DX, MU1, Omega1(X * X, X)]
    rep.check(
        _rank_of([w.vector() for w in target]) == 3 == _rank_of(exact + [w.vector() for w in target]),
        "im d0 != span{dx, mu, x^2 dx + x mu}",
    )
    closed_expected = [DX, MU1, Omega1(X, ZERO), Omega1(X * X, X), Omega1(ZERO, X * X)]
    rep.check(all(d1(w).is_zero() for w in closed_expected), "stated closed forms are not closed")
    rep.check(_rank_of([w.vector() for w in closed_expected]) == coh.closed1_dim == 5, "ker d1")
    for w in coh.h1:
        rep.check(d1(w).is_zero(), f"{w} not closed")
    rep.check(
        _rank_of(exact + [w.vector() for w in coh.h1]) == r_exact + len(coh.h1) == coh.closed1_dim,
        "H^1 representatives are not a basis modulo exact forms",
    )
    im_d1 = [[(d1(w).c.bits >> k) & 1 for k in range(4)] for w in OMEGA1_ELEMENTS]
    rep.check(_rank_of(im_d1) == 3, "im d1 rank")
    top = [[(X**3).bits >> k & 1 for k in range(4)]]
    rep.check(_rank_of(im_d1 + top) == 4, "x^3 dx^mu is exact")
    rep.check(
        _rank_of(im_d1) == _rank_of([[(b >> k) & 1 for k in range(4)] for b in (1, 2, 4)] + im_d1),
        "im d1 != span{1, x, x^2} dx^mu",
    )
    return rep


# -- metrics --------------------------------------------------------------------------


def is_central(t: FormTensor) -> bool:
    return tensor_commutator(t, X).is_zero()


def central_metrics() -> list[FormTensor]:
    """Nonzero constant rank-2 tensors that are central with zero wedge."""
    out = []
    for k in range(1, 16):
        t = constant_tensor(k)
        if is_central(t) and t.wedge().is_zero():
            out.append(t)
    return out


def metric_family(alpha: int, beta: int) -> FormTensor:
    """alpha (mu(x)mu + theta(x)theta) + beta (dx(x)dx + theta(x)theta)."""
    out = FormTensor(2)
    if alpha:
        out = out + MUMU + THETA2
    if beta:
        out = out + DXDX + THETA2
    return out


METRICS = {
    "i": metric_family(1, 1),
    "ii": metric_family(0, 1),
    "iii": metric_family(1, 0),
}


def pairing_value(G: dict, t: FormTensor) -> A2Elem:
    out = ZERO
    for w, c in t.coeffs.items():
        if G[w]:
            out = out + c
    return out


def pair(G: dict, a: Omega1, b: Omega1) -> A2Elem:
    return pairing_value(G, tensor(a, b))


def metric_inverses(eta: FormTensor) -> list[dict]:
    """Constant bimodule pairings ( , ) inverting eta, by exhausting all 16 candidates."""
    out = []
    for k in range(16):
        G = {w: (k >> (3 - n)) & 1 for n, w in enumerate(WORDS2)}
        if any(pairing_value(G, b.right(X)) != pairing_value(G, b) * X for b in BASIS2):
            continue
        ok = True
        for w in OMEGA1_ELEMENTS:
            lhs = Omega1(ZERO, ZERO)
            rhs = Omega1(ZERO, ZERO)
            for (i, j), c in eta.coeffs.items():
                lhs = lhs + BASIS1[j].left(pair(G, w, BASIS1[i].left(c)))
                rhs = rhs + BASIS1[i].left(c).right(pair(G, BASIS1[j], w))
            if lhs != w or rhs != w:
                ok = False
                break
        if ok:
            out.append(G)
    return out


# -- bimodule maps ----------------------------------------------------------------


def _solve_affine(residual, nvars: int) -> list[tuple[int, ...]]:
    """All s in F_2^nvars with residual(s) = 0, for an affine residual map."""
    r0 = residual((0,) * nvars)
    cols = []
    for k in range(nvars):
        e = tuple(int(i == k) for i in range(nvars))
        cols.append([(a + b) % 2 for a, b in zip(residual(e), r0)])
    M = FpMatrix.from_columns(2, cols, len(r0))
    aug = FpMatrix(2, [list(row) + [b] for row, b in zip(M.rows, r0)], ncols=nvars + 1)
    R, pivots = aug.rref()
    if nvars in pivots:
        return []
    part = [0] * nvars
    for row, pc in zip(R, pivots):
        part[pc] = row[nvars]
    kern = M.kernel()
    sols = []
    for choice in product((0, 1), repeat=len(kern)):
        v = list(part)
        for c, kv in zip(choice, kern):
            if c:
                v = [(a + b) % 2 for a, b in zip(v, kv)]
        sols.append(tuple(v))
    return sorted(sols)


class Sigma:
    """Left-module map on Omega^1 (x) Omega^1 given by its values on the basis words."""

    def __init__(self, images: dict):
        self.images = {w: images[w] for w in WORDS2}

    @classmethod
    def from_bits(cls, s) -> Sigma:
        return cls({w: constant_tensor(tuple(s[4 * k : 4 * k + 4])) for k, w in enumerate(WORDS2)})

    def bits(self) -> tuple[int, ...]:
        return tuple(b for w in WORDS2 for b in self.images[w].bits())

    def __call__(self, t: FormTensor) -> FormTensor:
        out = FormTensor(2)
        for w, c in t.coeffs.items():
            out = out + self.images[w].left(c)
        return out

    def on_first_two(self, t: FormTensor) -> FormTensor:
        """sigma (x) id on a rank-3 tensor."""
        out = FormTensor(3)
        for (i, j, k), c in t.coeffs.items():
            img = self.images[(i, j)].left(c)
            out = out + FormTensor(3, {w + (k,): v for w, v in img.coeffs.items()})
        return out

    def theta(self, w: Omega1) -> FormTensor:
        """sigma_theta(w) = sigma(w (x) theta)."""
        return self(tensor(w, THETA))

    def __eq__(self, other) -> bool:
        return isinstance(other, Sigma) and self.images == other.images

    def table(self) -> dict[str, str]:
        return {"(x)".join(_NAMES[i] for i in w): self.images[w].label() for w in WORDS2}


def sigma_residual(s) -> list[int]:
    """Bimodule property and torsion compatibility (wedge sigma = -wedge) as F_2 residuals."""
    sig = Sigma.from_bits(s)
    out: list[int] = []
    for b in BASIS2:
        diff = sig(b.right(X)) - sig(b).right(X)
        out.extend(diff.vector())
    for b in BASIS2:
        c = sig(b).wedge().c + b.wedge().c
        out.extend((c.bits >> k) & 1 for k in range(4))
    return out


def admissible_sigmas() -> list[Sigma]:
    """All constant bimodule maps sigma with wedge sigma = -wedge."""
    return [Sigma.from_bits(s) for s in _solve_affine(sigma_residual, 16)]


def admissible_alphas() -> list[tuple[FormTensor, FormTensor]]:
    """Constant bimodule maps alpha: Omega^1 -> Omega^1 (x) Omega^1 with wedge alpha = 0."""

    def residual(s):
        imgs = (constant_tensor(tuple(s[:4])), constant_tensor(tuple(s[4:])))

        def alpha(w: Omega1) -> FormTensor:
            return imgs[0].left(w.cdx) + imgs[1].left(w.cmu)

        out: list[int] = []
        for k, e in enumerate(BASIS1):
            out.extend((alpha(e.right(X)) - imgs[k].right(X)).vector())
            out.extend((imgs[k].wedge().c.bits >> n) & 1 for n in range(4))
        return out

    return [
        (constant_tensor(tuple(s[:4])), constant_tensor(tuple(s[4:]))) for s in _solve_affine(residual, 8)
    ]


@dataclass(frozen=True, order=True)
class SigmaParams:
    a: int
    b: int
    c: int
    A: int
    B: int
    cp: int

    def astuple(self) -> tuple[int, ...]:
        return (self.a, self.b, self.c, self.A, self.B, self.cp)

    @classmethod
    def all(cls) -> list[SigmaParams]:
        return [cls(*v) for v in product((0, 1), repeat=6)]


FLIP = SigmaParams(1, 0, 0, 0, 1, 0)


def _combo(a: int, b: int, c: int) -> FormTensor:
    out = FormTensor(2)
    if a:
        out = out + DXDX
    if b:
        out = out + MUMU
    if c:
        out = out + F_SYM
    return out


def sigma_from_params(sp: SigmaParams) -> Sigma:
    """sigma(dx dx) = a dxdx + b mumu + c f, sigma(mu mu) = A dxdx + B mumu + C f,
    sigma(dx mu) = a' dxdx + b' mumu + c' f + mu dx, sigma(mu dx) = sigma(f) - sigma(dx mu),
    with C = a+b+c+A+B, a' = 1+a+A, b' = 1+b+B."""
    a, b, c, A, B, cp = sp.astuple()
    C = (a + b + c + A + B) % 2
    s_dxdx = _combo(a, b, c)
    s_mumu = _combo(A, B, C)
    s_dxmu = _combo((1 + a + A) % 2, (1 + b + B) % 2, cp) + MUDX
    s_f = _combo(0, 0, (a + b + c) % 2)
    return Sigma({(0, 0): s_dxdx, (1, 1): s_mumu, (0, 1): s_dxmu, (1, 0): s_f - s_dxmu})


def params_of(sig: Sigma) -> SigmaParams:
    """Read the six parameters back off an admissible sigma."""
    dd, mm, dm = sig.images[(0, 0)], sig.images[(1, 1)], sig.images[(0, 1)]
    return SigmaParams(
        dd.coeffs.get((0, 0), ZERO).bits,
        dd.coeffs.get((1, 1), ZERO).bits,
        dd.coeffs.get((0, 1), ZERO).bits,
        mm.coeffs.get((0, 0), ZERO).bits,
        mm.coeffs.get((1, 1), ZERO).bits,
        dm.coeffs.get((0, 1), ZERO).bits,
    )


# -- connections --------------------------------------------------------------------


@dataclass
class Connection:
    params: SigmaParams
    sigma: Sigma

    def nabla(self, w: Omega1) -> FormTensor:
        """theta (x) w - sigma(w (x) theta)."""
        return tensor(THETA, w) - self.sigma(tensor(w, THETA))

    def nabla_tensor(self, t: FormTensor) -> FormTensor:
        """nabla on Omega^1 (x) Omega^1: nabla(w (x) v) = nabla w (x) v + (sigma (x) id)(w (x) nabla v)."""
        out = FormTensor(3)
        for (i, j), c in t.coeffs.items():
            w = BASIS1[i].left(c)
            v = BASIS1[j]
            out = out + tensor(self.nabla(w), v) + self.sigma.on_first_two(tensor(w, self.nabla(v)))
        return out

    def compatibility_inner(self, eta: FormTensor) -> FormTensor:
        """theta (x) eta - sigma_12 (id (x) sigma_theta) eta."""
        out = tensor(THETA, eta)
        for (i, j), c in eta.coeffs.items():
            out = out - self.sigma.on_first_two(tensor(BASIS1[i].left(c), self.sigma.theta(BASIS1[j])))
        return out

    def torsion(self, w: Omega1) -> Omega2:
        return self.nabla(w).wedge() - d1(w)

    def curvature(self, w: Omega1) -> tuple[A2Elem, A2Elem]:
        """R(w) = (d (x) id - wedge (id (x) nabla)) nabla w, as coefficients of (dx^mu)(x)dx, (dx^mu)(x)mu."""
        nw = self.nabla(w)
        out = [ZERO, ZERO]
        for j in range(2):
            eta_j = Omega1(nw.coeffs.get((0, j), ZERO), nw.coeffs.get((1, j), ZERO))
            out[j] = out[j] + d1(eta_j).c
            for (k, l), s in self.nabla(BASIS1[j]).coeffs.items():
                out[l] = out[l] - eta_j.right(s).wedge(BASIS1[k]).c
        return out[0], out[1]

    def is_flat(self) -> bool:
        return all(self.curvature(w) == (ZERO, ZERO) for w in BASIS1)

    def table(self) -> dict:
        return {
            "params": dict(zip(("a", "b", "c", "A", "B", "c'"), self.params.astuple())),
            "nabla": {"dx": self.nabla(DX).label(), "mu": self.nabla(MU1).label()},
            "sigma": self.sigma.table(),
            "flat": self.is_flat(),
        }


def _metric_label(metric: FormTensor) -> str:
    for name, m in METRICS.items():
        if m == metric:
            return name
    raise ValueError("metric is not one of the three nonzero constant central metrics")


def levi_civita_search(metric: FormTensor) -> list[Connection]:
    """All 64 parameter points; keep those with nabla eta = 0 (checked two ways)."""
    _metric_label(metric)
    out = []
    for sp in SigmaParams.all():
        conn = Connection(sp, sigma_from_params(sp))
        direct = conn.nabla_tensor(metric).is_zero()
        inner = conn.compatibility_inner(metric).is_zero()
        if direct != inner:
            raise AssertionError(f"compatibility routes disagree at {sp}")
        if direct:
            out.append(conn)
    return out


def curvature(conn: Connection) -> dict[str, tuple[A2Elem, A2Elem]]:
    return {"dx": conn.curvature(DX), "mu": conn.curvature(MU1)}
