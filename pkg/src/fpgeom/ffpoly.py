"""Exact arithmetic over F_p, F_p[x], extension fields K = F_p[mu]/(m) and K[x].

Polynomials are dense, immutable and stored low-to-high: ``Poly(2, (0, 1, 0, 0, 1))``
is x^4 + x over F_2.  The zero polynomial has an empty coefficient tuple.

The module also carries the small amount of F_p linear algebra the rest of the
package needs (rank, kernel, incremental column reduction).
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "check_prime",
    "Poly",
    "ExtScalar",
    "ExtPoly",
    "FpMatrix",
    "ColumnReducer",
    "shift_by_mu",
    "kernel",
    "rank",
    "parse_poly",
]


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime, else raise ``ValueError``."""
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    return p


def _trim(coeffs: Iterable[int], p: int) -> tuple[int, ...]:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Poly:
    """Polynomial over F_p with coefficients in ascending degree."""

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        self.p = check_prime(p)
        self.coeffs = _trim(coeffs, p)
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> Poly:
        return cls(p)

    @classmethod
    def const(cls, p: int, c: int) -> Poly:
        return cls(p, (c,))

    @classmethod
    def x(cls, p: int) -> Poly:
        return cls(p, (0, 1))

    @classmethod
    def monomial(cls, p: int, n: int, c: int = 1) -> Poly:
        if n < 0:
            raise ValueError("negative exponent")
        return cls(p, (0,) * n + (c,))

    @classmethod
    def from_roots(cls, p: int, roots: Iterable[int]) -> Poly:
        out = cls.const(p, 1)
        for r in roots:
            out = out * cls(p, (-r, 1))
        return out

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def coeff(self, n: int) -> int:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def padded(self, n: int) -> list[int]:
        """Coefficient list of length ``n`` (truncation is an error)."""
        if len(self.coeffs) > n:
            raise ValueError(f"degree {self.degree} does not fit in {n} slots")
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.const(self.p, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "x") -> str:
        """Human form, highest degree first, e.g. ``x^4+x``."""
        if not self.coeffs:
            return "0"
        terms = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if c == 0:
                continue
            if n == 0:
                mono = ""
            elif n == 1:
                mono = var
            else:
                mono = f"{var}^{n}"
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return "+".join(terms)

    def to_csv(self) -> str:
        """Comma-separated low-to-high form, e.g. ``0,1,0,0,1``."""
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, int):
            return Poly.const(self.p, other)
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"mismatched primes {self.p} and {other.p}")
        return other

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(self.p, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.p, (-c for c in self.coeffs))

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(self.p, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        return Poly(self.p, (c * a for a in self.coeffs))

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple[Poly, Poly]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        r = list(self.coeffs)
        db = other.degree
        inv = pow(other.lead, -1, p)
        q = [0] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] % p
            if c == 0:
                continue
            c = c * inv % p
            q[k - db] = c
            for j, bj in enumerate(other.coeffs):
                r[k - db + j] -= c * bj
        return Poly(p, q), Poly(p, r[:db] if db > 0 else ())

    def __floordiv__(self, other) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(pow(self.lead, -1, self.p))

    def gcd(self, other) -> Poly:
        """Monic greatest common divisor (zero if both are zero)."""
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other) -> tuple[Poly, Poly, Poly]:
        """Return ``(g, s, t)`` with ``s*self + t*other = g`` and ``g`` monic."""
        other = self._coerce(other)
        r0, r1 = self, other
        s0, s1 = Poly.const(self.p, 1), Poly(self.p)
        t0, t1 = Poly(self.p), Poly.const(self.p, 1)
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        c = pow(r0.lead, -1, self.p)
        return r0.scale(c), s0.scale(c), t0.scale(c)

    def powmod(self, n: int, mod: Poly) -> Poly:
        result = Poly.const(self.p, 1) % mod
        base = self % mod
        while n:
            if n & 1:
                result = result * base % mod
            base = base * base % mod
            n >>= 1
        return result

    def __call__(self, a: int) -> int:
        """Evaluate at a residue by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % self.p
        return acc

    evaluate = __call__

    def compose(self, g: Poly) -> Poly:
        """Return ``self(g)``."""
        g = self._coerce(g)
        acc = Poly(self.p)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def derivative(self) -> Poly:
        return Poly(self.p, (n * c for n, c in enumerate(self.coeffs) if n > 0))


_TERM = re.compile(
    r"^(?P<coef>\d+)?\*?(?:(?P<var>mu|μ|[a-zA-Z])(?:\^(?P<exp>\d+))?)?$"
)


def parse_poly(text: str, p: int) -> Poly:
    """Parse either ``"0,1,0,0,1"`` (low to high) or ``"x^4+x"``.

    Any single-letter variable, ``mu`` or ``μ`` is accepted in the human form;
    ``-`` between terms is allowed.  Raises ``ValueError`` on malformed input.
    """
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    if "," in s or re.fullmatch(r"-?\d+", s):
        try:
            return Poly(p, (int(tok) for tok in s.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad coefficient list {text!r}") from exc
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, int] = {}
    var_seen = None
    for sign, body in re.findall(r"([+-])([^+-]*)", s):
        m = _TERM.match(body)
        if not body or m is None or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"bad term {body!r} in {text!r}")
        var = m.group("var")
        if var is not None:
            if var_seen is not None and var != var_seen:
                raise ValueError(f"mixed variables in {text!r}")
            var_seen = var
        c = int(m.group("coef")) if m.group("coef") else 1
        if var is None:
            n = 0
        else:
            n = int(m.group("exp")) if m.group("exp") else 1
        coeffs[n] = coeffs.get(n, 0) + (c if sign == "+" else -c)
    top = max(coeffs)
    return Poly(p, (coeffs.get(n, 0) for n in range(top + 1)))


class ExtScalar:
    """Element of K = F_p[mu]/(m); ``rep`` is a Poly in mu of degree < deg m.

    The modulus travels with each value so that mixing fields is caught.
    """

    __slots__ = ("m", "rep")

    def __init__(self, m: Poly, rep: Poly | int | Sequence[int]):
        if m.degree < 1 or not m.is_monic():
            raise ValueError("modulus must be monic of positive degree")
        if isinstance(rep, int):
            rep = Poly.const(m.p, rep)
        elif not isinstance(rep, Poly):
            rep = Poly(m.p, rep)
        self.m = m
        self.rep = rep % m

    @classmethod
    def mu(cls, m: Poly) -> ExtScalar:
        return cls(m, Poly.x(m.p))

    @property
    def p(self) -> int:
        return self.m.p

    @property
    def d(self) -> int:
        return self.m.degree

    def vector(self) -> list[int]:
        """Coordinates on the basis 1, mu, ..., mu^(d-1)."""
        return self.rep.padded(self.d)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def _check(self, other) -> ExtScalar:
        if isinstance(other, int):
            return ExtScalar(self.m, other)
        if not isinstance(other, ExtScalar):
            raise TypeError(f"cannot combine ExtScalar with {type(other).__name__}")
        if other.m != self.m:
            raise ValueError("mixed moduli")
        return other

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ExtScalar(self.m, other)
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self.m == other.m and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.m, self.rep))

    def __repr__(self) -> str:
        return f"ExtScalar({self.rep.format('mu')} mod {self.m.format('mu')})"

    def __add__(self, other) -> ExtScalar:
        return ExtScalar(self.m, self.rep + self._check(other).rep)

    __radd__ = __add__

    def __neg__(self) -> ExtScalar:
        return ExtScalar(self.m, -self.rep)

    def __sub__(self, other) -> ExtScalar:
        return ExtScalar(self.m, self.rep - self._check(other).rep)

    def __mul__(self, other) -> ExtScalar:
        return ExtScalar(self.m, self.rep * self._check(other).rep)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ExtScalar:
        if n < 0:
            return self.inverse() ** (-n)
        return ExtScalar(self.m, self.rep.powmod(n, self.m))

    def inverse(self) -> ExtScalar:
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("zero is not invertible")
        g, s, _ = self.rep.xgcd(self.m)
        if g.degree != 0:
            raise ZeroDivisionError(f"{self!r} is not invertible (modulus is reducible)")
        return ExtScalar(self.m, s)

    def __truediv__(self, other) -> ExtScalar:
        return self * self._check(other).inverse()

    def as_residue(self) -> int:
        """The value as an element of F_p; error if it lies outside the prime field."""
        if self.rep.degree > 0:
            raise ValueError(f"{self!r} is not in the prime field")
        return self.rep.coeff(0)


def ext_inverse(a: ExtScalar) -> ExtScalar:
    return a.inverse()


class ExtPoly:
    """Polynomial in x with coefficients in K = F_p[mu]/(m)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: Poly, coeffs: Iterable[ExtScalar | int] = ()):
        out = []
        for c in coeffs:
            if isinstance(c, int):
                c = ExtScalar(m, c)
            elif c.m != m:
                raise ValueError("mixed moduli")
            out.append(c)
        while out and out[-1].is_zero():
            out.pop()
        self.m = m
        self.coeffs = tuple(out)

    @classmethod
    def from_poly(cls, f: Poly, m: Poly) -> ExtPoly:
        if f.p != m.p:
            raise ValueError(f"mismatched primes {f.p} and {m.p}")
        return cls(m, (ExtScalar(m, c) for c in f.coeffs))

    @classmethod
    def const(cls, c: ExtScalar) -> ExtPoly:
        return cls(c.m, (c,))

    @property
    def p(self) -> int:
        return self.m.p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, n: int) -> ExtScalar:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return ExtScalar(self.m, 0)

    def vector(self, n: int) -> list[int]:
        """Flatten the first ``n`` x-coefficients to d*n residues (x-major)."""
        if len(self.coeffs) > n:
            raise ValueError(f"degree {self.degree} does not fit in {n} slots")
        out: list[int] = []
        for k in range(n):
            out.extend(self.coeff(k).vector())
        return out

    def prime_part(self) -> Poly:
        """The polynomial itself when every coefficient lies in F_p."""
        return Poly(self.p, (c.as_residue() for c in self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            other = ExtPoly.from_poly(other, self.m)
        if not isinstance(other, ExtPoly):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def __repr__(self) -> str:
        terms = [f"({c.rep.format('mu')})x^{n}" for n, c in enumerate(self.coeffs) if not c.is_zero()]
        return "ExtPoly(" + (" + ".join(terms) or "0") + ")"

    def _coerce(self, other) -> ExtPoly:
        if isinstance(other, Poly):
            return ExtPoly.from_poly(other, self.m)
        if isinstance(other, ExtScalar):
            return ExtPoly.const(other)
        if isinstance(other, int):
            return ExtPoly(self.m, (other,))
        if other.m != self.m:
            raise ValueError("mixed moduli")
        return other

    def __add__(self, other) -> ExtPoly:
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExtPoly(self.m, (self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> ExtPoly:
        return ExtPoly(self.m, (-c for c in self.coeffs))

    def __sub__(self, other) -> ExtPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> ExtPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> ExtPoly:
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return ExtPoly(self.m)
        out = [ExtScalar(self.m, 0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ExtPoly(self.m, out)

    __rmul__ = __mul__

    def __mod__(self, g: Poly) -> ExtPoly:
        """Reduce modulo a monic polynomial with F_p coefficients."""
        if not g.is_monic():
            raise ValueError("reduction needs a monic modulus")
        r = list(self.coeffs)
        dg = g.degree
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if c.is_zero():
                continue
            for j, gj in enumerate(g.coeffs):
                if gj:
                    r[k - dg + j] = r[k - dg + j] - c * gj
        return ExtPoly(self.m, r[:dg])

    def shift(self) -> ExtPoly:
        """Return self(x + mu)."""
        lin = ExtPoly(self.m, (ExtScalar.mu(self.m), 1))
        acc = ExtPoly(self.m)
        for c in reversed(self.coeffs):
            acc = acc * lin + ExtPoly.const(c)
        return acc


def shift_by_mu(f: Poly, m: Poly) -> ExtPoly:
    """f(x + mu) in K[x], K = F_p[mu]/(m), by Horner composition."""
    return ExtPoly.from_poly(f, m).shift()


class FpMatrix:
    """Dense rectangular matrix over F_p; rows are stored as tuples."""

    __slots__ = ("p", "rows", "ncols")

    def __init__(self, p: int, rows: Iterable[Iterable[int]], ncols: int | None = None):
        self.p = check_prime(p)
        self.rows = tuple(tuple(v % p for v in row) for row in rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("column count needed for an empty matrix")
            ncols = len(self.rows[0])
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.ncols = ncols

    @classmethod
    def from_columns(cls, p: int, cols: Sequence[Sequence[int]], nrows: int) -> FpMatrix:
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        return cls(p, (tuple(c[i] for c in cols) for i in range(nrows)), ncols=len(cols))

    @classmethod
    def identity(cls, p: int, n: int) -> FpMatrix:
        return cls(p, ([int(i == j) for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, p: int, nrows: int, ncols: int) -> FpMatrix:
        return cls(p, ([0] * ncols for _ in range(nrows)), ncols=ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.shape})"

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.rows)

    def rref(self) -> tuple[list[list[int]], list[int]]:
        """Reduced row echelon form and pivot columns (left to right)."""
        p = self.p
        R = [list(r) for r in self.rows]
        pivots: list[int] = []
        r = 0
        for col in range(self.ncols):
            piv = next((i for i in range(r, len(R)) if R[i][col]), None)
            if piv is None:
                continue
            R[r], R[piv] = R[piv], R[r]
            inv = pow(R[r][col], -1, p)
            R[r] = [v * inv % p for v in R[r]]
            for i in range(len(R)):
                if i != r and R[i][col]:
                    c = R[i][col]
                    R[i] = [(a - c * b) % p for a, b in zip(R[i], R[r])]
            pivots.append(col)
            r += 1
            if r == len(R):
                break
        return R[:r], pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[tuple[int, ...]]:
        """Basis of the right null space, one vector per free column (ascending)."""
        p = self.p
        R, pivots = self.rref()
        pivset = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            v = [0] * self.ncols
            v[free] = 1
            for row, pc in zip(R, pivots):
                v[pc] = -row[free] % p
            basis.append(tuple(v))
        return basis


def kernel(M: FpMatrix) -> list[tuple[int, ...]]:
    return M.kernel()


def rank(M: FpMatrix) -> int:
    return M.rank()


class ColumnReducer:
    """Incremental echelon basis of a growing list of column vectors.

    ``add(v)`` returns ``None`` if ``v`` is new, otherwise the coefficients
    ``c`` (one per column added so far, including ``v`` with coefficient 1)
    of a linear dependency sum_k c_k col_k = 0.
    """

    def __init__(self, p: int):
        self.p = check_prime(p)
        self._rows: dict[int, tuple[list[int], dict[int, int]]] = {}
        self._count = 0

    def add(self, v: Sequence[int]) -> list[int] | None:
        p = self.p
        idx = self._count
        self._count += 1
        w = [a % p for a in v]
        combo = {idx: 1}
        for pos, (row, rcombo) in sorted(self._rows.items()):
            if pos < len(w) and w[pos]:
                c = w[pos]
                if len(row) > len(w):
                    w = w + [0] * (len(row) - len(w))
                w = [(a - c * b) % p for a, b in zip(w, row)] + w[len(row):]
                for k, ck in rcombo.items():
                    combo[k] = (combo.get(k, 0) - c * ck) % p
        lead = next((i for i, a in enumerate(w) if a), None)
        if lead is None:
            return [combo.get(k, 0) for k in range(self._count)]
        inv = pow(w[lead], -1, p)
        w = [a * inv % p for a in w]
        self._rows[lead] = (w, {k: ck * inv % p for k, ck in combo.items()})
        return None
