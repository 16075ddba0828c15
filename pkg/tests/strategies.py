"""Shared hypothesis strategies."""

from __future__ import annotations

from hypothesis import strategies as st

from fpgeom.ffpoly import Poly

SMALL_PRIMES = (2, 3, 5, 7)


def polys(p: int, max_degree: int = 8):
    return st.lists(st.integers(0, p - 1), max_size=max_degree + 1).map(lambda c: Poly(p, c))


@st.composite
def poly_pairs(draw, primes=SMALL_PRIMES, max_degree: int = 8, count: int = 2):
    p = draw(st.sampled_from(primes))
    return (p, *[draw(polys(p, max_degree)) for _ in range(count)])
