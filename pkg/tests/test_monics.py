from __future__ import annotations

import itertools

import pytest

from fpgeom.ffpoly import Poly, parse_poly
from fpgeom.monics import (
    census,
    enumerate_irreducibles,
    g_poly,
    gauss_count,
    h_poly,
    is_irreducible,
    is_regular,
    mobius,
    monic_record,
    monics,
    norm_of_mu,
    regular_count,
    totient,
    trace_of_mu,
)


def mu(text: str, p: int = 2) -> Poly:
    return parse_poly(text, p)


def _has_root_or_factor(f: Poly) -> bool:
    """Trial division by every monic of degree <= deg/2: an independent oracle."""
    p = f.p
    for k in range(1, f.degree // 2 + 1):
        for g in monics(p, k):
            if (f % g).is_zero():
                return True
    return False


def test_arithmetic_helpers():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert [totient(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]


@pytest.mark.parametrize("text,expected", [("x^2+x+1", True), ("x^2+1", False), ("x^3+x+1", True)])
def test_is_irreducible_examples(text, expected):
    assert is_irreducible(mu(text)) is expected


def test_is_irreducible_rejects_bad_input():
    with pytest.raises(ValueError):
        is_irreducible(Poly(3, (1, 2)))  # not monic
    with pytest.raises(ValueError):
        is_irreducible(Poly(3, (1,)))


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_irreducibility_against_trial_division(p, d):
    for f in monics(p, d):
        assert is_irreducible(f) is not _has_root_or_factor(f)


def test_enumeration_examples():
    assert enumerate_irreducibles(2, 2) == [mu("x^2+x+1")]
    assert set(enumerate_irreducibles(2, 4)) == {mu("x^4+x+1"), mu("x^4+x^3+1"), mu("x^4+x^3+x^2+x+1")}
    assert enumerate_irreducibles(3, 1) == [Poly(3, (0, 1)), Poly(3, (1, 1)), Poly(3, (2, 1))]


def test_enumeration_order_is_lexicographic():
    irr = enumerate_irreducibles(3, 3)
    keys = [tuple(reversed(f.coeffs)) for f in irr]
    assert keys == sorted(keys)


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_irreducibles(3, 10, cap=1000)


def test_gauss_examples():
    assert gauss_count(2, 2) == 1
    assert gauss_count(2, 4) == 3
    assert all(gauss_count(p, 1) == p for p in (2, 3, 5, 7))


@pytest.mark.parametrize("p,d", list(itertools.product((2, 3, 5, 7), range(1, 5))))
def test_gauss_matches_enumeration(p, d):
    if p**d > 2401:
        pytest.skip("large enumeration covered at smaller d")
    assert len(enumerate_irreducibles(p, d)) == gauss_count(p, d)


@pytest.mark.parametrize("p,d", list(itertools.product((2, 3, 5), range(1, 5))))
def test_regular_count_matches_enumeration(p, d):
    irr = enumerate_irreducibles(p, d)
    assert sum(is_regular(m) for m in irr) == regular_count(p, d)


def test_regular_examples():
    assert is_regular(mu("mu^2+mu+1"))
    assert not is_regular(mu("mu^3+mu+1"))
    assert is_regular(mu("mu^4+mu^3+1"))
    assert regular_count(2, 3) == 1
    assert regular_count(2, 4) == 2
    assert all(regular_count(p, 1) == p - 1 for p in (2, 3, 5, 7))


def test_is_regular_needs_irreducible():
    with pytest.raises(ValueError):
        is_regular(mu("x^2+1"))


@pytest.mark.parametrize("p,d", list(itertools.product((2, 3, 5), range(1, 5))))
def test_divides_g_and_trace_criterion(p, d):
    for m in enumerate_irreducibles(p, d):
        assert (g_poly(p, d) % m).is_zero()
        assert (trace_of_mu(m) != 0) == (m.coeff(d - 1) != 0)
        if m != Poly.x(p):
            assert norm_of_mu(m) != 0


def test_trace_is_h_at_mu():
    m = mu("mu^3+mu+1")
    assert trace_of_mu(m) == 0
    assert h_poly(2, 3) == mu("x^4+x^2+x")


def test_records():
    rec = monic_record(mu("x^4+x^3+1"))
    assert rec.irreducible and rec.regular
    assert rec.trace_of_mu == 1 and rec.norm_of_mu == 1
    js = rec.to_json()
    assert set(js) == {"m", "coeffs", "irreducible", "regular", "trace_of_mu", "norm_of_mu"}
    assert [r.m for r in census(2, 4, regular_only=True)] == [mu("x^4+x^3+1"), mu("x^4+x^3+x^2+x+1")]
