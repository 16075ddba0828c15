from __future__ import annotations

import itertools
import json
from importlib import resources

import pytest

from fpgeom import a2geom as G
from fpgeom.a2geom import (
    BASIS1,
    BASIS2,
    DX,
    DXDX,
    DXMU,
    E1,
    E2,
    E3,
    ELEMENTS,
    F_SYM,
    FLIP,
    H_SYM,
    METRICS,
    MU1,
    MUDX,
    MUMU,
    OMEGA1_ELEMENTS,
    ONE,
    THETA,
    THETA2,
    X,
    ZERO,
    A2Elem,
    Omega1,
    SigmaParams,
    tensor,
)
from fpgeom.ffpoly import Poly


def poly_elem(*c):
    return A2Elem.from_poly(Poly(2, c))


@pytest.fixture(scope="module")
def searches():
    return {name: G.levi_civita_search(m) for name, m in METRICS.items()}


class TestAlgebra:
    def test_elements_obey_a4(self):
        assert all(a**4 == a for a in ELEMENTS)

    def test_idempotents(self):
        assert E1 == poly_elem(0, 1, 1) and E3 == poly_elem(1, 0, 0, 1)
        assert E2 == poly_elem(0, 1, 1, 1)
        assert E1 * E3 == ZERO
        assert E1 + E2 + E3 == ONE

    def test_relations(self):
        assert X * X == X + E1
        assert E1 * X == E2 + X and E2 * X == E2 and E3 * X == ZERO

    def test_reduction_from_poly(self):
        assert A2Elem.from_poly(Poly(2, (0, 0, 0, 0, 1))) == X
        with pytest.raises(ValueError):
            A2Elem(16)

    def test_structure_report(self):
        rep = G.a2_structure_check()
        assert rep.passed, rep.failures
        assert rep.data["boolean_dim"] == 3
        assert sum(a * a == a for a in ELEMENTS) == 8

    def test_p2_cocycle(self):
        rep = G.p2_cocycle_check()
        assert rep.passed, rep.failures


class TestForms:
    def test_d0_examples(self):
        assert G.d0(X * X) == MU1
        assert G.d0(X**3) == Omega1(poly_elem(1, 0, 1), poly_elem(1, 1))
        assert G.d0(ONE).is_zero()
        assert G.d0(X) == DX

    def test_leibniz_d0(self):
        for a, b in itertools.product(ELEMENTS, repeat=2):
            assert G.d0(a * b) == G.d0(a).right(b) + G.d0(b).left(a)

    def test_bimodule_relations(self):
        rels = G.omega_relations()
        assert all(rels.values()), rels

    def test_right_module_associativity(self):
        for w in OMEGA1_ELEMENTS:
            for a, b in itertools.product(ELEMENTS, repeat=2):
                assert w.right(a).right(b) == w.right(a * b)
                assert w.left(a).right(b) == w.right(b).left(a)

    def test_d_squared(self):
        assert all(G.d1(G.d0(a)).is_zero() for a in ELEMENTS)

    def test_inner(self):
        assert all(G.commutator(THETA, a) == G.d0(a) for a in ELEMENTS)

    def test_wedge_basics(self):
        assert DX.wedge(DX).is_zero() and MU1.wedge(MU1).is_zero()
        assert DX.wedge(MU1) == MU1.wedge(DX) == G.Omega2(ONE)
        assert F_SYM.wedge().is_zero() and H_SYM.wedge().is_zero()
        assert THETA2.wedge().is_zero()

    def test_d1_inner_form(self):
        assert all(G.d1(w) == G.d1_inner(w) for w in OMEGA1_ELEMENTS)


class TestCohomology:
    def test_dims_and_representatives(self):
        coh = G.cohomology()
        assert coh.dims == (1, 2, 1)
        assert coh.h0 == (ONE,)
        assert coh.h1 == (Omega1(X, ZERO), Omega1(ZERO, X * X))
        assert coh.h2 == (X**3,)
        assert coh.closed1_dim == 5 and coh.exact2_dim == 3

    def test_euler_characteristic(self):
        coh = G.cohomology()
        assert 4 - 8 + 4 == coh.dims[0] - coh.dims[1] + coh.dims[2] == 0

    def test_report(self):
        rep = G.representatives_check()
        assert rep.passed, rep.failures


class TestTensors:
    def test_commutators(self):
        assert G.tensor_commutator(DXDX, X) == F_SYM
        assert G.tensor_commutator(MUMU, X) == F_SYM
        assert G.tensor_commutator(DXMU, X) == DXMU + H_SYM

    def test_theta_theta_expansion(self):
        assert THETA2 == DXDX + DXMU + MUDX + MUMU

    def test_tensor_balanced(self):
        # (w . a) (x) v = w (x) (a . v)
        for w, v in itertools.product(BASIS1, repeat=2):
            for a in ELEMENTS:
                assert tensor(w.right(a), v) == tensor(w, v.left(a))

    def test_right_action_associative_on_tensors(self):
        for b in BASIS2:
            for a, c in itertools.product(ELEMENTS, repeat=2):
                assert b.right(a).right(c) == b.right(a * c)


class TestMetrics:
    def test_three_central_metrics(self):
        ms = G.central_metrics()
        assert len(ms) == 3
        assert set(ms) == set(METRICS.values())

    def test_family_cases(self):
        assert METRICS["i"] == DXDX + MUMU
        assert METRICS["ii"] == DXDX + THETA2
        assert METRICS["iii"] == MUMU + THETA2
        assert G.metric_family(0, 0).is_zero()

    def test_non_central_rejected(self):
        assert not G.is_central(DXMU)

    @pytest.mark.parametrize("name", ["i", "ii", "iii"])
    def test_inverse_exists(self, name):
        assert len(G.metric_inverses(METRICS[name])) == 1


class TestSigma:
    def test_admissible_family_is_64_point(self):
        sols = G.admissible_sigmas()
        assert len(sols) == 64
        assert {s.bits() for s in sols} == {G.sigma_from_params(sp).bits() for sp in SigmaParams.all()}
        assert sorted(G.params_of(s) for s in sols) == SigmaParams.all()

    def test_params_satisfy_constraint(self):
        for sp in SigmaParams.all():
            s = G.sigma_from_params(sp)
            a, b, c, A, B, _ = sp.astuple()
            C = s.images[(1, 1)].coeffs.get((0, 1), ZERO).bits
            assert (a + b + c) % 2 == (A + B + C) % 2

    def test_each_sigma_is_bimodule_and_torsion_compatible(self):
        for sp in SigmaParams.all():
            s = G.sigma_from_params(sp)
            for b in BASIS2:
                assert s(G.tensor_commutator(b, X)) == G.tensor_commutator(s(b), X)
                assert s(b).wedge() == b.wedge()

    def test_alpha_vanishes(self):
        assert G.admissible_alphas() == [(G.FormTensor(2), G.FormTensor(2))]


class TestConnections:
    def test_two_per_metric_one_flip(self, searches):
        for conns in searches.values():
            assert len(conns) == 2
            assert sum(c.params == FLIP for c in conns) == 1

    def test_four_distinct(self, searches):
        assert len({c.params for conns in searches.values() for c in conns}) == 4

    def test_case_i(self, searches):
        (other,) = [c for c in searches["i"] if c.params != FLIP]
        assert other.params == SigmaParams(0, 1, 0, 1, 0, 1)
        assert other.nabla(DX) == THETA2 and other.nabla(MU1) == THETA2

    def test_case_ii(self, searches):
        (other,) = [c for c in searches["ii"] if c.params != FLIP]
        assert other.nabla(DX) == DXMU + MUDX
        assert other.nabla(MU1) == MUMU
        assert other.sigma(DXMU) == tensor(MU1, THETA)

    def test_case_iii(self, searches):
        (other,) = [c for c in searches["iii"] if c.params != FLIP]
        assert other.sigma(DXMU) == tensor(THETA, DX)
        assert other.nabla(DX) == DXDX

    def test_flip(self, searches):
        flip = [c for c in searches["i"] if c.params == FLIP][0]
        assert flip.nabla(DX).is_zero() and flip.nabla(MU1).is_zero()
        for i, j in itertools.product(range(2), repeat=2):
            assert flip.sigma(G.FormTensor.basis(i, j)) == G.FormTensor.basis(j, i)

    def test_torsion_free_everywhere(self, searches):
        for conns in searches.values():
            for c in conns:
                assert all(c.torsion(w).is_zero() for w in OMEGA1_ELEMENTS)

    def test_bimodule_connection_rule(self, searches):
        # nabla(w a) = (nabla w) a + sigma(w (x) da)
        for conns in searches.values():
            for c in conns:
                for w in BASIS1:
                    for a in ELEMENTS:
                        lhs = c.nabla(w.right(a))
                        rhs = c.nabla(w).right(a) + c.sigma(tensor(w, G.d0(a)))
                        assert lhs == rhs

    def test_left_leibniz(self, searches):
        for conns in searches.values():
            for c in conns:
                for w in BASIS1:
                    for a in ELEMENTS:
                        assert c.nabla(w.left(a)) == c.nabla(w).left(a) + tensor(G.d0(a), w)

    def test_flat(self, searches):
        for conns in searches.values():
            for c in conns:
                curv = G.curvature(c)
                assert curv == {"dx": (ZERO, ZERO), "mu": (ZERO, ZERO)}

    def test_non_flat_nabla_detected(self):
        # a torsion-incompatible sigma still yields a well-defined curvature; check it is not trivially zero
        conn = G.Connection(SigmaParams(0, 0, 0, 0, 0, 0), G.sigma_from_params(SigmaParams(0, 0, 0, 0, 0, 0)))
        assert any(v != (ZERO, ZERO) for v in G.curvature(conn).values())

    def test_tables_match_fixture(self, searches):
        golden = json.loads(resources.files("fpgeom").joinpath("data", "a2_connections.json").read_text())
        for name, conns in searches.items():
            assert [c.table() for c in conns] == golden["metrics"][name]["connections"]
            assert METRICS[name].label() == golden["metrics"][name]["eta"]

    def test_metric_outside_family_rejected(self):
        with pytest.raises(ValueError):
            G.levi_civita_search(DXMU)
