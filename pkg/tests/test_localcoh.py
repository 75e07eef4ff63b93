"""Local-cohomology component pipeline: free-component ranks, induced maps,
homology, component resolutions, regularity bound, mu-polynomial fit."""

from math import comb

import pytest

from bigraded.corpus import cyclic_quotient, paper_example
from bigraded.groebner import PresentedModule, free_resolution, is_zero_module
from bigraded.invariants import graded_dimension, regularity
from bigraded.localcoh import (
    NotRelativeCMError,
    check_relative_cm,
    component_complex,
    default_j_window,
    induced_component_map,
    lc_component,
    mu_polynomial_fit,
    mu_window_fit,
    regularity_bound_constant,
    regularity_profile,
    theorem22_resolution,
    top_component_free,
)
from bigraded.ring import FreeModule, Matrix, Ring, parse_polynomial

R11 = Ring(32003, 1, 1)
R22 = Ring(32003, 2, 2)


class TestTopComponent:
    def test_rank_one(self):
        C = top_component_free(FreeModule(R11, ((0, 0),)), -1)
        assert C.rank == 1 and C.basis == ((0, (0,)),)
        assert C.module.twists == ((0, 0),)

    def test_empty(self):
        assert top_component_free(FreeModule(R11, ((0, 0),)), 0).rank == 0

    def test_twisted(self):
        C = top_component_free(FreeModule(R22, ((0, 1),)), -3)
        assert C.rank == 3
        assert {z for _, z in C.basis} == {(2, 0), (1, 1), (0, 2)}

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_stars_and_bars_rank(self, n):
        ring = Ring(32003, 1, n)
        for b in range(-2, 3):
            for j in range(-10, 11):
                F = FreeModule(ring, ((0, b),))
                total = -n - j + b
                expected = comb(total + n - 1, n - 1) if total >= 0 else 0
                assert top_component_free(F, j).rank == expected


class TestInducedMap:
    def test_y1_action(self):
        src = FreeModule(R11, ((0, 1),))
        tgt = FreeModule(R11, ((0, 0),))
        phi = Matrix(src, tgt, (tgt.basis_vector(0).mul_poly(parse_polynomial(R11, "y1")),))
        psi = induced_component_map(phi, -2)
        # source basis z^(1), target z^(0); y1: z^(1) -> z^(0)
        assert psi.source.rank == 1 and psi.target.rank == 1
        assert str(psi.entry(0, 0)) == "1"

    def test_x1y1_action(self):
        src = FreeModule(R11, ((1, 1),))
        tgt = FreeModule(R11, ((0, 0),))
        phi = Matrix(src, tgt, (tgt.basis_vector(0).mul_poly(parse_polynomial(R11, "x1*y1")),))
        psi = induced_component_map(phi, -2)
        # source basis z^(2) (|a| = -1+2+1 = 2), target z^(1): z^(2) -> x1*z^(1)
        assert psi.source.rank == 1 and psi.target.rank == 1
        assert str(psi.entry(0, 0)) == "x1"

    def test_complex_property(self):
        M = paper_example("ex35").module
        res = free_resolution(M)
        for j in range(-6, 1):
            C = component_complex(res, j)
            for a, b in zip(C.maps, C.maps[1:]):
                assert a.compose(b).is_zero


class TestComponentHomology:
    def test_worked_hypersurface(self):
        # S/(x1y1), m=n=1: H^1_Q(M)_{-1} = K[x]/(x1)
        M = cyclic_quotient(R11, ["x1*y1"])
        N = lc_component(M, 1, -1)
        assert graded_dimension(N, (0, 0)) == 1
        assert graded_dimension(N, (1, 0)) == 0

    def test_smodq_strand(self):
        # S/Q, m=n=1: H^0_Q(M)_0 = K[x]
        M = cyclic_quotient(R11, ["y1"])
        N = lc_component(M, 0, 0)
        assert all(graded_dimension(N, (k, 0)) == 1 for k in range(4))
        for i in (0, 1):
            assert is_zero_module(lc_component(M, i, -2))

    def test_free_module_concentrated_at_n(self):
        S = PresentedModule.free(FreeModule(R22, ((0, 0),)))
        for j in range(-4, 1):
            for i in (0, 1):
                assert is_zero_module(lc_component(S, i, j))
        assert lc_component(S, 2, -2).ambient.rank == 1

    def test_out_of_range(self):
        S = PresentedModule.free(FreeModule(R11, ((0, 0),)))
        assert is_zero_module(lc_component(S, 5, -3))
        assert is_zero_module(lc_component(S, -1, -3))


class TestTheorem22:
    def test_free_length_zero(self):
        S = PresentedModule.free(FreeModule(R22, ((0, 0),)))
        tr = theorem22_resolution(S, 2, -3)
        assert tr.length == 0 and tr.modules[0].rank == 2

    def test_ex35(self):
        M = paper_example("ex35").module
        for j in (-4, -3, -2):
            tr = theorem22_resolution(M, 2, j)
            assert tr.length <= 2
            for a, b in zip(tr.maps, tr.maps[1:]):
                assert a.compose(b).is_zero

    def test_rejects_wrong_q(self):
        M = paper_example("ex35").module
        with pytest.raises(NotRelativeCMError):
            theorem22_resolution(M, 1, -3)

    def test_rejects_non_rcm(self):
        M = cyclic_quotient(R11, ["x1*y1"])
        with pytest.raises(NotRelativeCMError):
            theorem22_resolution(M, 1, -2)

    def test_check_relative_cm(self):
        assert check_relative_cm(paper_example("ex35").module) == 2
        assert check_relative_cm(paper_example("ex36_2").module) == 0


class TestRegularityBound:
    def test_free_bound_zero(self):
        S = PresentedModule.free(FreeModule(R22, ((0, 0),)))
        assert regularity_bound_constant(S) == 0
        for j, r, c in regularity_profile(S, 2, -5, -2):
            assert r == 0 and c == 0

    def test_twisted_free(self):
        S = PresentedModule.free(FreeModule(R22, ((2, 0),)))
        for j, r, c in regularity_profile(S, 2, -5, -2):
            assert r == 2 and c == 2

    def test_ex35_bound_holds(self):
        M = paper_example("ex35").module
        for j, r, c in regularity_profile(M, 2, -8, -3):
            assert r <= c


class TestMuPolynomial:
    def test_exact_interpolation(self):
        deg, predict = mu_polynomial_fit([(0, 1), (1, 4), (2, 9), (3, 16)])
        assert deg == 2
        assert predict(5) == 36

    def test_ex35_linear(self):
        pts, deg, ok = mu_window_fit(paper_example("ex35").module, 2)
        assert ok and deg <= 2

    def test_window_shape(self):
        jmin, jmax = default_j_window(paper_example("ex35").module)
        assert jmin < -2 and jmax >= 0
