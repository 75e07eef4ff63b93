"""Relative Cohen-Macaulay analysis: reports, regular-element descent,
maximal checks and canonical duals."""

import pytest

from bigraded.corpus import cyclic_quotient, default_corpus, paper_example
from bigraded.groebner import PresentedModule, projective_dimension
from bigraded.invariants import ZeroModuleError, dimension, grade
from bigraded.rcm import (
    NotCMError,
    annihilator_is_trivial,
    canonical_dual,
    descent_chain,
    find_regular_element,
    maximal_rcm_check,
    quotient_by_element,
    rcm_report,
    y_sequence_is_regular,
)
from bigraded.ring import FreeModule, Matrix, Ring, parse_polynomial

R11 = Ring(32003, 1, 1)
R22 = Ring(32003, 2, 2)


class TestReport:
    def test_ex35(self):
        r = rcm_report(paper_example("ex35").module)
        assert (r.is_rcm_q, r.rdim_q, r.is_rcm_p) == (True, 2, False)

    def test_ex36(self):
        for m in (1, 2, 3):
            r = rcm_report(paper_example("ex36_%d" % m).module)
            assert r.is_rcm_q and r.rdim_q == 0
            assert not r.is_rcm_p and r.grade_p == 0 and r.cd_p == m

    def test_cm_hypersurface_not_rcm(self):
        r = rcm_report(cyclic_quotient(R11, ["x1*y1"]))
        assert r.is_cm and not r.is_rcm_q and r.grade_q == 0 and r.cd_q == 1

    def test_zero_module_rejected(self):
        amb = FreeModule(R11, ((0, 0),))
        Z = PresentedModule(amb, Matrix.from_columns(amb, [amb.basis_vector(0)]))
        with pytest.raises(ZeroModuleError):
            rcm_report(Z)

    def test_identity_checks_hold_corpus_wide(self):
        for e in default_corpus():
            r = rcm_report(e.module)
            for c in r.identity_checks:
                assert c.holds, (e.name, c.name, c.detail)


class TestRegularElements:
    def test_annihilator(self):
        S = PresentedModule.free(FreeModule(R11, ((0, 0),)))
        y1 = parse_polynomial(R11, "y1")
        assert annihilator_is_trivial(S, y1)
        M = cyclic_quotient(R11, ["x1*y1"])
        assert not annihilator_is_trivial(M, y1)

    def test_find_on_free(self):
        S = PresentedModule.free(FreeModule(R22, ((0, 0),)))
        cert = find_regular_element(S, seed=0)
        assert cert.annihilator_trivial and cert.attempts <= 32

    def test_find_on_ex35(self):
        cert = find_regular_element(paper_example("ex35").module, seed=1)
        assert cert.element.bidegree() == (0, 1)

    def test_rdim_zero_rejected(self):
        with pytest.raises(ValueError):
            find_regular_element(paper_example("ex36_1").module, seed=0)

    def test_quotient_drops_rdim(self):
        M = paper_example("ex35").module
        y1 = parse_polynomial(R22, "y1")
        r = rcm_report(quotient_by_element(M, y1))
        assert r.is_rcm_q and r.rdim_q == 1


class TestDescent:
    def test_free_full_chain(self):
        S = PresentedModule.free(FreeModule(R22, ((0, 0),)))
        first, steps = descent_chain(S, seed=0)
        assert first.rdim_q == 2 and len(steps) == 2
        assert steps[-1].report.rdim_q == 0

    def test_ex35_chain(self):
        first, steps = descent_chain(paper_example("ex35").module, seed=0)
        assert first.rdim_q == 2 and len(steps) == 2
        dims = [first.dim] + [s.report.dim for s in steps]
        assert dims == [3, 2, 1]

    def test_ex36_empty_chain(self):
        _, steps = descent_chain(paper_example("ex36_2").module, seed=0)
        assert steps == []

    def test_non_rcm_rejected(self):
        from bigraded.localcoh import NotRelativeCMError

        with pytest.raises(NotRelativeCMError):
            descent_chain(cyclic_quotient(R11, ["x1*y1"]), seed=0)


class TestMaximal:
    def test_free_is_maximal_both(self):
        S = PresentedModule.free(FreeModule(R22, ((0, 0),)))
        c = maximal_rcm_check(S)
        assert c.maximal_q and c.maximal_p and c.is_free and c.verdicts_agree

    def test_tensor_x_only(self):
        # S/(x1^2): maximal w.r.t. Q, not free
        M = cyclic_quotient(R11, ["x1^2"])
        c = maximal_rcm_check(M)
        assert c.maximal_q and not c.is_free and c.verdicts_agree

    def test_ex36_not_maximal(self):
        c = maximal_rcm_check(paper_example("ex36_2").module)
        assert not c.maximal_q and c.verdicts_agree

    def test_agreement_corpus_wide(self):
        for e in default_corpus():
            c = maximal_rcm_check(e.module)
            assert c.verdicts_agree, e.name
            assert (c.maximal_p and c.maximal_q) == (projective_dimension(e.module) == 0)

    def test_y_sequence_direct(self):
        assert y_sequence_is_regular(PresentedModule.free(FreeModule(R22, ((0, 0),))))
        assert not y_sequence_is_regular(cyclic_quotient(R22, ["y1^2"]))


class TestCanonicalDual:
    def test_free_dual(self):
        S = PresentedModule.free(FreeModule(R22, ((0, 0),)))
        D = canonical_dual(S)
        assert D.ambient.rank == 1 and D.relations.source.rank == 0

    def test_smodp_dual_rdims(self):
        M = cyclic_quotient(R22, ["x1", "x2"])
        D = canonical_dual(M)
        rM, rD = rcm_report(M), rcm_report(D)
        assert rM.rdim_q == rD.rdim_q == 2

    def test_hypersurface_self_dual_shape(self):
        M = cyclic_quotient(R11, ["x1*y1"])
        D = canonical_dual(M)
        assert dimension(D) == dimension(M)
        assert rcm_report(D).is_cm

    def test_non_cm_rejected(self):
        with pytest.raises(NotCMError):
            canonical_dual(paper_example("ex35").module)

    def test_cor33_rdim_preserved(self):
        # CM and isRCM(Q) corpus entries: dual preserves both rdims
        for e in default_corpus():
            r = rcm_report(e.module)
            if not (r.is_cm and r.is_rcm_q):
                continue
            rd = rcm_report(canonical_dual(e.module))
            assert rd.rdim_q == r.rdim_q, e.name
            if r.is_rcm_p:
                assert rd.rdim_p == r.rdim_p, e.name
