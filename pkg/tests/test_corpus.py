"""Corpus generators: expected-value reproduction, tensor verdicts,
determinism."""

import pytest

from bigraded.corpus import (
    MixedVariablesError,
    corpus_entry,
    cyclic_quotient,
    default_corpus,
    paper_example,
    random_module,
    tensor_module,
)
from bigraded.invariants import depth, dimension
from bigraded.rcm import rcm_report
from bigraded.ring import Ring

R22 = Ring(32003, 2, 2)


@pytest.mark.parametrize("name", [e.name for e in default_corpus()])
def test_expected_values_reproduced(name):
    entry = corpus_entry(name)
    report = rcm_report(entry.module).to_dict()
    for key, value, provenance in entry.expected:
        assert report[key] == value, (name, key, provenance)


def test_corpus_has_enough_rcm_entries():
    rcm_entries = [e for e in default_corpus() if rcm_report(e.module).is_rcm_q]
    assert len(rcm_entries) >= 12
    names = {e.name for e in rcm_entries}
    assert {"ex35", "ex36_1", "ex36_2", "ex36_3"} <= names


class TestTensor:
    def test_mixed_variables_rejected(self):
        with pytest.raises(MixedVariablesError):
            tensor_module("bad", R22, ["x1*y1"], [])

    def test_full_ring(self):
        e = tensor_module("s", R22, [], [])
        r = rcm_report(e.module)
        assert r.is_rcm_q and r.rdim_q == 2 and r.is_rcm_p and r.rdim_p == 2

    def test_hypersurface_in_y(self):
        e = tensor_module("t", R22, [], ["y1^2"])
        r = rcm_report(e.module)
        assert r.is_rcm_q and r.rdim_q == 1

    def test_lemma34_verdicts(self):
        # isRCM(Q) of S/(I+J) iff K[y]/J is CM, and rdim(Q) = dim K[y]/J
        ky = Ring(32003, 0, 2)
        cases = [([], True, 2), (["y1^2"], True, 1), (["y1", "y2"], True, 0), (["y1^2", "y1*y2"], False, None)]
        for j_texts, cm, rd in cases:
            e = tensor_module("t", R22, ["x1^2"], j_texts)
            r = rcm_report(e.module)
            assert r.is_rcm_q == cm, j_texts
            if cm:
                assert r.rdim_q == rd
                factor = cyclic_quotient(ky, j_texts)
                assert rd == int(dimension(factor)) and depth(factor) == rd


class TestPaperExamples:
    def test_ex35_presentation(self):
        e = paper_example("ex35")
        assert e.module.ring == R22
        assert e.module.relations.source.rank == 2

    def test_ex36_relations_count(self):
        for m in (1, 2, 3):
            e = paper_example("ex36_%d" % m)
            assert e.module.relations.source.rank == m + 1

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            paper_example("ex99")
        with pytest.raises(KeyError):
            corpus_entry("nope")


class TestRandom:
    def test_determinism(self):
        a = random_module(0).module
        b = random_module(0).module
        assert a.ambient == b.ambient and a.relations.columns == b.relations.columns

    def test_distinct_seeds_differ(self):
        assert random_module(0).module.relations.columns != random_module(1).module.relations.columns

    def test_zero_relations_is_free(self):
        e = random_module(1, relations=0)
        assert e.module.relations.source.rank == 0

    def test_relations_bihomogeneous(self):
        for seed in range(4):
            for col in random_module(seed, relations=3).module.relations.columns:
                assert col.is_bihomogeneous()
