import pytest

from nilclean.theorems import (
    REGISTRY,
    REQUIRED_ENTRIES,
    Corpus,
    UnknownTheoremError,
    VerifyContext,
    default_corpus,
    load_corpus,
    recheck,
    theorem_ids,
    verify,
    verify_all,
)

SMALL = Corpus.from_texts(["Z(4)", "Z(6)", "M(2,Z(2))", "GF(2,2)", "GR(Z(3),C(2))",
                           "DS(Z(2),Z(3))", "T(2,Z(2))"])


def test_default_corpus_contents():
    corpus = default_corpus()
    texts = [e.text for e in corpus]
    assert len(corpus) >= 30
    assert set(REQUIRED_ENTRIES) <= set(texts)
    assert len(set(texts)) == len(texts)
    assert corpus.total_elements >= 5000
    ex27 = next(e for e in corpus if e.text == "EX27(2,2)")
    assert ex27.cardinality == 1024
    largest = corpus.largest()
    assert (largest.text, largest.cardinality) == ("M(2,Z(6))", 1296)


def test_required_corpus_alone_is_below_five_thousand_elements():
    required = default_corpus(extended=False)
    assert len(required) == len(REQUIRED_ENTRIES)
    assert required.total_elements < 5000


def test_corpus_is_deterministic():
    assert [e.text for e in default_corpus()] == [e.text for e in default_corpus()]


def test_load_corpus_file(tmp_path):
    path = tmp_path / "rings.txt"
    path.write_text("# small test corpus\nZ(4)\n\n  M(2,Z(2))  \n# trailing comment\n")
    corpus = load_corpus(path)
    assert [e.text for e in corpus] == ["Z(4)", "M(2,Z(2))"]
    assert [e.cardinality for e in corpus] == [4, 16]


def test_unknown_theorem_id():
    with pytest.raises(UnknownTheoremError, match="unknown theorem id"):
        verify("X9.9", SMALL)


def test_registry_ids_are_stable_and_complete():
    ids = theorem_ids()
    for tid in ("L2.4", "P2.2", "T2.5", "C2.6", "L2.8", "C2.9", "C2.10", "T2.11", "T2.14",
                "L3.1", "T3.2", "EX3.4", "EX2.24", "T2.23", "T2.25", "C2.26", "L3.2'",
                "L3.3'", "L3.4'", "T3.5", "T3.6", "T3.12", "L3.10", "L3.11", "C3.13", "P3.15",
                "P4.1/T4.3", "T4.4", "T4.2"):
        assert tid in ids
    assert all(REGISTRY[t].statement for t in ids)


def test_unc_equivalence_passes_on_default_corpus():
    verdicts = verify("T2.14", default_corpus())
    assert len(verdicts) == len(default_corpus())
    assert all(v.passed for v in verdicts)


def test_generated_subring_example_passes():
    (v,) = verify("EX3.4", default_corpus())
    assert v.passed and v.ring.startswith("SUB(")


def test_inverted_flag_is_caught_and_rechecks():
    ctx = VerifyContext(mutations={("UNC", "M(2,Z(3))")})
    verdicts = verify("T2.14", default_corpus(), ctx)
    failed = [v for v in verdicts if not v.passed]
    assert [v.ring for v in failed] == ["M(2,Z(3))"]
    assert failed[0].counterexample
    again = recheck(failed[0], ctx)
    assert again.status == "fail"
    assert again.counterexample == failed[0].counterexample
    assert recheck(failed[0]).passed


def test_verdict_serialization():
    (v,) = verify("T2.14", Corpus.from_texts(["Z(4)"]))
    d = v.as_dict(timing=False)
    assert list(d) == ["theorem", "ring", "status", "counterexample", "checked"]
    assert "elapsed_ms" in v.as_dict()


def _key(vs):
    return sorted((v.theorem, v.ring, v.status, repr(v.counterexample)) for v in vs)


def test_permuting_the_corpus_permutes_verdicts():
    forward = verify_all(SMALL).verdicts
    backward = verify_all(Corpus(SMALL.version, tuple(reversed(SMALL.entries)))).verdicts
    assert _key(forward) == _key(backward)


def test_checks_do_not_depend_on_shared_context():
    shared = VerifyContext()
    a = [verify(t, SMALL, shared) for t in ("T2.23", "T3.12", "C2.26")]
    b = [verify(t, SMALL, VerifyContext()) for t in ("C2.26", "T3.12", "T2.23")]
    assert _key(sum(a, [])) == _key(sum(b, []))


def test_verify_all_accounting():
    summary = verify_all(SMALL)
    expected = sum(len(verify(t, SMALL)) for t in theorem_ids())
    assert len(summary.verdicts) == expected
    d = summary.as_dict()
    assert d["total"] == expected
    assert sum(d["counts"].values()) == expected
    assert d["counts"]["fail"] == 0
    assert len(summary.slowest(3)) == 3


def test_verify_all_on_empty_corpus():
    summary = verify_all(Corpus("empty", ()))
    assert summary.verdicts == [] and summary.as_dict()["total"] == 0


def test_oversized_ring_is_skipped():
    from nilclean.ring import Limits

    ctx = VerifyContext(limits=Limits(table=64, structural=64))
    (v,) = verify("T2.14", Corpus.from_texts(["M(2,Z(3))"]), ctx)
    assert v.status == "skipped" and "reason" in v.counterexample


def test_seeded_determinant_identity_is_reproducible():
    corpus = Corpus.from_texts(["Z(4)"])
    a = verify("L3.1", corpus, VerifyContext(seed=3))
    b = verify("L3.1", corpus, VerifyContext(seed=3))
    assert [v.as_dict(timing=False) for v in a] == [v.as_dict(timing=False) for v in b]
    assert a[0].passed and a[0].checked >= 1000
