import json

import numpy as np
import pytest

from nilclean.classify import (
    DEGENERATE,
    FLAG_ORDER,
    UNKNOWN,
    element_profile,
    nil_clean_witnesses,
    one_sided_nil_clean_witness,
    quotient_mod_J_profile,
    ring_class_flags,
    ring_flag,
    strongly_nil_clean_criterion,
    strongly_nil_clean_elem,
    sum_nilpotent_two_idem,
    sum_two_idem,
)
from nilclean.construct import build_ring, parse_element
from nilclean.ring import (
    Ideal,
    center,
    jacobson_mask,
    jacobson_radical,
    nil_mask,
    nilpotents,
    quotient,
    unit_mask,
    units,
)
from nilclean.theorems import default_corpus

CORPUS = [e.text for e in default_corpus()]
U3 = "[[0,0,1],[1,0,0],[0,1,0]]"
EXISTENTIAL = ("UU", "UNC", "nil_clean_ring", "strongly_nil_clean_ring", "UNII", "strong_UNII",
               "UII", "strong_UII", "strongly_2_nil_clean")


def _parts(R, w):
    extra = () if w.extra_idempotent is None else (w.extra_idempotent,)
    return (w.e,) + extra + (w.b,)


# -- element searches -------------------------------------------------------------------


def test_generator_of_cyclic_subring_is_not_nil_clean(ring):
    R = ring(f"SUB(M(3,Z(2));{U3})")
    u = parse_element(R, U3)
    assert nil_clean_witnesses(R, u) == []


def test_shifted_unipotent_has_two_nil_clean_decompositions(ring):
    M = ring("M(3,Z(2))")
    A = parse_element(M, "[[0,1,1],[0,0,1],[0,0,0]]")
    B = parse_element(M, "[[0,0,0],[1,0,0],[1,1,0]]")
    E = M.add(A, B)
    assert M.literal(E) == "[[0,1,1],[1,0,1],[1,1,0]]"
    assert M.mul(E, E) == E != M.zero
    U = M.sub(M.one, A)
    ws = nil_clean_witnesses(M, U)
    assert len({w.e for w in ws}) >= 2
    assert (M.sub(M.one, E), B) in {(w.e, w.b) for w in ws}
    for w in ws:
        w.validate(M, U)


def test_zero_has_trivial_witness_first(ring):
    for expr in ("Z(6)", "M(2,Z(2))", "GR(Z(2),Q8)"):
        R = ring(expr)
        w = nil_clean_witnesses(R, R.zero)[0]
        assert (w.e, w.b, w.nil_index) == (R.zero, R.zero, 1)


def test_witness_limit(ring):
    R = ring("M(2,Z(2))")
    assert len(nil_clean_witnesses(R, R.one, limit=1)) == 1
    with pytest.raises(ValueError):
        nil_clean_witnesses(R, R.one, limit=0)


def test_strongly_nil_clean_examples(ring):
    w = strongly_nil_clean_elem(ring("Z(4)"), 3)
    assert (w.e, w.b, w.nil_index, w.commuting) == (1, 2, 2, True)
    F = ring("GF(2,2)")
    assert strongly_nil_clean_elem(F, 2) is None
    for expr in ("Z(2)", "M(2,Z(2))", "T(3,Z(2))"):
        R = ring(expr)
        w = strongly_nil_clean_elem(R, R.one)
        assert (w.e, w.b) == (R.one, R.zero)


def test_nilpotent_plus_two_idempotents_examples(ring):
    w = sum_nilpotent_two_idem(ring("Z(3)"), 2)
    assert (w.e, w.extra_idempotent, w.b) == (1, 1, 0)
    w = sum_nilpotent_two_idem(ring("Z(9)"), 5)
    assert (w.e, w.extra_idempotent, w.b, w.nil_index) == (1, 1, 3, 2)
    assert sum_nilpotent_two_idem(ring("Z(6)"), 2).b == 0


@pytest.mark.parametrize("expr", ["Z(3)", "Z(4)", "Z(6)", "M(2,Z(2))", "GR(Z(3),C(2))", "T(2,Z(4))"])
def test_two_times_one_always_decomposes(ring, expr):
    R = ring(expr)
    two = R.add(R.one, R.one)
    for commuting in (False, True):
        w = sum_nilpotent_two_idem(R, two, commuting)
        w.validate(R, two)
        assert R.add(R.add(w.e, w.extra_idempotent), w.b) == two


def test_two_idempotent_sum_examples(ring):
    w = sum_two_idem(ring("Z(6)"), 5)
    assert (w.e, w.extra_idempotent, w.b) == (1, 4, 0)
    assert sum_two_idem(ring("Z(4)"), 3) is None
    for expr in ("Z(6)", "M(2,Z(2))"):
        R = ring(expr)
        w = sum_two_idem(R, R.zero)
        assert (w.e, w.extra_idempotent) == (R.zero, R.zero)


def test_diagonal_field_generator_is_not_nil_clean(ring):
    M = ring("M(2,GF(2,2))")
    a = parse_element(M, "[[2,0],[0,0]]")
    assert nil_clean_witnesses(M, a) == []


@pytest.mark.parametrize("expr", [t for t in CORPUS if build_ring(t).cardinality <= 256])
def test_witnesses_validate_and_profiles_are_consistent(ring, expr):
    R = ring(expr)
    for a in range(R.cardinality):
        for w in nil_clean_witnesses(R, a, limit=3):
            w.validate(R, a)
        p = element_profile(R, a)
        if p.is_unipotent:
            assert p.is_unit and p.strongly_nil_clean
        assert p.uniquely_nil_clean == (p.nil_clean_witness_count == 1)
        for commuting in (False, True):
            w = sum_nilpotent_two_idem(R, a, commuting)
            if w is not None:
                w.validate(R, a)
                assert w.pairwise_commuting or not commuting
            w = sum_two_idem(R, a, commuting)
            if w is not None:
                w.validate(R, a)
                assert w.b == R.zero


@pytest.mark.parametrize("expr", CORPUS)
def test_fast_criterion_agrees_with_search_on_every_element(ring, expr):
    R = ring(expr)
    for a in range(R.cardinality):
        fast = strongly_nil_clean_criterion(R, a)
        w = strongly_nil_clean_elem(R, a)
        assert fast == (w is not None)
        if w is not None:
            assert w.commuting
            w.validate(R, a)


@pytest.mark.parametrize("expr", CORPUS)
def test_units_strongly_nil_clean_iff_unipotent(ring, expr):
    R = ring(expr)
    nil = nil_mask(R)
    for u in units(R):
        assert (strongly_nil_clean_elem(R, u) is not None) == bool(nil[R.sub(u, R.one)])


@pytest.mark.parametrize("expr", [t for t in CORPUS
                                  if jacobson_mask(build_ring(t))[build_ring(t).scalar(2)]])
def test_one_sided_decomposition_matches_strong_nil_cleanness(ring, expr):
    R = ring(expr)
    for a in range(R.cardinality):
        one_sided = one_sided_nil_clean_witness(R, a) is not None
        assert one_sided == strongly_nil_clean_criterion(R, a)


# -- ring flags -----------------------------------------------------------------------------


def test_report_examples(ring):
    f = ring_class_flags(ring("M(2,Z(2))")).flags
    assert (f["UNC"], f["nil_clean_ring"], f["UU"]) == (True, True, False)
    f = ring_class_flags(ring("GR(Z(2),C(3))")).flags
    assert (f["UNC"], f["reduced"]) == (False, True)
    f = ring_class_flags(ring("Z(6)")).flags
    assert (f["strong_UII"], f["UU"]) == (True, False)


@pytest.mark.parametrize("expr, expected", [
    ("Z(2)", {"boolean": True, "U_eq_1": True, "UU": True, "strong_UII": True, "J_card": 1}),
    ("Z(4)", {"UU": True, "UNC": True, "U_eq_1_plus_J": True, "J_card": 2, "J_nil_index": 2,
              "strong_UII": False, "reduced": False}),
    ("Z(9)", {"strong_UII": False, "strong_UNII": True, "subdirect_Z3": False}),
    ("Z(3)", {"subdirect_Z3": True, "U_eq_1_plus_idem": True, "strong_UII": True}),
    ("GF(2,2)", {"UNC": False, "UNII": False, "clean": True, "reduced": True}),
    ("B(2)", {"boolean": True, "strongly_nil_clean_ring": True}),
    ("T(2,Z(2))", {"UU": True, "two_primal": True, "J_card": 2}),
    ("M(2,Z(3))", {"UNC": False, "two_primal": False, "clean": True}),
    ("GR(Z(3),C(2))", {"strong_UII": True, "U_eq_1_plus_idem": True}),
])
def test_flag_values(ring, expr, expected):
    f = ring_class_flags(ring(expr)).flags
    assert {k: f[k] for k in expected} == expected


def test_quotient_mod_radical_examples(ring):
    p = quotient_mod_J_profile(ring("Z(12)"))
    assert p.cardinality == 6 and not p.center_boolean
    p = quotient_mod_J_profile(ring("M(2,Z(4))"))
    assert p.cardinality == 16 and p.center_boolean and p.radical_zero
    assert quotient_mod_J_profile(ring("Z(9)")).subdirect_Z3


@pytest.mark.parametrize("expr", CORPUS)
def test_report_certificates(ring, expr):
    report = ring_class_flags(ring(expr), witnesses=True, witness_cap=4)
    assert list(report.flags) == list(FLAG_ORDER)
    for name, value in report.flags.items():
        if value is False:
            assert name in report.counterexamples
        if value is True and name in EXISTENTIAL:
            assert report.witnesses[name]
    json.dumps(report.as_dict())


def test_zero_ring_is_degenerate():
    R = build_ring("Z(4)")
    Z, _ = quotient(R, Ideal.from_members(R, range(4)))
    flags = ring_class_flags(Z).flags
    assert flags["UNC"] == DEGENERATE and flags["boolean"] == DEGENERATE
    assert flags["J_card"] == 1


def test_work_limit_marks_unknown(ring):
    report = ring_class_flags(build_ring("M(2,Z(3))"), work_limit=10)
    assert report.flags["strong_UNII"] == UNKNOWN
    assert report.flags["UNC"] is False
    assert ring_flag(build_ring("M(2,Z(3))"), "strong_UNII").value is False


def test_unknown_flag_name(ring):
    with pytest.raises(KeyError):
        ring_flag(ring("Z(2)"), "not_a_flag")


def test_reports_are_deterministic():
    a = ring_class_flags(build_ring("T(3,Z(2))"), witnesses=True).as_dict()
    b = ring_class_flags(build_ring("T(3,Z(2))"), witnesses=True).as_dict()
    assert json.dumps(a) == json.dumps(b)


# -- structural consequences ---------------------------------------------------------------

DIRECT_SUMS = [("Z(2)", "Z(3)"), ("TP(Z(2),2)", "M(2,Z(2))"), ("Z(3)", "Z(3)"),
               ("Z(4)", "GF(2,2)"), ("M(2,Z(3))", "Z(2)"), ("Z(6)", "Z(3)"), ("T(2,Z(2))", "Z(4)")]


@pytest.mark.parametrize("A, B", DIRECT_SUMS)
def test_flags_of_direct_sums_are_conjunctions(A, B):
    fa = ring_class_flags(build_ring(A)).flags
    fb = ring_class_flags(build_ring(B)).flags
    fs = ring_class_flags(build_ring(f"DS({A},{B})")).flags
    for name in ("UNC", "UU", "UII", "strong_UII", "nil_clean_ring", "strongly_nil_clean_ring"):
        assert fs[name] == (fa[name] and fb[name]), name


@pytest.mark.parametrize("expr", CORPUS)
def test_center_inherits_nil_cleanness(ring, expr):
    R = ring(expr)
    C = center(R).ring
    if ring_flag(R, "nil_clean_ring").value:
        assert ring_flag(C, "strongly_nil_clean_ring").value is True
    if ring_flag(R, "UNC").value:
        assert ring_flag(C, "UU").value is True


@pytest.mark.parametrize("expr", CORPUS)
def test_strong_UII_forces_zero_radical_and_reduced(ring, expr):
    R = ring(expr)
    if ring_flag(R, "strong_UII").value:
        assert jacobson_radical(R).is_zero()
        assert nilpotents(R) == {R.zero: 1}


@pytest.mark.parametrize("expr", CORPUS)
def test_flag_definitions_against_direct_enumeration(ring, expr):
    R = ring(expr)
    x = R.elements()
    U = np.flatnonzero(unit_mask(R))
    nil = nil_mask(R)
    assert ring_flag(R, "boolean").value == bool((R.mul_vec(x, x) == x).all())
    assert ring_flag(R, "reduced").value == (int(nil.sum()) == 1)
    assert ring_flag(R, "UU").value == bool(nil[R.sub_vec(U, R.one)].all())
    assert ring_flag(R, "U_eq_1").value == (len(U) == 1)
    assert ring_flag(R, "two_primal").value == bool(jacobson_mask(R)[nil].all())
    assert ring_flag(R, "J_card").value == len(jacobson_radical(R))
