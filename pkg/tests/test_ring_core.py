import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from nilclean.construct import build_ring, matrix_ring, zmod
from nilclean.ring import (
    AxiomError,
    CardinalityError,
    Carrier,
    FiniteRing,
    Ideal,
    Limits,
    ParentMismatchError,
    RingError,
    center,
    central_idempotent_split,
    characteristic,
    idempotents,
    ideal_generated,
    ideal_nil_index,
    is_semipotent,
    jacobson_radical,
    nil_mask,
    nilpotents,
    quotient,
    subring_generated,
    torsion_split,
    units,
    zero_ideal,
)
from nilclean.theorems import default_corpus

CORPUS = [e.text for e in default_corpus()]
SMALL = [e.text for e in default_corpus() if e.cardinality <= 256]


# -- construction ---------------------------------------------------------------


@pytest.mark.parametrize("expr, card, char", [
    ("Z(4)", 4, 4),
    ("M(2,Z(2))", 16, 2),
    ("GR(Z(2),C(3))", 8, 2),
    ("Z(6)", 6, 6),
    ("GR(Z(4),C(2))", 16, 4),
])
def test_cardinality_and_characteristic(ring, expr, card, char):
    R = ring(expr)
    assert R.cardinality == card
    assert characteristic(R) == char


def test_sealed_ring_rejects_mutation(ring):
    R = ring("Z(4)")
    with pytest.raises(AttributeError):
        R.cardinality = 5


def test_cache_is_write_once(ring):
    R = ring("Z(6)")
    first = R.cached("test.marker", lambda: [1])
    assert R.cached("test.marker", lambda: [2]) is first


def test_elem_handles_are_canonical_and_tied_to_parent():
    R, S = zmod(6), zmod(6)
    assert R[2] + R[5] == R[1]
    assert R[2] * R[3] == R[0]
    assert R[3] ** 2 == R[3]
    assert len({R[1], R[1], R[2]}) == 2
    with pytest.raises(ParentMismatchError):
        R[1] + S[1]


class _BrokenCarrier(Carrier):
    """Z/4 with a multiplication that is not associative."""

    size = 4

    def add_vec(self, a, b):
        return (np.asarray(a) + np.asarray(b)) % 4

    def mul_vec(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = (a * b) % 4
        return np.where((a == 2) & (b == 3), 0, out)

    def neg_vec(self, a):
        return (-np.asarray(a)) % 4


def test_axiom_failure_is_reported():
    with pytest.raises(AxiomError):
        FiniteRing(_BrokenCarrier())


def test_cardinality_limits():
    with pytest.raises(CardinalityError):
        build_ring("M(2,Z(99999))")
    with pytest.raises(CardinalityError):
        build_ring("M(2,Z(2))", limits=Limits(table=8, structural=8))
    R = build_ring("M(2,Z(2))", limits=Limits(table=8, structural=64))
    assert R.backend == "structural"


def test_zero_equals_one_rejected_outside_quotients():
    R = zmod(4)
    Q, _ = quotient(R, Ideal.from_members(R, range(4)))
    assert Q.cardinality == 1 and Q.is_zero_ring()


# -- structure sets versus brute force -----------------------------------------------


def test_units_examples(ring):
    assert units(ring("Z(4)")) == {1: 1, 3: 3}
    assert len(units(ring("M(2,Z(2))"))) == 6
    assert len(units(ring("GF(2,2)"))) == 3


def test_idempotent_examples(ring):
    assert idempotents(ring("Z(6)")).tolist() == [0, 1, 3, 4]
    assert len(idempotents(ring("M(2,Z(2))"))) == 8
    assert idempotents(ring("GF(2,2)")).tolist() == [0, 1]


def test_nilpotent_examples(ring):
    assert nilpotents(ring("Z(8)")) == {0: 1, 2: 3, 4: 2, 6: 3}
    assert len(nilpotents(ring("M(2,Z(2))"))) == 4
    assert nilpotents(ring("Z(3)")) == {0: 1}


def test_center_examples(ring):
    C = center(ring("M(2,Z(2))"))
    assert len(C) == 2
    assert set(C.members.tolist()) == {0, ring("M(2,Z(2))").one}
    assert len(center(ring("Z(12)"))) == 12
    T = ring("T(2,Z(2))")
    assert [T.literal(int(a)) for a in center(T).members] == ["[[0,0],[0,0]]", "[[1,0],[0,1]]"]


def test_jacobson_examples(ring):
    assert jacobson_radical(ring("Z(12)")).members.tolist() == [0, 6]
    assert jacobson_radical(ring("M(2,Z(2))")).members.tolist() == [0]
    assert jacobson_radical(ring("Z(4)")).members.tolist() == [0, 2]


@pytest.mark.parametrize("build, oracle", [
    ("M(2,Z(2))", lambda: oracles.matrices(2, oracles.zmod(2))),
    ("M(2,Z(3))", lambda: oracles.matrices(2, oracles.zmod(3))),
    ("M(2,Z(4))", lambda: oracles.matrices(2, oracles.zmod(4))),
    ("T(3,Z(2))", lambda: oracles.matrices(3, oracles.zmod(2), upper=True)),
    ("GF(2,2)", oracles.gf4),
    ("M(2,GF(2,2))", lambda: oracles.matrices(2, oracles.gf4())),
    ("GR(Z(2),C(3))", lambda: oracles.group_ring_cyclic(oracles.zmod(2), 3)),
    ("GR(Z(3),C(3))", lambda: oracles.group_ring_cyclic(oracles.zmod(3), 3)),
    ("GR(Z(4),C(2))", lambda: oracles.group_ring_cyclic(oracles.zmod(4), 2)),
    ("Z(12)", lambda: oracles.zmod(12)),
])
def test_structure_counts_match_brute_force(ring, build, oracle):
    R, O = ring(build), oracle()
    assert R.cardinality == len(O.elements)
    assert len(units(R)) == len(O.units())
    assert len(idempotents(R)) == len(O.idempotents())
    assert len(nilpotents(R)) == len(O.nilpotents())
    assert len(center(R)) == len(O.center())
    if len(O.elements) <= 256:
        assert len(jacobson_radical(R)) == len(O.jacobson())
    assert sorted(nilpotents(R).values()) == sorted(O.nil_index(a) for a in O.nilpotents())


# -- ideals, quotients, subrings ---------------------------------------------------------


def test_ideal_generated_examples(ring):
    assert ideal_generated(ring("Z(12)"), [4]).members.tolist() == [0, 4, 8]
    M = ring("M(2,Z(2))")
    E12 = [a for a in range(16) if M.literal(a) == "[[0,1],[0,0]]"]
    assert len(ideal_generated(M, E12)) == 16
    assert ideal_generated(M, []).members.tolist() == [0]


def test_ideal_nil_index_examples(ring):
    Z8 = ring("Z(8)")
    assert ideal_nil_index(Ideal.from_members(Z8, [0, 2, 4, 6])) == 3
    assert ideal_nil_index(zero_ideal(Z8)) == 1
    from nilclean.construct import augmentation_ideal

    assert ideal_nil_index(augmentation_ideal(ring("GR(Z(2),C(2))"))) == 2
    assert ideal_nil_index(Ideal.from_members(ring("Z(6)"), [0, 2, 4])) is None


def test_ideal_validation_rejects_non_ideal(ring):
    from nilclean.ring import IdealError

    with pytest.raises(IdealError):
        Ideal.from_members(ring("Z(6)"), [0, 1])


def test_quotient_examples(ring):
    Z12 = ring("Z(12)")
    Q, proj = quotient(Z12, ideal_generated(Z12, [4]))
    assert Q.cardinality == 4 and characteristic(Q) == 4
    Q0, _ = quotient(Z12, zero_ideal(Z12))
    assert Q0.cardinality == 12
    Z4 = ring("Z(4)")
    B, _ = quotient(Z4, jacobson_radical(Z4))
    assert B.cardinality == 2
    assert all(B.mul(x, x) == x for x in B)


def test_subring_examples(ring):
    M3 = ring("M(3,Z(2))")
    u = [a for a in range(512) if M3.literal(a) == "[[0,0,1],[1,0,0],[0,1,0]]"]
    S = subring_generated(M3, u)
    assert len(S) == 8
    M2 = ring("M(2,Z(2))")
    assert len(subring_generated(M2, [])) == 2
    assert subring_generated(M2, [M2.one]).members.tolist() == subring_generated(M2, []).members.tolist()


def test_semipotent_examples(ring):
    assert is_semipotent(ring("Z(2)")) == (True, None)
    assert is_semipotent(ring("M(2,Z(2))")) == (True, None)


@pytest.mark.parametrize("expr", CORPUS)
def test_every_corpus_ring_is_semipotent(ring, expr):
    assert is_semipotent(ring(expr))[0]


def test_central_split_examples(ring):
    Z6 = ring("Z(6)")
    A, B = central_idempotent_split(Z6, 3)
    assert (A.cardinality, B.cardinality) == (2, 3)
    A, B = central_idempotent_split(Z6, 4)
    assert (A.cardinality, B.cardinality) == (3, 2)
    with pytest.raises(RingError, match="not idempotent"):
        central_idempotent_split(ring("Z(4)"), 2)
    M = ring("M(2,Z(2))")
    noncentral = next(int(e) for e in idempotents(M) if e not in (M.zero, M.one))
    with pytest.raises(RingError, match="not central"):
        central_idempotent_split(M, noncentral)
    with pytest.raises(RingError, match="trivial"):
        central_idempotent_split(Z6, 1)


def test_torsion_split_examples(ring):
    assert [(p, S.cardinality) for p, S in torsion_split(ring("Z(6)"))] == [(2, 2), (3, 3)]
    assert [(p, S.cardinality) for p, S in torsion_split(ring("Z(8)"))] == [(2, 8)]
    assert [(p, S.cardinality) for p, S in torsion_split(ring("GR(Z(6),C(2))"))] == [(2, 4), (3, 9)]


# -- invariants over the corpus ------------------------------------------------------------


@pytest.mark.parametrize("expr", CORPUS)
def test_one_minus_nilpotent_is_unit_with_geometric_inverse(ring, expr):
    R = ring(expr)
    inv = units(R)
    for a, k in nilpotents(R).items():
        u = R.sub(R.one, a)
        assert u in inv
        geo, p = R.zero, R.one
        for _ in range(k):
            geo, p = R.add(geo, p), R.mul(p, a)
        assert R.mul(u, geo) == R.one


@pytest.mark.parametrize("expr", CORPUS)
def test_structure_set_consistency(ring, expr):
    R = ring(expr)
    U = set(units(R))
    assert R.one in U
    assert not U & set(nilpotents(R))
    assert U & set(idempotents(R).tolist()) == {R.one}
    inv = units(R)
    sample = sorted(U)[:40]
    for a in sample:
        assert R.mul(a, inv[a]) == R.one == R.mul(inv[a], a)
        for b in sample:
            assert R.mul(a, b) in U


@pytest.mark.parametrize("expr", CORPUS)
def test_radical_of_semisimple_quotient_is_zero(ring, expr):
    R = ring(expr)
    Q, _ = quotient(R, jacobson_radical(R))
    assert jacobson_radical(Q).is_zero()


def _nil_ideals(R):
    yield jacobson_radical(R)
    for a in np.flatnonzero(nil_mask(R))[1:6]:
        I = ideal_generated(R, [int(a)])
        if nil_mask(R)[I.members].all():
            yield I


@pytest.mark.parametrize("expr", CORPUS)
def test_idempotents_lift_along_nil_ideals(ring, expr):
    R = ring(expr)
    E = idempotents(R)
    for I in _nil_ideals(R):
        Q, proj = quotient(R, I)
        lifted = set(proj[E].tolist())
        assert lifted == set(idempotents(Q).tolist())


@pytest.mark.parametrize("expr", CORPUS)
def test_quotient_projection_is_a_surjective_homomorphism(ring, expr):
    R = ring(expr)
    for I in _nil_ideals(R):
        Q, proj = quotient(R, I)
        assert R.cardinality == len(I) * Q.cardinality
        assert np.bincount(proj, minlength=Q.cardinality).tolist() == [len(I)] * Q.cardinality
        assert proj[R.one] == Q.one
        rng = np.random.default_rng(7)
        a = rng.integers(0, R.cardinality, 2000)
        b = rng.integers(0, R.cardinality, 2000)
        assert np.array_equal(proj[R.add_vec(a, b)], Q.add_vec(proj[a], proj[b]))
        assert np.array_equal(proj[R.mul_vec(a, b)], Q.mul_vec(proj[a], proj[b]))


def _central_nontrivial_idempotents(R):
    from nilclean.ring import center_mask

    cm = center_mask(R)
    return [int(e) for e in idempotents(R) if cm[e] and e not in (R.zero, R.one)]


@pytest.mark.parametrize("expr", [t for t in CORPUS if build_ring(t).cardinality <= 1024])
def test_peirce_split_reassembles_isomorphically(ring, expr):
    R = ring(expr)
    for e in _central_nontrivial_idempotents(R)[:2]:
        f = R.sub(R.one, e)
        A, B = central_idempotent_split(R, e)
        x = R.elements()
        pa = R.mul_vec(R.mul_vec(e, x), e)
        pb = R.mul_vec(R.mul_vec(f, x), f)
        pairs = set(zip(pa.tolist(), pb.tolist()))
        assert len(pairs) == R.cardinality == A.cardinality * B.cardinality
        rng = np.random.default_rng(3)
        a = rng.integers(0, R.cardinality, 3000)
        b = rng.integers(0, R.cardinality, 3000)
        for op in (R.add_vec, R.mul_vec):
            s = op(a, b)
            assert np.array_equal(pa[s], op(pa[a], pa[b]))
            assert np.array_equal(pb[s], op(pb[a], pb[b]))


# -- backends ---------------------------------------------------------------------------------


def _buildable_both_ways(text):
    d = build_ring(text)
    return d.cardinality <= 512 and not text.startswith(("SUB", "Q("))


BACKEND_RINGS = [t for t in CORPUS if _buildable_both_ways(t)]


@pytest.mark.parametrize("expr", BACKEND_RINGS)
def test_tabulated_and_structural_backends_agree(expr):
    T = build_ring(expr, backend="tabulated")
    S = build_ring(expr, backend="structural", verify=False)
    assert S.backend == "structural"
    n = T.cardinality
    a = np.repeat(np.arange(n), n)
    b = np.tile(np.arange(n), n)
    assert np.array_equal(T.add_vec(a, b), S.add_vec(a, b))
    assert np.array_equal(T.mul_vec(a, b), S.mul_vec(a, b))
    assert np.array_equal(T.neg_vec(np.arange(n)), S.neg_vec(np.arange(n)))
    rng = np.random.default_rng(0)
    for x, y in rng.integers(0, n, (200, 2)):
        assert T.mul(int(x), int(y)) == S.mul(int(x), int(y))
        assert T.add(int(x), int(y)) == S.add(int(x), int(y))


@pytest.mark.parametrize("expr", BACKEND_RINGS)
def test_structural_path_matches_canonical_form_arithmetic(expr):
    R = build_ring(expr)
    c = R.carrier
    rng = np.random.default_rng(1)
    for x, y in rng.integers(0, R.cardinality, (100, 2)):
        fx, fy = c.decode(int(x)), c.decode(int(y))
        assert c.encode(c.form_add(fx, fy)) == R.add(int(x), int(y))
        assert c.encode(c.form_mul(fx, fy)) == R.mul(int(x), int(y))
        assert c.encode(c.form_neg(fx)) == R.neg(int(x))


# -- property tests ----------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_ring_axioms_on_random_triples(ring, expr, data):
    R = ring(expr)
    n = R.cardinality
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(R.add(b, c), a) == R.add(R.mul(b, a), R.mul(c, a))
    assert R.add(a, R.neg(a)) == R.zero
    assert R.mul(R.one, a) == a == R.mul(a, R.one)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 40))
def test_zmod_matches_modular_arithmetic(n):
    R = zmod(n)
    assert characteristic(R) == n
    assert len(units(R)) == sum(1 for a in range(n) if np.gcd(a, n) == 1)
    assert R.mul(n - 1, n - 1) == 1


def test_matrix_ring_over_structural_base():
    base = build_ring("Z(3)", backend="structural")
    M = matrix_ring(2, base)
    assert M.cardinality == 81 and len(units(M)) == 48
