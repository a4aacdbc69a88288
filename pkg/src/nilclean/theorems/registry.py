"""Executable checks for the finitely-checkable statements, run over a corpus.

Each registry entry decides applicability from the ring descriptor, then
evaluates both sides of its statement independently and reports a verdict.
A failing verdict carries the offending element, ideal or flag mismatch.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from ..classify import report as rep
from ..classify import witness as W
from ..construct import groups as grp
from ..construct.descriptor import build_group, build_ring, parse_ring_expr
from ..construct.matrix import Matrix, cofactor, det, element_of, identity, mat_add, unit_matrix
from ..construct.rings import augmentation_ideal
from ..ring.core import DEFAULT_LIMITS, CardinalityError, FiniteRing, Limits
from ..ring.ideals import Ideal, ideal_generated, ideal_nil_index, quotient
from ..ring.structure import (
    center,
    characteristic,
    idempotents,
    jacobson_mask,
    jacobson_radical,
    nil_mask,
    nilpotency_indices,
    torsion_split,
    unit_mask,
)
from .corpus import U_3CYCLE, Corpus, CorpusEntry

DET_IDENTITY_INSTANCES = 1000
_CHUNK = 1 << 21


class UnknownTheoremError(KeyError):
    def __str__(self) -> str:
        return f"unknown theorem id {self.args[0]!r}"


@dataclass
class Outcome:
    counterexample: Optional[dict] = None
    checked: int = 0


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: str
    ring: str
    status: str  # "pass" | "fail" | "skipped"
    counterexample: Optional[dict] = None
    elapsed_ms: float = 0.0
    checked: int = 0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "theorem": self.theorem,
            "ring": self.ring,
            "status": self.status,
            "counterexample": self.counterexample,
            "checked": self.checked,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


class VerifyContext:
    """Ring and flag cache shared by checks, with optional flag mutations.

    ``mutations`` is a set of (flag, ring label) pairs whose boolean value is
    inverted; it exists to show that a check really can fail.
    """

    def __init__(self, *, mutations: Iterable[tuple[str, str]] = (), seed: int = 0,
                 limits: Limits = DEFAULT_LIMITS):
        self.mutations = frozenset(mutations)
        self.seed = seed
        self.limits = limits
        self._rings: dict[str, FiniteRing] = {}

    def ring(self, desc) -> FiniteRing:
        key = str(desc)
        if key not in self._rings:
            self._rings[key] = build_ring(parse_ring_expr(key), limits=self.limits)
        return self._rings[key]

    def flag(self, R: FiniteRing, name: str):
        value = rep.flag_value(R, name)
        if (name, R.label) in self.mutations and isinstance(value, bool):
            return not value
        return value

    def fresh(self) -> "VerifyContext":
        return VerifyContext(mutations=self.mutations, seed=self.seed, limits=self.limits)


@dataclass(frozen=True)
class Theorem:
    id: str
    statement: str
    applies: Callable[[VerifyContext, CorpusEntry], bool]
    check: Callable[[VerifyContext, CorpusEntry, FiniteRing], Outcome]


REGISTRY: dict[str, Theorem] = {}


def _register(tid: str, statement: str, applies=None):
    def deco(fn):
        REGISTRY[tid] = Theorem(tid, statement, applies or (lambda ctx, entry: True), fn)
        return fn
    return deco


# -- shared helpers ---------------------------------------------------------------


def _el(R: FiniteRing, a: int) -> dict:
    return W.element_json(R, int(a))


def _mismatch(**sides) -> Optional[dict]:
    """None when all named boolean sides agree, else a record of their values."""
    values = set(sides.values())
    return None if len(values) <= 1 else {"mismatch": dict(sides)}


def _implies(premise: bool, conclusion: bool, **sides) -> Optional[dict]:
    return None if (not premise or conclusion) else {"implication_fails": dict(sides)}


def _units(R: FiniteRing) -> np.ndarray:
    return np.flatnonzero(unit_mask(R))


def _chunks(domain: np.ndarray, width: int):
    step = max(1, _CHUNK // max(1, width))
    for start in range(0, len(domain), step):
        yield domain[start:start + step]


def _nilpotent(R: FiniteRing, a: int) -> bool:
    return bool(nil_mask(R)[a])


def _j_nil(R: FiniteRing) -> bool:
    return ideal_nil_index(jacobson_radical(R)) is not None


def _quotient_boolean(ctx: VerifyContext, R: FiniteRing) -> bool:
    return ctx.flag(rep.radical_quotient(R), "boolean") is True


def _parts(R: FiniteRing) -> dict[int, FiniteRing]:
    return dict(torsion_split(R))


def _head(entry: CorpusEntry) -> str:
    return entry.descriptor.head


def _is_head(*heads: str):
    return lambda ctx, entry: _head(entry) in heads


def _commutes(R: FiniteRing, D: np.ndarray, X: np.ndarray) -> np.ndarray:
    return R.mul_vec(D[:, None], X[None, :]) == R.mul_vec(X[None, :], D[:, None])


def _commuting_witness_exists(R: FiniteRing, D: np.ndarray) -> np.ndarray:
    """Exhaustive: some idempotent e commutes with a and a - e is nilpotent."""
    E = idempotents(R)
    nil = nil_mask(R)
    out = [(nil[R.sub_vec(P[:, None], E[None, :])] & _commutes(R, P, E)).any(axis=1)
           for P in _chunks(D, len(E))]
    return np.concatenate(out) if out else np.zeros(0, dtype=bool)


def _criterion(R: FiniteRing, D: np.ndarray) -> np.ndarray:
    return nil_mask(R)[R.sub_vec(D, R.mul_vec(D, D))]


def _nil_clean_counts(R: FiniteRing, D: np.ndarray) -> np.ndarray:
    E = idempotents(R)
    nil = nil_mask(R)
    out = [nil[R.sub_vec(P[:, None], E[None, :])].sum(axis=1) for P in _chunks(D, len(E))]
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


def _one_sided_exists(R: FiniteRing, D: np.ndarray) -> np.ndarray:
    """a = e + b with b nilpotent and eb = ebe."""
    E = idempotents(R)
    nil = nil_mask(R)
    out = []
    for P in _chunks(D, len(E)):
        B = R.sub_vec(P[:, None], E[None, :])
        eb = R.mul_vec(E[None, :], B)
        out.append((nil[B] & (eb == R.mul_vec(eb, E[None, :]))).any(axis=1))
    return np.concatenate(out) if out else np.zeros(0, dtype=bool)


def _tripotent_form(R: FiniteRing, D: np.ndarray) -> np.ndarray:
    """a = t + b with t³ = t, b nilpotent, tb = bt."""
    T = W.tripotents(R)
    nil = nil_mask(R)
    out = [(nil[R.sub_vec(P[:, None], T[None, :])] & _commutes(R, P, T)).any(axis=1)
           for P in _chunks(D, len(T))]
    return np.concatenate(out) if out else np.zeros(0, dtype=bool)


def _one_minus_square_nil(R: FiniteRing) -> bool:
    U = _units(R)
    return bool(nil_mask(R)[R.sub_vec(R.one, R.mul_vec(U, U))].all())


def _first_disagreement(R: FiniteRing, D: np.ndarray, lhs: np.ndarray, rhs: np.ndarray,
                        lhs_name: str, rhs_name: str) -> Optional[dict]:
    bad = np.flatnonzero(lhs != rhs)
    if not bad.size:
        return None
    k = int(bad[0])
    return {"element": _el(R, D[k]), lhs_name: bool(lhs[k]), rhs_name: bool(rhs[k])}


# -- units being nil-clean ------------------------------------------------


@_register("L2.3", "UNC, UU, UII, strong UII and nil-clean pass to and from finite direct sums",
           _is_head("DS"))
def _direct_sums(ctx, entry, R):
    parts = [ctx.ring(d) for d in entry.descriptor.args]
    for name in ("UNC", "UU", "UII", "strong_UII", "nil_clean_ring"):
        whole = ctx.flag(R, name)
        each = all(ctx.flag(P, name) is True for P in parts)
        if whole != each:
            return Outcome({"flag": name, "direct_sum": whole, "all_summands": each})
    return Outcome(checked=len(parts))


@_register("P2.2", "a unit is strongly nil-clean iff it lies in 1 + Nil(R); "
                   "hence UU iff every unit is strongly nil-clean")
def _unit_strongly_nil_clean(ctx, entry, R):
    U = _units(R)
    lhs = _commuting_witness_exists(R, U)
    rhs = nil_mask(R)[R.sub_vec(U, R.one)]
    cex = _first_disagreement(R, U, lhs, rhs, "strongly_nil_clean", "unipotent")
    if cex is None:
        cex = _mismatch(UU=ctx.flag(R, "UU"), all_units_strongly_nil_clean=bool(lhs.all()))
    return Outcome(cex, checked=len(U))


@_register("L2.4", "UNC implies J(R) nil and 2 in J(R)")
def _unc_radical(ctx, entry, R):
    two = R.scalar(2)
    return Outcome(_implies(ctx.flag(R, "UNC") is True, _j_nil(R) and bool(jacobson_mask(R)[two]),
                            UNC=ctx.flag(R, "UNC"), J_nil=_j_nil(R),
                            two_in_J=bool(jacobson_mask(R)[two])), checked=1)


def _nil_ideal_sample(R: FiniteRing, desc) -> list[tuple[str, Ideal]]:
    """J(R), ideals generated by a few nilpotents (kept when nil), and the augmentation ideal."""
    out: list[tuple[str, Ideal]] = [("J", jacobson_radical(R))]
    nil = np.flatnonzero(nil_mask(R))
    nil = nil[nil != R.zero]
    picks = sorted({int(nil[k]) for k in (0, len(nil) // 2, len(nil) - 1)}) if nil.size else []
    for a in picks:
        out.append((f"<{R.literal(a)}>", ideal_generated(R, [a])))
    if desc.head == "GR":
        out.append(("augmentation", augmentation_ideal(R)))
    seen, kept = set(), []
    for name, I in out:
        key = I.mask.tobytes()
        if key in seen or ideal_nil_index(I) is None:
            continue
        seen.add(key)
        kept.append((name, I))
    return kept


@_register("T2.5", "for a nil ideal I, R is UNC iff R/I is UNC; "
                   "R is UNC iff J(R) is nil and R/J(R) is UNC")
def _nil_ideal_quotients(ctx, entry, R):
    unc = ctx.flag(R, "UNC")
    ideals = _nil_ideal_sample(R, entry.descriptor)
    for name, I in ideals:
        Q = rep.radical_quotient(R) if name == "J" else quotient(R, I, label=f"{R.label}/{name}")[0]
        q = ctx.flag(Q, "UNC")
        if q != unc:
            return Outcome({"ideal": name, "ideal_size": len(I), "UNC(R)": unc, "UNC(R/I)": q})
    cex = _mismatch(UNC=unc, J_nil_and_quotient_UNC=_j_nil(R)
                    and ctx.flag(rep.radical_quotient(R), "UNC") is True)
    return Outcome(cex, checked=len(ideals))


def _c26_sides(ctx, desc) -> Optional[tuple[str, bool]]:
    h, a = desc.head, desc.args
    if h in ("TE", "T"):
        base = a[0] if h == "TE" else a[1]
        return f"UNC({base})", ctx.flag(ctx.ring(base), "UNC") is True
    if h == "TP" and a[1] >= 2:
        return f"UNC({a[0]})", ctx.flag(ctx.ring(a[0]), "UNC") is True
    if h == "BT":
        n, m = a[1], a[2]
        left, right = f"M({n},{a[0]})", f"M({m},{a[0]})"
        ok = all(ctx.flag(ctx.ring(d), "UNC") is True for d in (left, right))
        return f"UNC({left}) and UNC({right})", ok
    if h == "EX27":
        left, right = f"M({a[0]},Z(2))", f"TP(Z(2),{a[1]})"
        ok = all(ctx.flag(ctx.ring(d), "UNC") is True for d in (left, right))
        return f"UNC({left}) and UNC({right})", ok
    return None


@_register("C2.6", "trivial extensions, truncated polynomial rings, formal triangular and "
                   "upper triangular matrix rings are UNC iff their coefficient rings are",
           lambda ctx, entry: _head(entry) in ("TE", "T", "BT", "EX27")
           or (_head(entry) == "TP" and entry.descriptor.args[1] >= 2))
def _constructions(ctx, entry, R):
    name, rhs = _c26_sides(ctx, entry.descriptor)
    return Outcome(_mismatch(UNC=ctx.flag(R, "UNC"), **{name: rhs}), checked=1)


@_register("EX2.7", "the truncated formal triangular ring is UNC but not UU",
           lambda ctx, entry: _head(entry) == "EX27" and entry.descriptor.args[0] >= 2)
def _ex27(ctx, entry, R):
    unc, uu = ctx.flag(R, "UNC"), ctx.flag(R, "UU")
    return Outcome(None if (unc is True and uu is False) else {"UNC": unc, "UU": uu}, checked=1)


@_register("L2.8", "a is strongly nil-clean iff a - a^2 is nilpotent")
def _strongly_nil_clean_elements(ctx, entry, R):
    x = R.elements()
    cex = _first_disagreement(R, x, _criterion(R, x), _commuting_witness_exists(R, x),
                              "a_minus_a2_nilpotent", "commuting_witness")
    return Outcome(cex, checked=len(x))


@_register("C2.9", "nil-clean R has strongly nil-clean center; UNC R has UU center")
def _center_inheritance(ctx, entry, R):
    C = center(R).ring
    cex = _implies(ctx.flag(R, "nil_clean_ring") is True,
                   ctx.flag(C, "strongly_nil_clean_ring") is True,
                   nil_clean=ctx.flag(R, "nil_clean_ring"),
                   center_strongly_nil_clean=ctx.flag(C, "strongly_nil_clean_ring"))
    if cex is None:
        cex = _implies(ctx.flag(R, "UNC") is True, ctx.flag(C, "UU") is True,
                       UNC=ctx.flag(R, "UNC"), center_UU=ctx.flag(C, "UU"))
    return Outcome(cex, checked=C.cardinality)


@_register("C2.10", "strongly nil-clean (resp. UU) iff every element (resp. unit) is e + b "
                    "with eb = ebe; elementwise when 2 is in J(R)")
def _one_sided(ctx, entry, R):
    x = R.elements()
    one_sided = _one_sided_exists(R, x)
    U = unit_mask(R)
    cex = _mismatch(strongly_nil_clean=ctx.flag(R, "strongly_nil_clean_ring"),
                    all_elements_one_sided=bool(one_sided.all()))
    if cex is None:
        cex = _mismatch(UU=ctx.flag(R, "UU"), all_units_one_sided=bool(one_sided[U].all()))
    if cex is None and jacobson_mask(R)[R.scalar(2)]:
        cex = _first_disagreement(R, x, _criterion(R, x), one_sided,
                                  "strongly_nil_clean", "one_sided_decomposition")
    return Outcome(cex, checked=len(x))


@_register("T2.11", "for 2-primal R: UU iff UNC iff (J(R) = Nil(R) and U(R) = 1 + J(R))",
           lambda ctx, entry: ctx.flag(ctx.ring(entry.descriptor), "two_primal") is True)
def _two_primal(ctx, entry, R):
    J = jacobson_mask(R)
    rhs = bool(np.array_equal(J, nil_mask(R))) and ctx.flag(R, "U_eq_1_plus_J") is True
    return Outcome(_mismatch(UU=ctx.flag(R, "UU"), UNC=ctx.flag(R, "UNC"),
                             J_eq_Nil_and_U_eq_1_plus_J=rhs), checked=1)


@_register("L2.13", "over a field F with at least 3 elements, diag(a, 0, ..., 0) with "
                    "a not in {0, 1} is not nil-clean in M_n(F)",
           lambda ctx, entry: _head(entry) == "M" and _is_field(ctx.ring(entry.descriptor.args[1]))
           and ctx.ring(entry.descriptor.args[1]).cardinality >= 3)
def _diag_not_nil_clean(ctx, entry, R):
    n = entry.descriptor.args[0]
    F = ctx.ring(entry.descriptor.args[1])
    checked = 0
    for a in range(F.cardinality):
        if a in (F.zero, F.one):
            continue
        A = element_of(R, unit_matrix(F, n, 0, 0, a))
        found = W.nil_clean_witnesses(R, A, 1)
        checked += 1
        if found:
            return Outcome({"element": _el(R, A), "witness": found[0].as_dict(R)})
    return Outcome(checked=checked)


def _is_field(F: FiniteRing) -> bool:
    return F.is_commutative() and int(unit_mask(F).sum()) == F.cardinality - 1


@_register("T2.14", "for finite R: UNC iff nil-clean iff (J(R) nil and R/J(R) is a product "
                    "of matrix rings over F2)")
def _semilocal(ctx, entry, R):
    rhs = _j_nil(R) and ctx.flag(R, "center_of_R_mod_J_boolean") is True
    return Outcome(_mismatch(UNC=ctx.flag(R, "UNC"), nil_clean=ctx.flag(R, "nil_clean_ring"),
                             J_nil_and_R_mod_J_over_F2=rhs), checked=1)


@_register("T2.23", "UU iff every unit is uniquely nil-clean")
def _uniquely(ctx, entry, R):
    U = _units(R)
    counts = _nil_clean_counts(R, U)
    return Outcome(_mismatch(UU=ctx.flag(R, "UU"), units_uniquely_nil_clean=bool((counts == 1).all())),
                   checked=len(U))


@_register("EX2.24", "in M3(F2), A + A^T is an idempotent and I - A has at least two "
                     "nil-clean decompositions, one with idempotent I - (A + A^T)",
           lambda ctx, entry: str(entry.descriptor) == "M(3,Z(2))")
def _not_uniquely(ctx, entry, R):
    F = R.carrier.base
    o, z = F.one, F.zero
    A = element_of(R, Matrix.of([[z, o, o], [z, z, o], [z, z, z]]))
    B = element_of(R, Matrix.of([[z, z, z], [o, z, z], [o, o, z]]))
    E = R.add(A, B)
    I = element_of(R, identity(F, 3))
    U = R.sub(I, A)
    I_minus_E = R.sub(I, E)
    idem = {int(w.e) for w in W.nil_clean_witnesses(R, U)}
    facts = {
        "A_nilpotent": _nilpotent(R, A),
        "B_nilpotent": _nilpotent(R, B),
        "E_idempotent_nonzero": R.mul(E, E) == E and E != R.zero,
        "U_unit": bool(unit_mask(R)[U]),
        "U_unipotent": _nilpotent(R, R.sub(U, R.one)),
        "U_eq_(I-E)+B": R.add(I_minus_E, B) == U,
        "I-E_is_witness": I_minus_E in idem,
        "two_distinct_idempotents": len(idem) >= 2,
    }
    bad = {k: v for k, v in facts.items() if not v}
    return Outcome({"failed": sorted(bad), "witness_count": len(idem)} if bad else None,
                   checked=len(idem))


@_register("T2.25", "strongly nil-clean iff semipotent and UU")
def _semipotent_uu(ctx, entry, R):
    rhs = ctx.flag(R, "semipotent") is True and ctx.flag(R, "UU") is True
    return Outcome(_mismatch(strongly_nil_clean=ctx.flag(R, "strongly_nil_clean_ring"),
                             semipotent_and_UU=rhs), checked=1)


@_register("C2.26", "semipotent with U(R) = {1} iff Boolean")
def _boolean(ctx, entry, R):
    lhs = ctx.flag(R, "semipotent") is True and ctx.flag(R, "U_eq_1") is True
    return Outcome(_mismatch(semipotent_and_U_eq_1=lhs, boolean=ctx.flag(R, "boolean")), checked=1)


# -- matrix rings ----------------------------------------------------------------


def _det_identity_instances(ctx: VerifyContext, R: FiniteRing, count: int):
    rng = np.random.default_rng([ctx.seed, zlib.crc32(R.label.encode())])
    for k in range(count):
        n = 2 + k % 3
        A = Matrix.of(rng.integers(0, R.cardinality, (n, n)).tolist())
        x = int(rng.integers(0, R.cardinality))
        i, j = (int(v) for v in rng.integers(0, n, 2))
        yield A, x, i, j


@_register("L3.1", "over a commutative ring, det(x E_ij + A) = x A_ij + det(A) "
                   "(randomized, seeded)",
           lambda ctx, entry: ctx.ring(entry.descriptor).is_commutative())
def _det_cofactor(ctx, entry, R):
    for A, x, i, j in _det_identity_instances(ctx, R, DET_IDENTITY_INSTANCES):
        lhs = det(R, mat_add(R, unit_matrix(R, A.n, i, j, x), A))
        rhs = R.add(R.mul(x, cofactor(R, A, i, j)), det(R, A))
        if lhs != rhs:
            return Outcome({"A": [list(r) for r in A.entries], "x": x, "i": i, "j": j,
                            "lhs": lhs, "rhs": rhs})
    return Outcome(checked=DET_IDENTITY_INSTANCES)


def _commutative_matrix_entry(ctx, entry) -> bool:
    d = entry.descriptor
    return d.head == "M" and d.args[0] >= 2 and ctx.ring(d.args[1]).is_commutative()


@_register("T3.2", "for commutative R and n >= 2: M_n(R) is UNC iff J(R) nil and R/J(R) Boolean",
           _commutative_matrix_entry)
def _matrix_unc(ctx, entry, R):
    base = ctx.ring(entry.descriptor.args[1])
    rhs = _j_nil(base) and _quotient_boolean(ctx, base)
    return Outcome(_mismatch(UNC=ctx.flag(R, "UNC"), base_J_nil_and_quotient_boolean=rhs),
                   checked=1)


@_register("EX3.4", "the unital subring of M3(F2) generated by the 3-cycle u is the 8-element "
                    "set {a + bu + cu^2}, reduced, u is not nil-clean, so it is not UNC "
                    "while M3(F2) is",
           lambda ctx, entry: entry.descriptor == parse_ring_expr(f"SUB(M(3,Z(2));{U_3CYCLE})"))
def _generated_subring(ctx, entry, R):
    parent = ctx.ring(entry.descriptor.args[0])
    members = R.carrier.members
    u_parent = parent.carrier.from_literal(entry.descriptor.elems[0])
    u = int(np.searchsorted(members, u_parent))
    u2 = parent.mul(u_parent, u_parent)
    listing = set()
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                v = parent.zero
                for coeff, term in ((a, parent.one), (b, u_parent), (c, u2)):
                    if coeff:
                        v = parent.add(v, term)
                listing.add(v)
    facts = {
        "eight_listed_elements": len(listing) == 8 and listing == {int(m) for m in members},
        "reduced": ctx.flag(R, "reduced") is True,
        "u_squared_ne_u": R.mul(u, u) != u,
        "u_not_nil_clean": not W.nil_clean_witnesses(R, u),
        "not_UNC": ctx.flag(R, "UNC") is False,
        "ambient_UNC": ctx.flag(parent, "UNC") is True,
    }
    bad = sorted(k for k, v in facts.items() if not v)
    return Outcome({"failed": bad} if bad else None, checked=R.cardinality)


# -- units as sums of a nilpotent and two idempotents ---------------------


def _six_nilpotent(R: FiniteRing) -> bool:
    return _nilpotent(R, R.scalar(6))


@_register("L3.2'", "strong UNII iff R = A + B with A, B strong UNII, 2 nilpotent in J(A) "
                    "and 3 nilpotent in J(B)")
def _strong_unii_split(ctx, entry, R):
    lhs = ctx.flag(R, "strong_UNII") is True
    rhs = _six_nilpotent(R)
    parts = _parts(R) if rhs else {}
    for p, P in parts.items():
        pe = P.scalar(p)
        rhs &= p in (2, 3) and _nilpotent(P, pe) and bool(jacobson_mask(P)[pe]) \
            and ctx.flag(P, "strong_UNII") is True
    cex = _mismatch(strong_UNII=lhs, splits_into_2_and_3_parts=bool(rhs))
    if cex is None and lhs and not _six_nilpotent(R):
        cex = {"strong_UNII": True, "six_nilpotent": False}
    return Outcome(cex, checked=max(1, len(parts)))


def _applies_nilpotent_scalar(k: int):
    return lambda ctx, entry: _nilpotent(ctx.ring(entry.descriptor),
                                         ctx.ring(entry.descriptor).scalar(k))


@_register("L3.3'", "with 2 nilpotent: strong UNII iff every unit is a commuting "
                    "nilpotent-plus-tripotent iff UU", _applies_nilpotent_scalar(2))
def _char2_unii(ctx, entry, R):
    U = _units(R)
    return Outcome(_mismatch(strong_UNII=ctx.flag(R, "strong_UNII"),
                             units_nilpotent_plus_tripotent=bool(_tripotent_form(R, U).all()),
                             UU=ctx.flag(R, "UU")), checked=len(U))


@_register("L3.4'", "with 3 nilpotent: strong UNII iff every unit is a commuting "
                    "nilpotent-plus-tripotent iff 1 - u^2 is nilpotent for all units",
           _applies_nilpotent_scalar(3))
def _char3_unii(ctx, entry, R):
    U = _units(R)
    return Outcome(_mismatch(strong_UNII=ctx.flag(R, "strong_UNII"),
                             units_nilpotent_plus_tripotent=bool(_tripotent_form(R, U).all()),
                             one_minus_u2_nilpotent=_one_minus_square_nil(R)), checked=len(U))


def _type_b(R: FiniteRing) -> bool:
    return _one_minus_square_nil(R) and _nilpotent(R, R.scalar(3))


@_register("T3.5", "strong UNII iff (1 - u^2 nilpotent for all units and 6 nilpotent) iff "
                   "R is UU, or of the 3-nilpotent type, or a sum of one of each")
def _strong_unii(ctx, entry, R):
    cond2 = _one_minus_square_nil(R) and _six_nilpotent(R)
    parts = _parts(R)
    mixed = (set(parts) == {2, 3} and ctx.flag(parts[2], "UU") is True and _type_b(parts[3]))
    cond3 = ctx.flag(R, "UU") is True or _type_b(R) or mixed
    return Outcome(_mismatch(strong_UNII=ctx.flag(R, "strong_UNII"),
                             units_and_six=cond2, typed_decomposition=bool(cond3)), checked=1)


@_register("T3.6", "semipotent strong UNII iff R = A + B with A/J(A) Boolean, J(A) nil, "
                   "and B/J(B) of characteristic 3 with x^3 = x, J(B) nil")
def _semipotent_unii(ctx, entry, R):
    lhs = ctx.flag(R, "semipotent") is True and ctx.flag(R, "strong_UNII") is True
    parts = _parts(R)
    rhs = set(parts) <= {2, 3}
    if rhs and 2 in parts:
        A = parts[2]
        rhs = _j_nil(A) and _quotient_boolean(ctx, A)
    if rhs and 3 in parts:
        B = parts[3]
        rhs = _j_nil(B) and ctx.flag(rep.radical_quotient(B), "subdirect_Z3") is True
    return Outcome(_mismatch(semipotent_strong_UNII=lhs, split_boolean_and_Z3=bool(rhs)),
                   checked=len(parts))


@_register("C3.6", "strongly 2-nil-clean iff semipotent strong UNII")
def _strongly_2_nil_clean(ctx, entry, R):
    rhs = ctx.flag(R, "semipotent") is True and ctx.flag(R, "strong_UNII") is True
    return Outcome(_mismatch(strongly_2_nil_clean=ctx.flag(R, "strongly_2_nil_clean"),
                             semipotent_strong_UNII=rhs), checked=1)


# -- units as sums of two idempotents --------------------------------------


@_register("L3.9", "UII iff R = A + B with A, B UII, 2 = 0 in A and 3 = 0 in B")
def _uii_split(ctx, entry, R):
    rhs = R.scalar(6) == R.zero
    parts = _parts(R) if rhs else {}
    for p, P in parts.items():
        rhs &= characteristic(P) == p and ctx.flag(P, "UII") is True
    return Outcome(_mismatch(UII=ctx.flag(R, "UII"), splits_char_2_and_3=bool(rhs)),
                   checked=max(1, len(parts)))


@_register("L3.10", "strong UII with characteristic 2 iff U(R) = {1}")
def _char2_uii(ctx, entry, R):
    lhs = ctx.flag(R, "strong_UII") is True and characteristic(R) == 2
    return Outcome(_mismatch(strong_UII_char_2=lhs, U_eq_1=ctx.flag(R, "U_eq_1")), checked=1)


@_register("L3.11", "strong UII with characteristic 3 iff U(R) = 1 + idem(R)")
def _char3_uii(ctx, entry, R):
    lhs = ctx.flag(R, "strong_UII") is True and characteristic(R) == 3
    return Outcome(_mismatch(strong_UII_char_3=lhs,
                             U_eq_1_plus_idem=ctx.flag(R, "U_eq_1_plus_idem")), checked=1)


@_register("T3.12", "strong UII iff U(R) = {1}, or U(R) = 1 + idem(R), or R = A + B with "
                    "U(A) = {1} and U(B) = 1 + idem(B)")
def _strong_uii(ctx, entry, R):
    parts = _parts(R)
    split = (set(parts) == {2, 3} and ctx.flag(parts[2], "U_eq_1") is True
             and ctx.flag(parts[3], "U_eq_1_plus_idem") is True)
    rhs = ctx.flag(R, "U_eq_1") is True or ctx.flag(R, "U_eq_1_plus_idem") is True or split
    return Outcome(_mismatch(strong_UII=ctx.flag(R, "strong_UII"), unit_group_types=bool(rhs)),
                   checked=1)


@_register("C3.13", "strong UII implies J(R) = 0 and Nil(R) = 0")
def _strong_uii_reduced(ctx, entry, R):
    J0 = len(jacobson_radical(R)) == 1
    nil0 = int(nil_mask(R).sum()) == 1
    return Outcome(_implies(ctx.flag(R, "strong_UII") is True, J0 and nil0,
                            strong_UII=ctx.flag(R, "strong_UII"), J_zero=J0, Nil_zero=nil0),
                   checked=1)


# -- group rings -----------------------------------------------------------------------


def _group_of(entry: CorpusEntry) -> grp.FiniteGroup:
    return build_group(entry.descriptor.args[1])


def _base_of(ctx: VerifyContext, entry: CorpusEntry) -> FiniteRing:
    return ctx.ring(entry.descriptor.args[0])


@_register("P3.15", "for nontrivial G: RG is strong UII iff U(R) = 1 + idem(R) and G has "
                    "exponent 2",
           lambda ctx, entry: _head(entry) == "GR" and _group_of(entry).order > 1)
def _group_ring_uii(ctx, entry, R):
    base, G = _base_of(ctx, entry), _group_of(entry)
    rhs = ctx.flag(base, "U_eq_1_plus_idem") is True and grp.exponent(G) == 2
    return Outcome(_mismatch(strong_UII=ctx.flag(R, "strong_UII"),
                             base_U_eq_1_plus_idem_and_exponent_2=rhs), checked=1)


@_register("P4.1/T4.3", "for finite nilpotent G: RG is UNC iff R is UNC and G is a 2-group; "
                        "then the augmentation ideal is nilpotent",
           lambda ctx, entry: _head(entry) == "GR" and grp.is_nilpotent_group(_group_of(entry)))
def _group_ring_unc(ctx, entry, R):
    base, G = _base_of(ctx, entry), _group_of(entry)
    rhs = ctx.flag(base, "UNC") is True and grp.is_p_group(G, 2)
    cex = _mismatch(UNC=ctx.flag(R, "UNC"), base_UNC_and_2_group=rhs)
    if cex is None and rhs:
        index = ideal_nil_index(augmentation_ideal(R))
        if index is None:
            cex = {"augmentation_ideal_nilpotent": False}
    return Outcome(cex, checked=1)


@_register("T4.2", "RG UNC implies R UNC and the hypercenter of G is a 2-group",
           _is_head("GR"))
def _hypercenter(ctx, entry, R):
    base, G = _base_of(ctx, entry), _group_of(entry)
    H = grp.hypercenter(G)
    concl = ctx.flag(base, "UNC") is True and grp.subset_is_p_group(G, H, 2)
    return Outcome(_implies(ctx.flag(R, "UNC") is True, concl, UNC=ctx.flag(R, "UNC"),
                            base_UNC=ctx.flag(base, "UNC"), hypercenter_order=len(H)), checked=1)


@_register("T4.4", "RG is UU iff R is UU and G is a 2-group (finite G)", _is_head("GR"))
def _group_ring_uu(ctx, entry, R):
    base, G = _base_of(ctx, entry), _group_of(entry)
    rhs = ctx.flag(base, "UU") is True and grp.is_p_group(G, 2)
    return Outcome(_mismatch(UU=ctx.flag(R, "UU"), base_UU_and_2_group=rhs), checked=1)


# -- running -------------------------------------------------------------------------


def theorem_ids() -> list[str]:
    return list(REGISTRY)


def _run(ctx: VerifyContext, thm: Theorem, entry: CorpusEntry) -> Optional[TheoremVerdict]:
    t0 = time.perf_counter()
    label = entry.text
    try:
        if not thm.applies(ctx, entry):
            return None
        out = thm.check(ctx, entry, ctx.ring(entry.descriptor))
    except CardinalityError as exc:
        return TheoremVerdict(thm.id, label, "skipped", {"reason": str(exc)},
                              (time.perf_counter() - t0) * 1e3)
    status = "pass" if out.counterexample is None else "fail"
    return TheoremVerdict(thm.id, label, status, out.counterexample,
                          (time.perf_counter() - t0) * 1e3, out.checked)


def verify(theorem_id: str, corpus: Corpus, ctx: Optional[VerifyContext] = None
           ) -> list[TheoremVerdict]:
    """Run one registry entry on every applicable ring of the corpus."""
    if theorem_id not in REGISTRY:
        raise UnknownTheoremError(theorem_id)
    ctx = ctx or VerifyContext()
    thm = REGISTRY[theorem_id]
    return [v for v in (_run(ctx, thm, e) for e in corpus) if v is not None]


def recheck(verdict: TheoremVerdict, ctx: Optional[VerifyContext] = None) -> TheoremVerdict:
    """Re-run a single verdict from scratch (fresh rings and caches)."""
    ctx = (ctx or VerifyContext()).fresh()
    entry = Corpus.from_texts([verdict.ring]).entries[0]
    out = _run(ctx, REGISTRY[verdict.theorem], entry)
    if out is None:
        raise ValueError(f"{verdict.theorem} does not apply to {verdict.ring}")
    return out


@dataclass
class VerificationSummary:
    verdicts: list[TheoremVerdict] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for v in self.verdicts:
            out[v.status] += 1
        return out

    @property
    def failures(self) -> list[TheoremVerdict]:
        return [v for v in self.verdicts if v.status == "fail"]

    def slowest(self, k: int = 5) -> list[TheoremVerdict]:
        return sorted(self.verdicts, key=lambda v: -v.elapsed_ms)[:k]

    def as_dict(self) -> dict:
        per = {}
        for v in self.verdicts:
            per.setdefault(v.theorem, {"pass": 0, "fail": 0, "skipped": 0})[v.status] += 1
        return {
            "total": len(self.verdicts),
            "counts": self.counts,
            "per_theorem": per,
            "slowest": [{"theorem": v.theorem, "ring": v.ring, "elapsed_ms": round(v.elapsed_ms, 3)}
                        for v in self.slowest()],
        }


def verify_all(corpus: Corpus, ctx: Optional[VerifyContext] = None,
               ids: Optional[Iterable[str]] = None) -> VerificationSummary:
    ctx = ctx or VerifyContext()
    summary = VerificationSummary()
    for tid in (list(ids) if ids is not None else theorem_ids()):
        summary.verdicts.extend(verify(tid, corpus, ctx))
    return summary
