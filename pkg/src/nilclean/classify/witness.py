"""Element-level decompositions into idempotents and nilpotents, with certificates.

Every search runs over the idempotents in canonical (index) order and tests
nilpotency against the ring's cached nilpotent mask, so the cost per element
is linear in the number of idempotents (quadratic for two-idempotent sums).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..ring.core import FiniteRing
from ..ring.structure import (
    idempotents,
    nil_mask,
    nilpotency_indices,
    unit_mask,
)


@dataclass(frozen=True)
class NilCleanWitness:
    """a = e + b (+ f), with e (and f) idempotent and b nilpotent of index nil_index."""

    e: int
    b: int
    nil_index: int
    commuting: bool
    extra_idempotent: Optional[int] = None
    pairwise_commuting: Optional[bool] = None

    def total(self, R: FiniteRing) -> int:
        s = R.add(self.e, self.b)
        return s if self.extra_idempotent is None else R.add(s, self.extra_idempotent)

    def validate(self, R: FiniteRing, a: int) -> None:
        """Re-check every claim; raises AssertionError on a false certificate."""
        ok = R.mul(self.e, self.e) == self.e and self.total(R) == a
        ok &= nilpotency_indices(R)[self.b] == self.nil_index > 0
        ok &= self.commuting == (R.mul(self.e, self.b) == R.mul(self.b, self.e))
        f = self.extra_idempotent
        if f is not None:
            ok &= R.mul(f, f) == f
            ok &= self.pairwise_commuting == _pairwise_commute(R, (self.e, f, self.b))
        if not ok:
            raise AssertionError(f"invalid witness {self} for {R.literal(a)} in {R.label}")

    def as_dict(self, R: FiniteRing) -> dict:
        out = {"e": element_json(R, self.e), "b": element_json(R, self.b),
               "nil_index": self.nil_index, "commuting": self.commuting}
        if self.extra_idempotent is not None:
            out["f"] = element_json(R, self.extra_idempotent)
            out["pairwise_commuting"] = self.pairwise_commuting
        return out


@dataclass(frozen=True)
class TripotentWitness:
    """a = t + b with t³ = t, b nilpotent, tb = bt."""

    t: int
    b: int
    nil_index: int

    def as_dict(self, R: FiniteRing) -> dict:
        return {"t": element_json(R, self.t), "b": element_json(R, self.b),
                "nil_index": self.nil_index}


@dataclass(frozen=True)
class ElementProfile:
    element: int
    is_unit: bool
    is_idempotent: bool
    is_nilpotent: bool
    nil_index: int  # 0 when not nilpotent
    is_unipotent: bool
    is_tripotent: bool
    nil_clean_witness_count: int
    strongly_nil_clean: bool
    uniquely_nil_clean: bool

    def as_dict(self, R: FiniteRing) -> dict:
        return {
            "element": element_json(R, self.element),
            "is_unit": self.is_unit,
            "is_idempotent": self.is_idempotent,
            "is_nilpotent": self.is_nilpotent,
            "nil_index": self.nil_index,
            "is_unipotent": self.is_unipotent,
            "is_tripotent": self.is_tripotent,
            "nil_clean_witness_count": self.nil_clean_witness_count,
            "strongly_nil_clean": self.strongly_nil_clean,
            "uniquely_nil_clean": self.uniquely_nil_clean,
        }


def element_json(R: FiniteRing, a: int) -> dict:
    a = int(a)
    return {"index": a, "literal": R.literal(a)}


def _pairwise_commute(R: FiniteRing, xs) -> bool:
    return all(R.mul(x, y) == R.mul(y, x) for i, x in enumerate(xs) for y in xs[i + 1:])


def _commutes_with(R: FiniteRing, a: int, xs: np.ndarray) -> np.ndarray:
    return R.mul_vec(a, xs) == R.mul_vec(xs, a)


def _witness(R: FiniteRing, a: int, e: int, f: Optional[int] = None) -> NilCleanWitness:
    b = R.sub(a, e) if f is None else R.sub(R.sub(a, e), f)
    commuting = R.mul(e, b) == R.mul(b, e)
    return NilCleanWitness(
        e=int(e), b=int(b), nil_index=int(nilpotency_indices(R)[b]), commuting=bool(commuting),
        extra_idempotent=None if f is None else int(f),
        pairwise_commuting=None if f is None else _pairwise_commute(R, (e, f, b)),
    )


def nil_clean_idempotents(R: FiniteRing, a: int) -> np.ndarray:
    """All idempotents e (canonical order) with a - e nilpotent."""
    E = idempotents(R)
    return E[nil_mask(R)[R.sub_vec(a, E)]]


def nil_clean_witnesses(R: FiniteRing, a: int, limit: Optional[int] = None) -> list[NilCleanWitness]:
    """One witness (e, a - e) per idempotent e with a - e nilpotent, at most ``limit``."""
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")
    hits = nil_clean_idempotents(R, a)
    if limit is not None:
        hits = hits[:limit]
    return [_witness(R, a, int(e)) for e in hits]


def commuting_nil_clean_witness(R: FiniteRing, a: int) -> Optional[NilCleanWitness]:
    """First idempotent e commuting with a and leaving a - e nilpotent (exhaustive)."""
    E = idempotents(R)
    ok = nil_mask(R)[R.sub_vec(a, E)] & _commutes_with(R, a, E)
    hits = np.flatnonzero(ok)
    return _witness(R, a, int(E[hits[0]])) if hits.size else None


def strongly_nil_clean_criterion(R: FiniteRing, a: int) -> bool:
    """a - a² nilpotent."""
    return bool(nil_mask(R)[R.sub(a, R.mul(a, a))])


def strongly_nil_clean_elem(R: FiniteRing, a: int) -> Optional[NilCleanWitness]:
    """Commuting nil-clean witness for a, or None; cross-checked against a - a² nilpotent."""
    fast = strongly_nil_clean_criterion(R, a)
    found = commuting_nil_clean_witness(R, a)
    if fast != (found is not None):
        raise AssertionError(
            f"{R.label}: a - a^2 criterion and witness search disagree at {R.literal(a)}"
        )
    return found


def _idempotent_pairs(R: FiniteRing) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(E, sums[i, j] = E[i] + E[j], commute[i, j])."""
    def compute():
        E = idempotents(R)
        sums = R.add_vec(E[:, None], E[None, :])
        commute = R.mul_vec(E[:, None], E[None, :]) == R.mul_vec(E[None, :], E[:, None])
        return E, sums, commute
    return R.cached("classify.idempotent_pairs", compute)


def _pair_mask(R: FiniteRing, a: int, require_commuting: bool, with_nilpotent: bool) -> np.ndarray:
    E, sums, commute = _idempotent_pairs(R)
    if with_nilpotent:
        ok = nil_mask(R)[R.sub_vec(a, sums)]
    else:
        ok = sums == a
    if require_commuting:
        # b = a - e - f commutes with e and f exactly when a does
        c = _commutes_with(R, a, E)
        ok = ok & commute & c[:, None] & c[None, :]
    return ok


def _first_pair(R: FiniteRing, a: int, mask: np.ndarray) -> Optional[NilCleanWitness]:
    hits = np.flatnonzero(mask.ravel())
    if not hits.size:
        return None
    E = idempotents(R)
    i, j = divmod(int(hits[0]), len(E))
    return _witness(R, a, int(E[i]), int(E[j]))


def sum_nilpotent_two_idem(R: FiniteRing, a: int, require_commuting: bool = False
                           ) -> Optional[NilCleanWitness]:
    """a = e + f + b with e, f idempotent, b nilpotent; pairwise commuting if required."""
    return _first_pair(R, a, _pair_mask(R, a, require_commuting, with_nilpotent=True))


def sum_two_idem(R: FiniteRing, a: int, require_commuting: bool = False) -> Optional[NilCleanWitness]:
    """a = e + f with e, f idempotent (commuting if required)."""
    return _first_pair(R, a, _pair_mask(R, a, require_commuting, with_nilpotent=False))


def tripotents(R: FiniteRing) -> np.ndarray:
    def compute():
        x = R.elements()
        return np.flatnonzero(R.mul_vec(R.mul_vec(x, x), x) == x)
    return R.cached("tripotents", compute)


def nilpotent_tripotent_witness(R: FiniteRing, a: int) -> Optional[TripotentWitness]:
    """a = t + b with t tripotent, b nilpotent, tb = bt (first t in canonical order)."""
    T = tripotents(R)
    ok = nil_mask(R)[R.sub_vec(a, T)] & _commutes_with(R, a, T)
    hits = np.flatnonzero(ok)
    if not hits.size:
        return None
    t = int(T[hits[0]])
    b = R.sub(a, t)
    return TripotentWitness(t, b, int(nilpotency_indices(R)[b]))


def one_sided_nil_clean_witness(R: FiniteRing, a: int) -> Optional[NilCleanWitness]:
    """a = e + b with b nilpotent and eb = ebe."""
    E = idempotents(R)
    B = R.sub_vec(a, E)
    eb = R.mul_vec(E, B)
    ok = nil_mask(R)[B] & (eb == R.mul_vec(eb, E))
    hits = np.flatnonzero(ok)
    return _witness(R, a, int(E[hits[0]])) if hits.size else None


def element_profile(R: FiniteRing, a: int) -> ElementProfile:
    a = int(a)
    ind = int(nilpotency_indices(R)[a])
    a2 = R.mul(a, a)
    count = len(nil_clean_idempotents(R, a))
    return ElementProfile(
        element=a,
        is_unit=bool(unit_mask(R)[a]),
        is_idempotent=a2 == a,
        is_nilpotent=ind > 0,
        nil_index=ind,
        is_unipotent=bool(nil_mask(R)[R.sub(a, R.one)]),
        is_tripotent=R.mul(a2, a) == a,
        nil_clean_witness_count=count,
        strongly_nil_clean=strongly_nil_clean_elem(R, a) is not None,
        uniquely_nil_clean=count == 1,
    )
