"""Cached structure sets: units, idempotents, nilpotents, center, radical."""

from __future__ import annotations

import numpy as np

from .core import AxiomError, FiniteRing, RingError
from .ideals import Ideal, IdealError, Subring, induced_ring, make_subring


def characteristic(R: FiniteRing) -> int:
    """Additive order of 1."""
    def compute():
        x, k = R.one, 1
        while x != R.zero:
            x = R.add(x, R.one)
            k += 1
        return k
    return R.cached("characteristic", compute)


def unit_inverses(R: FiniteRing) -> np.ndarray:
    """Array ``inv`` with ``inv[a]`` the inverse of a, or -1 for non-units."""
    def compute():
        n, one = R.cardinality, R.one
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            # left inverse first, then confirm it is two-sided
            hits = np.flatnonzero(R.mul_col(a) == one)
            if hits.size:
                b = int(hits[0])
                if R.mul(a, b) != one:
                    raise AxiomError(f"{R.label}: left inverse of {R.literal(a)} is not a right inverse")
                inv[a] = b
        return inv
    return R.cached("unit_inverses", compute)


def unit_mask(R: FiniteRing) -> np.ndarray:
    return R.cached("unit_mask", lambda: unit_inverses(R) >= 0)


def units(R: FiniteRing) -> dict[int, int]:
    """The unit group as a map unit -> inverse, in canonical order."""
    inv = unit_inverses(R)
    return {int(a): int(inv[a]) for a in np.flatnonzero(inv >= 0)}


def idempotent_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        x = R.elements()
        return R.mul_vec(x, x) == x
    return R.cached("idempotent_mask", compute)


def idempotents(R: FiniteRing) -> np.ndarray:
    return R.cached("idempotents", lambda: np.flatnonzero(idempotent_mask(R)))


def _nil_index(R: FiniteRing, a: int) -> int:
    p, k, seen = a, 1, set()
    while True:
        if p == R.zero:
            return k
        if p in seen:
            return 0
        seen.add(p)
        p = R.mul(p, a)
        k += 1


def nilpotency_indices(R: FiniteRing) -> np.ndarray:
    """Array of nilpotency indices, 0 marking non-nilpotent elements."""
    def compute():
        return np.array([_nil_index(R, a) for a in range(R.cardinality)], dtype=np.int64)
    return R.cached("nil_index", compute)


def nil_mask(R: FiniteRing) -> np.ndarray:
    return R.cached("nil_mask", lambda: nilpotency_indices(R) > 0)


def nilpotents(R: FiniteRing) -> dict[int, int]:
    """Map nilpotent element -> nilpotency index."""
    ind = nilpotency_indices(R)
    return {int(a): int(ind[a]) for a in np.flatnonzero(ind > 0)}


def center_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        if R.backend == "tabulated":
            _, mul, _ = R.tables()
            return (mul == mul.T).all(axis=1)
        return np.array([np.array_equal(R.mul_row(a), R.mul_col(a)) for a in R])
    return R.cached("center_mask", compute)


def center(R: FiniteRing) -> Subring:
    return R.cached(
        "center",
        lambda: make_subring(R, np.flatnonzero(center_mask(R)), f"C({R.label})"),
    )


def jacobson_mask(R: FiniteRing) -> np.ndarray:
    """a is in J(R) iff 1 - r*a is a unit for every r."""
    def compute():
        is_unit = unit_mask(R)
        if R.backend == "tabulated":
            _, mul, neg = R.tables()
            one_minus = R.add_vec(R.one, neg[mul.astype(np.int64)])  # [r, a] -> 1 - r*a
            return is_unit[one_minus].all(axis=0)
        return np.array([is_unit[R.sub_vec(R.one, R.mul_col(a))].all() for a in R])
    return R.cached("jacobson_mask", compute)


def jacobson_radical(R: FiniteRing) -> Ideal:
    def compute():
        J = Ideal(R, jacobson_mask(R))
        try:
            J.validate()
        except IdealError as exc:
            raise AxiomError(f"{R.label}: quasi-regular set is not an ideal ({exc})") from exc
        if not nil_mask(R)[J.members].all():
            raise AxiomError(f"{R.label}: Jacobson radical is not nil")
        return J
    return R.cached("jacobson", compute)


def is_semipotent(R: FiniteRing) -> tuple[bool, int | None]:
    """Check every principal right ideal aR with a outside J(R) for a nonzero idempotent.

    Returns (True, None) or (False, a) for a violating a.
    """
    def compute():
        idem = idempotent_mask(R).copy()
        idem[R.zero] = False
        J = jacobson_mask(R)
        for a in np.flatnonzero(~J):
            if not idem[R.mul_row(int(a))].any():
                return False, int(a)
        return True, None
    return R.cached("semipotent", compute)


def is_central(R: FiniteRing, a: int) -> bool:
    return bool(center_mask(R)[a])


def corner_ring(R: FiniteRing, e: int, label: str | None = None) -> FiniteRing:
    """eRe with unity e."""
    x = R.elements()
    members = R.mul_vec(R.mul_vec(e, x), e)
    return induced_ring(R, members, e, label or f"{R.label}[e={R.literal(e)}]")


def central_idempotent_split(R: FiniteRing, e: int) -> tuple[FiniteRing, FiniteRing]:
    """Peirce split R = eRe x (1-e)R(1-e) along a nontrivial central idempotent."""
    e = int(e)
    if R.mul(e, e) != e:
        raise RingError(f"{R.literal(e)} is not idempotent")
    if not is_central(R, e):
        raise RingError(f"{R.literal(e)} is not central")
    if e in (R.zero, R.one):
        raise RingError("trivial idempotent gives no split")
    f = R.sub(R.one, e)
    A, B = corner_ring(R, e), corner_ring(R, f)
    if A.cardinality * B.cardinality != R.cardinality:
        raise AssertionError("Peirce parts do not multiply to |R|")
    return A, B


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append((p, q))
        p += 1
    if n > 1:
        out.append((n, n))
    return out


def torsion_idempotents(R: FiniteRing) -> list[tuple[int, int]]:
    """(p, e_p) with e_p = c·1 central idempotents from the CRT on char(R)."""
    n = characteristic(R)
    out = []
    for p, q in _prime_powers(n):
        m = n // q
        # c = 1 mod q, c = 0 mod m
        c = (m * pow(m, -1, q)) % n
        out.append((p, R.scalar(c)))
    return out


def torsion_split(R: FiniteRing) -> list[tuple[int, FiniteRing]]:
    """Split R into its p-primary parts, one per prime dividing char(R)."""
    def compute():
        parts = torsion_idempotents(R)
        if len(parts) == 1:
            return [(parts[0][0], R)]
        rings = [(p, corner_ring(R, e, f"{R.label}[{p}-part]")) for p, e in parts]
        total = 1
        for _, S in rings:
            total *= S.cardinality
        if total != R.cardinality:
            raise AssertionError("torsion parts do not multiply to |R|")
        return rings
    if R.is_zero_ring():
        return []
    return R.cached("torsion_split", compute)
