"""Ideals, subrings, quotients and corner rings of a finite ring."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .core import Carrier, FiniteRing, RingError


def _as_mask(R: FiniteRing, members: Iterable[int]) -> np.ndarray:
    mask = np.zeros(R.cardinality, dtype=bool)
    idx = np.fromiter((int(m) for m in members), dtype=np.int64)
    mask[idx] = True
    return mask


class IdealError(RingError):
    pass


@dataclass(frozen=True, eq=False)
class Ideal:
    """A two-sided ideal, stored as a membership mask over the parent."""

    ring: FiniteRing
    mask: np.ndarray = field(repr=False)

    @classmethod
    def from_members(cls, R: FiniteRing, members: Iterable[int], check: bool = True) -> "Ideal":
        ideal = cls(R, _as_mask(R, members))
        if check:
            ideal.validate()
        return ideal

    @property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, a: int) -> bool:
        return bool(self.mask[int(a)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ideal)
            and other.ring is self.ring
            and np.array_equal(other.mask, self.mask)
        )

    def __hash__(self):
        return hash((id(self.ring), self.mask.tobytes()))

    def is_zero(self) -> bool:
        return len(self) == 1

    def validate(self) -> None:
        R = self.ring
        m = self.members
        if not self.mask[R.zero]:
            raise IdealError("ideal does not contain zero")
        if not self.mask[R.add_vec(m[:, None], m[None, :])].all():
            raise IdealError("ideal not closed under addition")
        if not self.mask[R.neg_vec(m)].all():
            raise IdealError("ideal not closed under negation")
        x = R.elements()
        if not self.mask[R.mul_vec(x[:, None], m[None, :])].all():
            raise IdealError("ideal not closed under left multiplication")
        if not self.mask[R.mul_vec(m[:, None], x[None, :])].all():
            raise IdealError("ideal not closed under right multiplication")

    def __repr__(self) -> str:
        return f"Ideal({self.ring.label}, |I|={len(self)})"


def _additive_closure(R: FiniteRing, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    mask[R.zero] = True
    while True:
        m = np.flatnonzero(mask)
        new = mask.copy()
        new[R.add_vec(m[:, None], m[None, :]).ravel()] = True
        new[R.neg_vec(m)] = True
        if np.array_equal(new, mask):
            return mask
        mask = new


def ideal_generated(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest two-sided ideal containing ``gens`` (closure to a fixpoint)."""
    mask = _as_mask(R, gens)
    mask[R.zero] = True
    x = R.elements()
    while True:
        m = np.flatnonzero(mask)
        new = mask.copy()
        new[R.mul_vec(x[:, None], m[None, :]).ravel()] = True
        new[R.mul_vec(m[:, None], x[None, :]).ravel()] = True
        new = _additive_closure(R, new)
        if np.array_equal(new, mask):
            break
        mask = new
    ideal = Ideal(R, mask)
    ideal.validate()
    return ideal


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal.from_members(R, [R.zero], check=False)


def ideal_product(I: Ideal, K: Ideal) -> Ideal:
    """The ideal IK: additive closure of all products i*k."""
    R = I.ring
    prods = R.mul_vec(I.members[:, None], K.members[None, :]).ravel()
    return Ideal(R, _additive_closure(R, _as_mask(R, prods)))


def ideal_nil_index(I: Ideal) -> Optional[int]:
    """Least k with I^k = 0, or None when I is not nilpotent.

    On a finite ring an ideal is nil exactly when it is nilpotent; the
    agreement is asserted.
    """
    R = I.ring
    nil_mask = R.cached("nil_mask", lambda: _nil_mask(R))
    is_nil = bool(nil_mask[I.members].all())
    power, k = I, 1
    index = None
    while True:
        if power.is_zero():
            index = k
            break
        nxt = ideal_product(power, I)
        if nxt == power:
            break
        power, k = nxt, k + 1
    if (index is not None) != is_nil:
        raise AssertionError(f"nil/nilpotent disagreement for {I!r}")
    return index


def _nil_mask(R: FiniteRing) -> np.ndarray:
    from .structure import nilpotency_indices

    return nilpotency_indices(R) > 0


class SubsetCarrier(Carrier):
    """Ring on a subset of a parent closed under +, -, * with its own unity."""

    def __init__(self, parent: FiniteRing, members: np.ndarray, one: int):
        self.parent = parent
        self.members = np.asarray(members, dtype=np.int64)
        self.pos = np.full(parent.cardinality, -1, dtype=np.int64)
        self.pos[self.members] = np.arange(len(self.members))
        self.size = len(self.members)
        self.zero = int(self.pos[parent.zero])
        self.one = int(self.pos[one])
        if self.zero < 0 or self.one < 0:
            raise RingError("subset must contain zero and its unity")

    def _back(self, parent_idx) -> np.ndarray:
        out = self.pos[parent_idx]
        if (out < 0).any():
            raise RingError("subset not closed under the ring operations")
        return out

    def add_vec(self, a, b):
        return self._back(self.parent.add_vec(self.members[a], self.members[b]))

    def mul_vec(self, a, b):
        return self._back(self.parent.mul_vec(self.members[a], self.members[b]))

    def neg_vec(self, a):
        return self._back(self.parent.neg_vec(self.members[a]))

    def decode(self, i):
        return int(self.members[i])

    def encode(self, form):
        i = int(self.pos[form])
        if i < 0:
            raise RingError("element not in subset")
        return i

    def form_add(self, x, y):
        return self.parent.add(x, y)

    def form_mul(self, x, y):
        return self.parent.mul(x, y)

    def form_neg(self, x):
        return self.parent.neg(x)

    def literal(self, i):
        return self.parent.literal(int(self.members[i]))

    def from_literal(self, lit):
        from ..construct.descriptor import resolve_element

        return self.encode(resolve_element(self.parent, lit))


@dataclass(frozen=True, eq=False)
class Subring:
    """A subset of ``parent`` closed under the ring operations.

    ``ring`` is the induced :class:`FiniteRing` on the members (sorted by
    parent index) and ``embed`` maps its indices into the parent.
    """

    parent: FiniteRing
    members: np.ndarray = field(repr=False)
    ring: FiniteRing = field(repr=False)

    @property
    def embed(self) -> np.ndarray:
        return self.members

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return bool(np.isin(int(a), self.members))

    def __repr__(self) -> str:
        return f"Subring({self.parent.label}, |S|={len(self)})"


def induced_ring(parent: FiniteRing, members, one: int, label: str) -> FiniteRing:
    members = np.unique(np.asarray(members, dtype=np.int64))
    return FiniteRing(SubsetCarrier(parent, members, one), label=label,
                      allow_zero=True)


def make_subring(parent: FiniteRing, members, label: str | None = None) -> Subring:
    members = np.unique(np.asarray(members, dtype=np.int64))
    ring = induced_ring(parent, members, parent.one, label or f"subring of {parent.label}")
    return Subring(parent, members, ring)


def subring_generated(R: FiniteRing, gens: Iterable[int], label: str | None = None) -> Subring:
    """Smallest unital subring containing ``gens``."""
    mask = _as_mask(R, list(gens) + [R.zero, R.one])
    while True:
        m = np.flatnonzero(mask)
        new = mask.copy()
        new[R.add_vec(m[:, None], m[None, :]).ravel()] = True
        new[R.mul_vec(m[:, None], m[None, :]).ravel()] = True
        new[R.neg_vec(m)] = True
        if np.array_equal(new, mask):
            break
        mask = new
    return make_subring(R, np.flatnonzero(mask), label)


class QuotientCarrier(Carrier):
    """R/I on minimal-index coset representatives."""

    def __init__(self, ideal: Ideal):
        R = ideal.ring
        self.parent = R
        self.ideal = ideal
        reps = R.add_vec(R.elements()[:, None], ideal.members[None, :]).min(axis=1)
        self.reps, self.proj = np.unique(reps, return_inverse=True)
        self.proj = self.proj.astype(np.int64).ravel()
        self.size = len(self.reps)
        self.zero = int(self.proj[R.zero])
        self.one = int(self.proj[R.one])

    def add_vec(self, a, b):
        return self.proj[self.parent.add_vec(self.reps[a], self.reps[b])]

    def mul_vec(self, a, b):
        return self.proj[self.parent.mul_vec(self.reps[a], self.reps[b])]

    def neg_vec(self, a):
        return self.proj[self.parent.neg_vec(self.reps[a])]

    def decode(self, i):
        return int(self.reps[i])

    def encode(self, form):
        return int(self.proj[form])

    def form_add(self, x, y):
        return int(self.reps[self.proj[self.parent.add(x, y)]])

    def form_mul(self, x, y):
        return int(self.reps[self.proj[self.parent.mul(x, y)]])

    def form_neg(self, x):
        return int(self.reps[self.proj[self.parent.neg(x)]])

    def literal(self, i):
        return self.parent.literal(int(self.reps[i]))

    def from_literal(self, lit):
        from ..construct.descriptor import resolve_element

        return int(self.proj[resolve_element(self.parent, lit)])


def quotient(R: FiniteRing, I: Ideal, label: str | None = None) -> tuple[FiniteRing, np.ndarray]:
    """Return (R/I, projection array mapping R-indices to R/I-indices)."""
    if I.ring is not R:
        raise IdealError("ideal belongs to a different ring")
    carrier = QuotientCarrier(I)
    Q = FiniteRing(carrier, label=label or f"{R.label}/I", allow_zero=True)
    if Q.cardinality * len(I) != R.cardinality:
        raise AssertionError("coset count does not match |R| / |I|")
    return Q, carrier.proj
