"""Cayley-table finite groups and their central series."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

import numpy as np


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on ``0..order-1`` with identity 0 and a verified Cayley table."""

    table: np.ndarray = field(repr=False)
    names: tuple[str, ...]
    label: str = "G"

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        object.__setattr__(self, "table", t)
        n = t.shape[0]
        if t.shape != (n, n) or len(self.names) != n:
            raise GroupError("Cayley table must be square and match the names")
        ar = np.arange(n)
        for k in range(n):
            if not (np.array_equal(np.sort(t[k]), ar) and np.array_equal(np.sort(t[:, k]), ar)):
                raise GroupError("Cayley table rows/columns must be permutations")
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise GroupError("element 0 must be the identity")
        if not np.array_equal(t[t], _assoc_rhs(t)):
            raise GroupError("Cayley table is not associative")
        inv = np.argmax(t == 0, axis=1)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def index(self, name: str) -> int:
        try:
            return self.names.index(name.replace(" ", ""))
        except ValueError:
            raise GroupError(f"{name!r} is not an element of {self.label}") from None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"


def _assoc_rhs(t: np.ndarray) -> np.ndarray:
    # (ab)c indexed [a, b, c] equals a(bc) = t[a, t[b, c]]
    n = t.shape[0]
    return t[np.arange(n)[:, None, None], t[None, :, :]]


def from_cayley(table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                label: str = "G") -> FiniteGroup:
    """Build a group from any Cayley table, relabelling so the identity comes first."""
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    if names is None:
        names = [f"x{i}" for i in range(n)]
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ids:
        raise GroupError("Cayley table has no identity")
    e = ids[0]
    order = [e] + [i for i in range(n) if i != e]
    pos = np.empty(n, dtype=np.int64)
    pos[order] = ar
    relabeled = pos[t[np.ix_(order, order)]]
    return FiniteGroup(relabeled, tuple(names[i] for i in order), label)


def _power_name(sym: str, k: int) -> str:
    return "1" if k == 0 else sym if k == 1 else f"{sym}^{k}"


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n,
                       tuple(_power_name("g", k) for k in range(n)), f"C({n})")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with index g*|H| + h."""
    m = H.order
    t = np.empty((G.order * m, G.order * m), dtype=np.int64)
    for a in range(G.order * m):
        g1, h1 = divmod(a, m)
        t[a] = G.table[g1][np.arange(G.order * m) // m] * m + H.table[h1][np.arange(G.order * m) % m]
    names = tuple(f"({g},{h})" for g in G.names for h in H.names)
    return FiniteGroup(t, names, f"CP({G.label},{H.label})")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element r^i s^x has index x*n + i."""
    if n < 1:
        raise GroupError("dihedral parameter must be positive")
    size = 2 * n
    t = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        x, i = divmod(a, n)
        for b in range(size):
            y, j = divmod(b, n)
            k = (i + (j if x == 0 else -j)) % n
            t[a, b] = ((x + y) % 2) * n + k
    names = tuple(_power_name("r", i) for i in range(n)) + tuple(
        "s" if i == 0 else f"{_power_name('r', i)}s" for i in range(n)
    )
    return FiniteGroup(t, names, "D4" if n == 4 else f"D({n})")


def quaternion8() -> FiniteGroup:
    """Q8 = {±1, ±i, ±j, ±k}."""
    names = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    # unit products: (sign, unit) with unit in 1, i, j, k
    unit_mul = {
        ("1", u): (1, u) for u in "1ijk"
    } | {(u, "1"): (1, u) for u in "1ijk"} | {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }

    def split(name):
        return (-1, name[1:]) if name.startswith("-") else (1, name)

    t = np.empty((8, 8), dtype=np.int64)
    for a, na in enumerate(names):
        sa, ua = split(na)
        for b, nb in enumerate(names):
            sb, ub = split(nb)
            s, u = unit_mul[(ua, ub)]
            sign = sa * sb * s
            t[a, b] = names.index(u if sign == 1 else f"-{u}")
    return FiniteGroup(t, names, "Q8")


def element_order(G: FiniteGroup, g: int) -> int:
    x, k = g, 1
    while x != 0:
        x = G.mul(x, g)
        k += 1
    return k


def exponent(G: FiniteGroup) -> int:
    return lcm(*(element_order(G, g) for g in range(G.order)))


def _is_prime_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def is_p_group(G: FiniteGroup, p: int) -> bool:
    return all(_is_prime_power(element_order(G, g), p) for g in range(G.order))


def is_subgroup_normal(G: FiniteGroup, members: Sequence[int]) -> bool:
    S = set(members)
    return all(G.mul(G.mul(g, h), G.inv(g)) in S for g in range(G.order) for h in S)


def group_center(G: FiniteGroup) -> tuple[int, ...]:
    t = G.table
    return tuple(int(g) for g in np.flatnonzero((t == t.T).all(axis=1)))


def _next_center(G: FiniteGroup, Z: set[int]) -> tuple[int, ...]:
    # g is in Z_{i+1} iff every commutator g x g^-1 x^-1 lies in Z_i
    out = []
    for g in range(G.order):
        gi = G.inv(g)
        if all(G.mul(G.mul(G.mul(g, x), gi), G.inv(x)) in Z for x in range(G.order)):
            out.append(g)
    return tuple(out)


def upper_central_series(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Z_0 = 1 < Z_1 < ... up to the first repeat (the hypercenter)."""
    series = [(0,)]
    while True:
        nxt = _next_center(G, set(series[-1]))
        if nxt == series[-1]:
            return series
        series.append(nxt)


def hypercenter(G: FiniteGroup) -> tuple[int, ...]:
    return upper_central_series(G)[-1]


def is_nilpotent_group(G: FiniteGroup) -> bool:
    return len(hypercenter(G)) == G.order


def subset_is_p_group(G: FiniteGroup, members: Sequence[int], p: int) -> bool:
    return all(_is_prime_power(element_order(G, g), p) for g in members)
