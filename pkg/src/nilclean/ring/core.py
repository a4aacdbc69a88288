"""Finite unital rings over integer element handles.

A ring is a :class:`Carrier` (the constructor's canonical element form plus
vectorized arithmetic) wrapped by :class:`FiniteRing`, which either tabulates
the full addition/multiplication tables or evaluates operations on demand.
Elements are plain ``int`` indices ``0..n-1``; :class:`Elem` is a thin
operator-overloading handle for interactive use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Optional

import numpy as np

TABLE_LIMIT = 4096
STRUCTURAL_LIMIT = 65536
EXHAUSTIVE_AXIOM_LIMIT = 256
SAMPLED_AXIOM_TRIPLES = 100_000

# elements per chunk when materializing tables
_CHUNK = 1 << 20


class RingError(Exception):
    """Base class for ring construction and arithmetic errors."""


class CardinalityError(RingError):
    """Requested ring exceeds the configured cardinality limits."""


class AxiomError(RingError):
    """A ring axiom failed; signals a constructor or backend bug."""


class ParentMismatchError(RingError, ValueError):
    """Arithmetic was attempted between elements of different rings."""


@dataclass(frozen=True)
class Limits:
    table: int = TABLE_LIMIT
    structural: int = STRUCTURAL_LIMIT

    def check(self, cardinality: int, what: str = "ring") -> None:
        if cardinality > self.structural:
            raise CardinalityError(
                f"{what} has {cardinality} elements; limit is {self.structural}"
            )


DEFAULT_LIMITS = Limits()


class Carrier:
    """Canonical element form and arithmetic of one constructor.

    Subclasses provide two independent evaluation paths:

    * ``add_vec``/``mul_vec``/``neg_vec`` act on numpy index arrays and are
      used to build tables and whole rows;
    * ``decode``/``encode`` plus ``form_add``/``form_mul``/``form_neg`` act on
      the canonical element form of a single element (structural backend).
    """

    size: int
    zero: int = 0
    one: int = 1

    def add_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def mul_vec(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def neg_vec(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def decode(self, i: int) -> Any:
        raise NotImplementedError

    def encode(self, form: Any) -> int:
        raise NotImplementedError

    def form_add(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def form_mul(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def form_neg(self, x: Any) -> Any:
        raise NotImplementedError

    def literal(self, i: int) -> Optional[str]:
        """Human-readable element literal, or None if the constructor has none."""
        return None

    def from_literal(self, lit: Any) -> int:
        """Map a parsed element literal (see ``construct.descriptor``) to an index."""
        raise ValueError(f"{type(self).__name__} supports only '#index' literals")


def _index_dtype(n: int):
    return np.uint16 if n <= 65536 else np.int64


class FiniteRing:
    """A sealed finite unital ring.

    ``backend`` is ``"tabulated"`` (full tables, allowed up to
    ``limits.table`` elements), ``"structural"`` (operations evaluated from the
    canonical form, allowed up to ``limits.structural``) or ``"auto"``.
    Structure sets are computed lazily, once, and never mutated afterwards.
    """

    def __init__(
        self,
        carrier: Carrier,
        *,
        backend: str = "auto",
        limits: Limits = DEFAULT_LIMITS,
        label: str | None = None,
        descriptor: Any = None,
        verify: bool = True,
        allow_zero: bool = False,
        seed: int = 0,
    ):
        n = int(carrier.size)
        if n < 1:
            raise RingError("ring must have at least one element")
        limits.check(n)
        if backend == "auto":
            backend = "tabulated" if n <= limits.table else "structural"
        if backend not in ("tabulated", "structural"):
            raise ValueError(f"unknown backend {backend!r}")
        if backend == "tabulated" and n > limits.table:
            raise CardinalityError(f"{n} elements exceeds table limit {limits.table}")
        if carrier.zero == carrier.one and not (allow_zero and n == 1):
            raise RingError("zero equals one outside the permitted zero ring")

        self.carrier = carrier
        self.cardinality = n
        self.backend = backend
        self.zero = int(carrier.zero)
        self.one = int(carrier.one)
        self.descriptor = descriptor
        self.label = label if label is not None else (
            str(descriptor) if descriptor is not None else type(carrier).__name__
        )
        self._cache: dict[str, Any] = {}
        self._all = np.arange(n, dtype=np.int64)
        self._add = self._mul = self._neg = None
        if backend == "tabulated":
            self._add, self._mul = self._tabulate()
            self._neg = np.asarray(carrier.neg_vec(self._all), dtype=np.int64)
        self._sealed = True
        if verify:
            check_axioms(self, seed=seed)

    def __setattr__(self, name, value):
        if getattr(self, "_sealed", False):
            raise AttributeError("FiniteRing is sealed")
        object.__setattr__(self, name, value)

    def _relabel(self, descriptor: Any) -> "FiniteRing":
        """Stamp the descriptor that built this ring (write-once)."""
        if self.descriptor is not None and self.descriptor != descriptor:
            raise AttributeError("descriptor already set")
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "label", str(descriptor))
        return self

    def _tabulate(self):
        n = self.cardinality
        dtype = _index_dtype(n)
        add = np.empty((n, n), dtype=dtype)
        mul = np.empty((n, n), dtype=dtype)
        rows = max(1, _CHUNK // n)
        b = self._all
        for start in range(0, n, rows):
            a = self._all[start:start + rows]
            A = np.repeat(a, n)
            B = np.tile(b, len(a))
            add[start:start + len(a)] = np.asarray(self.carrier.add_vec(A, B)).reshape(len(a), n)
            mul[start:start + len(a)] = np.asarray(self.carrier.mul_vec(A, B)).reshape(len(a), n)
        return add, mul

    # -- cache -------------------------------------------------------------

    def cached(self, key: str, compute: Callable[[], Any]) -> Any:
        """Write-once memo; a racing duplicate computation is discarded."""
        try:
            return self._cache[key]
        except KeyError:
            return self._cache.setdefault(key, compute())

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return int(self._add[a, b])
        c = self.carrier
        return c.encode(c.form_add(c.decode(a), c.decode(b)))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return int(self._mul[a, b])
        c = self.carrier
        return c.encode(c.form_mul(c.decode(a), c.decode(b)))

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return int(self._neg[a])
        c = self.carrier
        return c.encode(c.form_neg(c.decode(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            raise ValueError("negative exponent")
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def scalar(self, k: int) -> int:
        """The element k·1."""
        x = self.zero
        step = self.one if k >= 0 else self.neg(self.one)
        for _ in range(abs(k)):
            x = self.add(x, step)
        return x

    # -- vectorized arithmetic ---------------------------------------------

    def add_vec(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._add is not None:
            return self._add[a, b].astype(np.int64)
        a, b = np.broadcast_arrays(a, b)
        return np.asarray(self.carrier.add_vec(a.ravel(), b.ravel())).reshape(a.shape)

    def mul_vec(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._mul is not None:
            return self._mul[a, b].astype(np.int64)
        a, b = np.broadcast_arrays(a, b)
        return np.asarray(self.carrier.mul_vec(a.ravel(), b.ravel())).reshape(a.shape)

    def neg_vec(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self._neg is not None:
            return self._neg[a]
        return np.asarray(self.carrier.neg_vec(a.ravel())).reshape(a.shape)

    def sub_vec(self, a, b) -> np.ndarray:
        return self.add_vec(a, self.neg_vec(b))

    def mul_row(self, a: int) -> np.ndarray:
        """``a*x`` for every element x."""
        if self._mul is not None:
            return self._mul[a].astype(np.int64)
        return self.mul_vec(np.full(self.cardinality, a), self._all)

    def mul_col(self, a: int) -> np.ndarray:
        """``x*a`` for every element x."""
        if self._mul is not None:
            return self._mul[:, a].astype(np.int64)
        return self.mul_vec(self._all, np.full(self.cardinality, a))

    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (add, mul, neg) tables, materializing them if structural."""
        if self._add is not None:
            return self._add, self._mul, self._neg
        return self.cached("tables", lambda: (*self._tabulate(), self.neg_vec(self._all)))

    # -- elements ----------------------------------------------------------

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.cardinality))

    def __getitem__(self, i: int) -> "Elem":
        i = int(i)
        if not 0 <= i < self.cardinality:
            raise IndexError(f"element index {i} out of range for {self.label}")
        return Elem(self, i)

    def elements(self) -> np.ndarray:
        return self._all

    def literal(self, i: int) -> str:
        """Render an element: the constructor literal when available, else ``#i``."""
        lit = self.carrier.literal(int(i))
        return lit if lit is not None else f"#{int(i)}"

    def is_commutative(self) -> bool:
        def compute():
            add, mul, _ = self.tables()
            return bool(np.array_equal(mul, mul.T))
        return self.cached("commutative", compute)

    def is_zero_ring(self) -> bool:
        return self.cardinality == 1

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, n={self.cardinality}, {self.backend})"


class Elem:
    """Element handle bound to its parent ring."""

    __slots__ = ("ring", "index")

    def __init__(self, ring: FiniteRing, index: int):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "index", int(index))

    def __setattr__(self, name, value):
        raise AttributeError("Elem is immutable")

    def _other(self, other) -> int:
        if isinstance(other, Elem):
            if other.ring is not self.ring:
                raise ParentMismatchError(
                    f"elements of {self.ring.label} and {other.ring.label} do not combine"
                )
            return other.index
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.ring.scalar(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Elem(self.ring, self.ring.add(self.index, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Elem(self.ring, self.ring.sub(self.index, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Elem(self.ring, self.ring.sub(o, self.index))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Elem(self.ring, self.ring.mul(self.index, o))

    def __rmul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Elem(self.ring, self.ring.mul(o, self.index))

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.index))

    def __pow__(self, k: int):
        return Elem(self.ring, self.ring.pow(self.index, k))

    def __eq__(self, other):
        if isinstance(other, Elem):
            return other.ring is self.ring and other.index == self.index
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), self.index))

    def __int__(self):
        return self.index

    __index__ = __int__

    def __repr__(self):
        return f"Elem({self.ring.label}, {self.ring.literal(self.index)})"


def check_axioms(
    R: FiniteRing,
    *,
    exhaustive_limit: int = EXHAUSTIVE_AXIOM_LIMIT,
    samples: int = SAMPLED_AXIOM_TRIPLES,
    seed: int = 0,
) -> None:
    """Verify the ring axioms; exhaustive up to ``exhaustive_limit`` elements.

    Raises :class:`AxiomError` naming the first failing law.
    """
    n = R.cardinality
    x = R.elements()
    zero, one = R.zero, R.one

    def fail(law: str, *elems) -> None:
        shown = ", ".join(R.literal(int(e)) for e in elems)
        raise AxiomError(f"{R.label}: {law} fails at ({shown})")

    # identities and inverses
    for name, got in (
        ("0 + x = x", R.add_vec(zero, x)),
        ("x + 0 = x", R.add_vec(x, zero)),
        ("1 * x = x", R.mul_vec(one, x)),
        ("x * 1 = x", R.mul_vec(x, one)),
    ):
        bad = np.flatnonzero(got != x)
        if bad.size:
            fail(name, bad[0])
    bad = np.flatnonzero(R.add_vec(x, R.neg_vec(x)) != zero)
    if bad.size:
        fail("x + (-x) = 0", bad[0])

    if n <= exhaustive_limit:
        add, mul, _ = R.tables()
        add = add.astype(np.int64)
        mul = mul.astype(np.int64)
        if not np.array_equal(add, add.T):
            i, j = np.argwhere(add != add.T)[0]
            fail("a + b = b + a", i, j)
        for a in range(n):
            # (a+b)+c = a+(b+c), (ab)c = a(bc), a(b+c) = ab+ac, (b+c)a = ba+ca
            checks = (
                ("associativity of +", add[add[a]], add[a][add]),
                ("associativity of *", mul[mul[a]], mul[a][mul]),
                ("left distributivity", mul[a][add], add[mul[a][:, None], mul[a][None, :]]),
                ("right distributivity", mul[:, a][add], add[mul[:, a][:, None], mul[:, a][None, :]]),
            )
            for law, lhs, rhs in checks:
                if not np.array_equal(lhs, rhs):
                    b, c = np.argwhere(lhs != rhs)[0]
                    fail(law, a, b, c)
        return

    rng = np.random.default_rng(seed)
    a, b, c = (rng.integers(0, n, samples) for _ in range(3))
    laws = (
        ("a + b = b + a", R.add_vec(a, b), R.add_vec(b, a)),
        ("associativity of +", R.add_vec(R.add_vec(a, b), c), R.add_vec(a, R.add_vec(b, c))),
        ("associativity of *", R.mul_vec(R.mul_vec(a, b), c), R.mul_vec(a, R.mul_vec(b, c))),
        ("left distributivity", R.mul_vec(a, R.add_vec(b, c)),
         R.add_vec(R.mul_vec(a, b), R.mul_vec(a, c))),
        ("right distributivity", R.mul_vec(R.add_vec(b, c), a),
         R.add_vec(R.mul_vec(b, a), R.mul_vec(c, a))),
    )
    for law, lhs, rhs in laws:
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            k = bad[0]
            fail(law, a[k], b[k], c[k])
