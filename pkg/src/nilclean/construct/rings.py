"""Ring constructors: residues, finite fields, structured algebras, sums."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..ring.core import DEFAULT_LIMITS, CardinalityError, Carrier, FiniteRing, Limits, RingError
from ..ring.ideals import Ideal, ideal_generated
from .groups import FiniteGroup

# monic irreducibles, low degree first: GF(4) x^2+x+1, GF(8) x^3+x+1,
# GF(9) x^2+x+2, GF(16) x^4+x+1
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 1, 1),
    (2, 4): (1, 1, 0, 0, 1),
}


class DescriptorRangeError(RingError, ValueError):
    """Constructor arguments are out of the supported range."""


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _check_size(size: int, limits: Limits, what: str) -> None:
    if size > limits.structural:
        raise CardinalityError(f"{what} would have {size} elements; limit is {limits.structural}")


class ZmodCarrier(Carrier):
    def __init__(self, n: int):
        self.size = n
        self.n = n
        self.zero, self.one = 0, 1 % n

    def add_vec(self, a, b):
        return (a + b) % self.n

    def mul_vec(self, a, b):
        return (a * b) % self.n

    def neg_vec(self, a):
        return (-a) % self.n

    def decode(self, i):
        return int(i)

    def encode(self, form):
        return int(form) % self.n

    def form_add(self, x, y):
        return (x + y) % self.n

    def form_mul(self, x, y):
        return (x * y) % self.n

    def form_neg(self, x):
        return (-x) % self.n

    def literal(self, i):
        return str(int(i))

    def from_literal(self, lit):
        return _int_literal(lit, self.size)


def _int_literal(lit, size: int) -> int:
    if lit.kind != "int":
        raise ValueError(f"expected an integer literal, got {lit}")
    if not 0 <= lit.value < size:
        raise ValueError(f"literal {lit.value} out of range 0..{size - 1}")
    return lit.value


class BooleanCarrier(Carrier):
    """Z_2^k; bit k-1-i of the index is component i."""

    def __init__(self, k: int):
        self.k = k
        self.size = 1 << k
        self.zero, self.one = 0, self.size - 1

    def add_vec(self, a, b):
        return a ^ b

    def mul_vec(self, a, b):
        return a & b

    def neg_vec(self, a):
        return a

    def decode(self, i):
        return tuple((int(i) >> (self.k - 1 - c)) & 1 for c in range(self.k))

    def encode(self, form):
        out = 0
        for bit in form:
            out = (out << 1) | bit
        return out

    def form_add(self, x, y):
        return tuple((u + v) % 2 for u, v in zip(x, y))

    def form_mul(self, x, y):
        return tuple(u * v for u, v in zip(x, y))

    def form_neg(self, x):
        return x

    def literal(self, i):
        return str(int(i))

    def from_literal(self, lit):
        return _int_literal(lit, self.size)


class GFCarrier(Carrier):
    """GF(p^k) as polynomials mod a fixed irreducible; index = sum c_i p^i."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.size = p ** k
        self.zero, self.one = 0, 1
        self.modulus = IRREDUCIBLE.get((p, k))
        n = self.size
        forms = [self.decode(i) for i in range(n)]
        self._add = np.array([[self.encode(self.form_add(x, y)) for y in forms] for x in forms])
        self._mul = np.array([[self.encode(self.form_mul(x, y)) for y in forms] for x in forms])
        self._neg = np.array([self.encode(self.form_neg(x)) for x in forms])

    def add_vec(self, a, b):
        return self._add[a, b]

    def mul_vec(self, a, b):
        return self._mul[a, b]

    def neg_vec(self, a):
        return self._neg[a]

    def decode(self, i):
        i = int(i)
        out = []
        for _ in range(self.k):
            i, c = divmod(i, self.p)
            out.append(c)
        return tuple(out)

    def encode(self, form):
        return sum(c * self.p ** i for i, c in enumerate(form))

    def form_add(self, x, y):
        return tuple((u + v) % self.p for u, v in zip(x, y))

    def form_neg(self, x):
        return tuple((-u) % self.p for u in x)

    def form_mul(self, x, y):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] = (prod[i + j] + u * v) % p
        if k > 1:
            mod = self.modulus
            for d in range(2 * k - 2, k - 1, -1):
                c = prod[d]
                if c:
                    # x^d = x^(d-k) * (x^k) and x^k = -(lower terms of the modulus)
                    for i in range(k):
                        prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
                    prod[d] = 0
        return tuple(prod[:k])

    def literal(self, i):
        return str(int(i))

    def from_literal(self, lit):
        return _int_literal(lit, self.size)


class BilinearCarrier(Carrier):
    """Free module base^dim with a product given by structure-constant rules.

    Each rule ``(r, s, t)`` adds ``x_r * y_s`` (base product, in that order)
    into coordinate ``t`` of ``x*y``.  Indices are lexicographic in the
    coordinate vector, first coordinate most significant.
    """

    def __init__(self, base: FiniteRing, dim: int, rules: Sequence[tuple[int, int, int]],
                 one: Sequence[int]):
        self.base = base
        self.dim = dim
        self.q = base.cardinality
        self.rules = tuple(rules)
        self.size = self.q ** dim
        self.weights = np.array([self.q ** (dim - 1 - t) for t in range(dim)], dtype=np.int64)
        self.zero = self.encode(tuple([base.zero] * dim))
        self.one = self.encode(tuple(one))
        self._by_target: dict[int, list[tuple[int, int]]] = {}
        for r, s, t in self.rules:
            self._by_target.setdefault(t, []).append((r, s))

    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self.weights) % self.q

    def undigits(self, d: np.ndarray) -> np.ndarray:
        return (d * self.weights).sum(axis=-1)

    def add_vec(self, a, b):
        return self.undigits(self.base.add_vec(self.digits(a), self.digits(b)))

    def neg_vec(self, a):
        return self.undigits(self.base.neg_vec(self.digits(a)))

    def mul_vec(self, a, b):
        A, B = self.digits(a), self.digits(b)
        C = np.full(A.shape, self.base.zero, dtype=np.int64)
        for t, pairs in self._by_target.items():
            acc = C[..., t]
            for r, s in pairs:
                acc = self.base.add_vec(acc, self.base.mul_vec(A[..., r], B[..., s]))
            C[..., t] = acc
        return self.undigits(C)

    def decode(self, i):
        i = int(i)
        out = [0] * self.dim
        for t in range(self.dim - 1, -1, -1):
            i, out[t] = divmod(i, self.q)
        return tuple(out)

    def encode(self, form):
        out = 0
        for c in form:
            out = out * self.q + int(c)
        return out

    def form_add(self, x, y):
        return tuple(self.base.add(u, v) for u, v in zip(x, y))

    def form_neg(self, x):
        return tuple(self.base.neg(u) for u in x)

    def form_mul(self, x, y):
        out = [self.base.zero] * self.dim
        for r, s, t in self.rules:
            out[t] = self.base.add(out[t], self.base.mul(x[r], y[s]))
        return tuple(out)


class PatternMatrixCarrier(BilinearCarrier):
    """n x n matrices over ``base`` supported on an allowed position set.

    The positions must be closed under composition ((i,k),(k,j) -> (i,j)) and
    contain the diagonal; full, upper-triangular and block-triangular rings
    are instances.
    """

    def __init__(self, base: FiniteRing, n: int, positions: Sequence[tuple[int, int]]):
        self.n = n
        self.positions = tuple(positions)
        slot = {p: t for t, p in enumerate(self.positions)}
        self.slot = slot
        rules = [
            (slot[(i, k)], slot[(k2, j)], slot[(i, j)])
            for (i, k) in self.positions
            for (k2, j) in self.positions
            if k == k2
        ]
        one = [base.one if i == j else base.zero for (i, j) in self.positions]
        super().__init__(base, len(self.positions), rules, one)

    def to_grid(self, i: int) -> list[list[int]]:
        grid = [[self.base.zero] * self.n for _ in range(self.n)]
        for (r, c), v in zip(self.positions, self.decode(i)):
            grid[r][c] = v
        return grid

    def from_grid(self, grid) -> int:
        for r in range(self.n):
            for c in range(self.n):
                if (r, c) not in self.slot and grid[r][c] != self.base.zero:
                    raise ValueError(f"entry ({r},{c}) must be zero in this matrix ring")
        return self.encode(tuple(grid[r][c] for (r, c) in self.positions))

    def literal(self, i):
        grid = self.to_grid(i)
        rows = []
        for row in grid:
            lits = [self.base.carrier.literal(v) for v in row]
            if any(lit is None or not lit.isdigit() for lit in lits):
                return None
            rows.append("[" + ",".join(lits) + "]")
        return "[" + ",".join(rows) + "]"

    def from_literal(self, lit):
        if lit.kind != "matrix":
            raise ValueError(f"expected a matrix literal, got {lit}")
        grid = lit.value
        if len(grid) != self.n or any(len(row) != self.n for row in grid):
            raise ValueError(f"matrix literal must be {self.n}x{self.n}")
        from .descriptor import ElemLiteral

        base_grid = [
            [self.base.carrier.from_literal(ElemLiteral("int", v)) for v in row] for row in grid
        ]
        return self.from_grid(base_grid)


class GroupRingCarrier(BilinearCarrier):
    """Formal sums over a finite group, coefficient vectors in group order."""

    def __init__(self, base: FiniteRing, group: FiniteGroup):
        self.group = group
        n = group.order
        rules = [(g, h, group.mul(g, h)) for g in range(n) for h in range(n)]
        one = [base.one] + [base.zero] * (n - 1)
        super().__init__(base, n, rules, one)

    def coefficients(self, i: int) -> tuple[int, ...]:
        return self.decode(i)

    def group_element(self, g: int) -> int:
        form = [self.base.zero] * self.group.order
        form[g] = self.base.one
        return self.encode(form)

    def literal(self, i):
        terms = []
        for g, c in enumerate(self.decode(i)):
            if c != self.base.zero:
                clit = self.base.carrier.literal(c)
                if clit is None or not clit.isdigit():
                    return None
                terms.append(f"{clit}*{self.group.names[g]}")
        return "{" + ("+".join(terms) if terms else f"0*{self.group.names[0]}") + "}"

    def from_literal(self, lit):
        if lit.kind != "group":
            raise ValueError(f"expected a group-ring literal, got {lit}")
        from .descriptor import ElemLiteral

        form = [self.base.zero] * self.group.order
        for coeff, word in lit.value:
            g = self.group.index(word)
            c = self.base.carrier.from_literal(ElemLiteral("int", coeff))
            form[g] = self.base.add(form[g], c)
        return self.encode(form)


class DirectSumCarrier(Carrier):
    """Componentwise ring on tuples; lexicographic, first component most significant."""

    def __init__(self, parts: Sequence[FiniteRing]):
        self.parts = tuple(parts)
        sizes = [R.cardinality for R in self.parts]
        self.size = int(np.prod(sizes))
        w, weights = 1, []
        for s in reversed(sizes):
            weights.append(w)
            w *= s
        self.weights = tuple(reversed(weights))
        self.sizes = tuple(sizes)
        self.zero = self.encode(tuple(R.zero for R in self.parts))
        self.one = self.encode(tuple(R.one for R in self.parts))

    def _split(self, a):
        a = np.asarray(a, dtype=np.int64)
        return [(a // w) % s for w, s in zip(self.weights, self.sizes)]

    def _join(self, comps):
        return sum(c * w for c, w in zip(comps, self.weights))

    def add_vec(self, a, b):
        return self._join([R.add_vec(x, y) for R, x, y in zip(self.parts, self._split(a), self._split(b))])

    def mul_vec(self, a, b):
        return self._join([R.mul_vec(x, y) for R, x, y in zip(self.parts, self._split(a), self._split(b))])

    def neg_vec(self, a):
        return self._join([R.neg_vec(x) for R, x in zip(self.parts, self._split(a))])

    def decode(self, i):
        return tuple((int(i) // w) % s for w, s in zip(self.weights, self.sizes))

    def encode(self, form):
        return sum(int(c) * w for c, w in zip(form, self.weights))

    def form_add(self, x, y):
        return tuple(R.add(u, v) for R, u, v in zip(self.parts, x, y))

    def form_mul(self, x, y):
        return tuple(R.mul(u, v) for R, u, v in zip(self.parts, x, y))

    def form_neg(self, x):
        return tuple(R.neg(u) for R, u in zip(self.parts, x))


# -- public constructors -------------------------------------------------------


def _ring(carrier: Carrier, label: str, backend: str, limits: Limits, **kw) -> FiniteRing:
    return FiniteRing(carrier, backend=backend, limits=limits, label=label, **kw)


def zmod(n: int, *, backend: str = "auto", limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    if n < 2:
        raise DescriptorRangeError("Z(n) needs n >= 2")
    _check_size(n, limits, f"Z({n})")
    return _ring(ZmodCarrier(n), f"Z({n})", backend, limits)


def boolean_power(k: int, *, backend: str = "auto", limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    if k < 1:
        raise DescriptorRangeError("B(k) needs k >= 1")
    _check_size(2 ** k, limits, f"B({k})")
    return _ring(BooleanCarrier(k), f"B({k})", backend, limits)


def gf(p: int, k: int = 1, *, backend: str = "auto", limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    if not _is_prime(p) or k < 1:
        raise DescriptorRangeError(f"GF({p},{k}): p must be prime and k >= 1")
    if p ** k > 16 or (k > 1 and (p, k) not in IRREDUCIBLE):
        raise DescriptorRangeError(f"GF({p},{k}) unsupported: field size must be at most 16")
    return _ring(GFCarrier(p, k), f"GF({p ** k})" if k > 1 else f"GF({p})", backend, limits)


def _pattern(base: FiniteRing, n: int, positions, label, backend, limits) -> FiniteRing:
    _check_size(base.cardinality ** len(positions), limits, label)
    return _ring(PatternMatrixCarrier(base, n, positions), label, backend, limits)


def matrix_ring(n: int, R: FiniteRing, *, backend: str = "auto",
                limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    if n < 1:
        raise DescriptorRangeError("matrix size must be >= 1")
    pos = [(i, j) for i in range(n) for j in range(n)]
    return _pattern(R, n, pos, f"M({n},{R.label})", backend, limits)


def triangular_ring(n: int, R: FiniteRing, *, backend: str = "auto",
                    limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    if n < 1:
        raise DescriptorRangeError("matrix size must be >= 1")
    pos = [(i, j) for i in range(n) for j in range(n) if i <= j]
    return _pattern(R, n, pos, f"T({n},{R.label})", backend, limits)


def block_triangular(R: FiniteRing, n: int, m: int, *, backend: str = "auto",
                     limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """[[M_n(R), M_{n x m}(R)], [0, M_m(R)]]."""
    if n < 1 or m < 1:
        raise DescriptorRangeError("block sizes must be >= 1")
    size = n + m
    pos = [(i, j) for i in range(size) for j in range(size) if not (i >= n and j < n)]
    return _pattern(R, size, pos, f"BT({R.label},{n},{m})", backend, limits)


def truncated_poly(R: FiniteRing, k: int, *, backend: str = "auto",
                   limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """R[t]/(t^k), coefficient vector (c_0, ..., c_{k-1})."""
    if k < 1:
        raise DescriptorRangeError("TP truncation degree must be >= 1")
    _check_size(R.cardinality ** k, limits, f"TP({R.label},{k})")
    rules = [(i, j, i + j) for i in range(k) for j in range(k) if i + j < k]
    one = [R.one] + [R.zero] * (k - 1)
    return _ring(BilinearCarrier(R, k, rules, one), f"TP({R.label},{k})", backend, limits)


def trivial_extension(R: FiniteRing, *, backend: str = "auto",
                      limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """R ⋉ R: (r, n)(r', n') = (rr', rn' + nr')."""
    _check_size(R.cardinality ** 2, limits, f"TE({R.label})")
    rules = [(0, 0, 0), (0, 1, 1), (1, 0, 1)]
    return _ring(BilinearCarrier(R, 2, rules, [R.one, R.zero]), f"TE({R.label})", backend, limits)


def group_ring(R: FiniteRing, G: FiniteGroup, *, backend: str = "auto",
               limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    _check_size(R.cardinality ** G.order, limits, f"GR({R.label},{G.label})")
    return _ring(GroupRingCarrier(R, G), f"GR({R.label},{G.label})", backend, limits)


def direct_sum(parts: Sequence[FiniteRing], *, backend: str = "auto",
               limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    if not parts:
        raise DescriptorRangeError("direct sum needs at least one summand")
    _check_size(int(np.prod([R.cardinality for R in parts])), limits, "direct sum")
    label = "DS(" + ",".join(R.label for R in parts) + ")"
    return _ring(DirectSumCarrier(parts), label, backend, limits)


def ex27(n: int, k: int, *, backend: str = "auto", limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """[[M_n(Z_2), S^n], [0, S]] with S = Z_2[t]/(t^k).

    Coordinates over Z_2: the n*n matrix entries, then v_{i,l} (coefficient of
    t^l in the i-th column entry), then the k coefficients of s.
    """
    if n < 1 or k < 1:
        raise DescriptorRangeError("EX27 needs n >= 1 and k >= 1")
    _check_size(2 ** (n * n + n * k + k), limits, f"EX27({n},{k})")
    base = zmod(2)
    A = lambda i, j: i * n + j  # noqa: E731
    V = lambda i, l: n * n + i * k + l  # noqa: E731
    S = lambda l: n * n + n * k + l  # noqa: E731
    rules = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                rules.append((A(i, j), A(j, m), A(i, m)))
            for l in range(k):
                rules.append((A(i, j), V(j, l), V(i, l)))
    for i in range(n):
        for a in range(k):
            for b in range(k - a):
                rules.append((V(i, a), S(b), V(i, a + b)))
    for a in range(k):
        for b in range(k - a):
            rules.append((S(a), S(b), S(a + b)))
    dim = n * n + n * k + k
    one = [0] * dim
    for i in range(n):
        one[A(i, i)] = 1
    one[S(0)] = 1
    return _ring(BilinearCarrier(base, dim, rules, one), f"EX27({n},{k})", backend, limits)


# -- group-ring augmentation -------------------------------------------------


def _group_ring_carrier(RG: FiniteRing) -> GroupRingCarrier:
    if not isinstance(RG.carrier, GroupRingCarrier):
        raise TypeError(f"{RG.label} is not a group ring")
    return RG.carrier


def augmentation_map(RG: FiniteRing, x: int) -> int:
    """Sum of coefficients, as an element of the coefficient ring."""
    c = _group_ring_carrier(RG)
    total = c.base.zero
    for coeff in c.coefficients(x):
        total = c.base.add(total, coeff)
    return total


def augmentation_ideal(RG: FiniteRing) -> Ideal:
    """Kernel of the augmentation map; cross-checked against the ideal generated by 1 - g."""
    def compute():
        c = _group_ring_carrier(RG)
        omega = np.array([augmentation_map(RG, x) for x in range(RG.cardinality)])
        kernel = Ideal(RG, omega == c.base.zero)
        kernel.validate()
        gens = [RG.sub(RG.one, c.group_element(g)) for g in range(c.group.order)]
        if ideal_generated(RG, gens) != kernel:
            raise AssertionError("augmentation kernel differs from <1 - g>")
        return kernel
    return RG.cached("augmentation_ideal", compute)
