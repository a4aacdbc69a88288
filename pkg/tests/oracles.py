"""Independent brute-force reference arithmetic, written without the package.

Each oracle ring is a tuple (elements, add, mul, zero, one) over hashable
Python values, so counts computed here cross-check the library's
vectorized carriers without sharing any code with them.
"""

from __future__ import annotations

from itertools import product


class OracleRing:
    def __init__(self, elements, add, mul, zero, one):
        self.elements = list(elements)
        self.add = add
        self.mul = mul
        self.zero = zero
        self.one = one

    def units(self):
        return [a for a in self.elements
                if any(self.mul(a, b) == self.one and self.mul(b, a) == self.one
                       for b in self.elements)]

    def idempotents(self):
        return [a for a in self.elements if self.mul(a, a) == a]

    def nil_index(self, a):
        p, k = a, 1
        for _ in range(len(self.elements) + 1):
            if p == self.zero:
                return k
            p = self.mul(p, a)
            k += 1
        return 0

    def nilpotents(self):
        return [a for a in self.elements if self.nil_index(a)]

    def center(self):
        return [a for a in self.elements
                if all(self.mul(a, r) == self.mul(r, a) for r in self.elements)]

    def neg(self, a):
        return next(b for b in self.elements if self.add(a, b) == self.zero)

    def jacobson(self):
        U = set(self.units())
        return [a for a in self.elements
                if all(self.add(self.one, self.neg(self.mul(r, a))) in U for r in self.elements)]


def zmod(n: int) -> OracleRing:
    return OracleRing(range(n), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 0, 1)


def gf4() -> OracleRing:
    # pairs (c0, c1) for c0 + c1*w with w^2 = w + 1
    def mul(x, y):
        a0, a1 = x
        b0, b1 = y
        c0 = a0 * b0 + a1 * b1
        c1 = a0 * b1 + a1 * b0 + a1 * b1
        return (c0 % 2, c1 % 2)
    elems = [(a, b) for a in range(2) for b in range(2)]
    return OracleRing(elems, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), mul,
                      (0, 0), (1, 0))


def matrices(n: int, base: OracleRing, upper: bool = False) -> OracleRing:
    cells = [(i, j) for i in range(n) for j in range(n) if not upper or i <= j]

    def mk(values):
        grid = [[base.zero] * n for _ in range(n)]
        for (i, j), v in zip(cells, values):
            grid[i][j] = v
        return tuple(tuple(r) for r in grid)

    def add(A, B):
        return tuple(tuple(base.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))

    def mul(A, B):
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = base.zero
                for k in range(n):
                    acc = base.add(acc, base.mul(A[i][k], B[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    elems = [mk(v) for v in product(base.elements, repeat=len(cells))]
    one = tuple(tuple(base.one if i == j else base.zero for j in range(n)) for i in range(n))
    return OracleRing(elems, add, mul, mk([base.zero] * len(cells)), one)


def group_ring_cyclic(base: OracleRing, m: int) -> OracleRing:
    def add(x, y):
        return tuple(base.add(a, b) for a, b in zip(x, y))

    def mul(x, y):
        out = [base.zero] * m
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                out[(i + j) % m] = base.add(out[(i + j) % m], base.mul(a, b))
        return tuple(out)

    elems = list(product(base.elements, repeat=m))
    return OracleRing(elems, add, mul, tuple([base.zero] * m),
                      tuple([base.one] + [base.zero] * (m - 1)))


def det_mod(A, n: int) -> int:
    """Leibniz-formula determinant over Z/n (no cofactor expansion)."""
    from itertools import permutations

    size = len(A)
    total = 0
    for perm in permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, p in enumerate(perm):
            term *= A[i][p]
        total += term
    return total % n
