"""Ring expressions: descriptor tree, text grammar, and ring building.

Grammar (whitespace-insensitive)::

    expr  := Z(n) | B(k) | GF(p,k) | M(n,expr) | T(n,expr) | BT(expr,n,m)
           | DS(expr{,expr}) | TP(expr,k) | TE(expr) | GR(expr,group)
           | SUB(expr;elem{,elem}) | Q(expr;elem{,elem}) | EX27(n,k)
    group := C(n) | CP(group,group) | D4 | Q8
    elem  := int | [[..],..] | {c*word{+c*word}} | #index
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Union

from ..ring.core import DEFAULT_LIMITS, CardinalityError, FiniteRing, Limits
from ..ring.ideals import ideal_generated, quotient, subring_generated
from . import groups as grp
from . import rings

RING_SIGNATURES = {
    "Z": ("int",),
    "B": ("int",),
    "GF": ("int", "int"),
    "M": ("int", "ring"),
    "T": ("int", "ring"),
    "BT": ("ring", "int", "int"),
    "DS": ("ring+",),
    "TP": ("ring", "int"),
    "TE": ("ring",),
    "GR": ("ring", "group"),
    "SUB": ("ring",),
    "Q": ("ring",),
    "EX27": ("int", "int"),
}
WITH_ELEMENTS = ("SUB", "Q")
GROUP_SIGNATURES = {"C": ("int",), "CP": ("group", "group"), "D4": None, "Q8": None}


class ParseError(ValueError):
    """Malformed ring expression; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int, kind: str = "syntax"):
        super().__init__(f"{kind} error at offset {offset}: {message}")
        self.offset = offset
        self.kind = kind


@dataclass(frozen=True)
class ElemLiteral:
    """Parsed element literal; ``kind`` is int, index, matrix or group."""

    kind: str
    value: Any

    def __str__(self) -> str:
        if self.kind == "int":
            return str(self.value)
        if self.kind == "index":
            return f"#{self.value}"
        if self.kind == "matrix":
            return "[" + ",".join("[" + ",".join(map(str, row)) + "]" for row in self.value) + "]"
        return "{" + "+".join(f"{c}*{w}" for c, w in self.value) + "}"


@dataclass(frozen=True)
class GroupDescriptor:
    head: str
    args: tuple = ()

    def __str__(self) -> str:
        if GROUP_SIGNATURES[self.head] is None:
            return self.head
        return f"{self.head}(" + ",".join(map(str, self.args)) + ")"


@dataclass(frozen=True)
class RingDescriptor:
    head: str
    args: tuple = ()
    elems: tuple[ElemLiteral, ...] = ()

    def __str__(self) -> str:
        inner = ",".join(map(str, self.args))
        if self.head in WITH_ELEMENTS:
            inner += ";" + ",".join(map(str, self.elems))
        return f"{self.head}({inner})"

    @property
    def children(self) -> tuple["RingDescriptor", ...]:
        return tuple(a for a in self.args if isinstance(a, RingDescriptor))


Arg = Union[int, RingDescriptor, GroupDescriptor]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str, kind: str = "syntax", offset: int | None = None):
        raise ParseError(message, self.pos if offset is None else offset, kind)

    def expect(self, ch: str) -> None:
        got = self.peek()
        if got != ch:
            shown = repr(got) if got else "end of input"
            self.error(f"expected {ch!r}, found {shown}")
        self.pos += 1

    def ident(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            if self.pos == start and not self.text[self.pos].isalpha():
                break
            self.pos += 1
        if self.pos == start:
            self.error("expected a constructor name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "+", "-"):
            self.pos = start
            self.error("expected an integer")
        return int(digits)

    def arg(self) -> tuple[int, Arg]:
        ch = self.peek()
        at = self.pos
        if ch.isdigit() or ch in "+-":
            return at, self.integer()
        if ch.isalpha():
            return at, self.node()
        self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")

    def node(self) -> Union[RingDescriptor, GroupDescriptor]:
        start = self.pos
        head = self.ident()
        if head in GROUP_SIGNATURES:
            return self.group_node(head, start)
        if head not in RING_SIGNATURES:
            self.error(f"unknown constructor {head!r}", offset=start)
        self.expect("(")
        args: list[tuple[int, Arg]] = [self.arg()]
        elems: list[ElemLiteral] = []
        while True:
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                args.append(self.arg())
            elif ch == ";":
                if head not in WITH_ELEMENTS:
                    self.error(f"{head} takes no element list")
                self.pos += 1
                elems.append(self.elem())
                while self.peek() == ",":
                    self.pos += 1
                    elems.append(self.elem())
                self.expect(")")
                break
            elif ch == ")":
                self.pos += 1
                break
            else:
                self.error(f"expected ',' or ')', found {ch!r}" if ch else "unexpected end of input")
        if head in WITH_ELEMENTS and not elems:
            self.error(f"{head} needs ';' and at least one element", kind="arity", offset=start)
        _check_signature(head, RING_SIGNATURES[head], args, start)
        desc = RingDescriptor(head, tuple(a for _, a in args), tuple(elems))
        _check_range(desc, [at for at, _ in args])
        return desc

    def group_node(self, head: str, start: int) -> GroupDescriptor:
        sig = GROUP_SIGNATURES[head]
        if sig is None:
            return GroupDescriptor(head)
        self.expect("(")
        args = [self.arg()]
        while self.peek() == ",":
            self.pos += 1
            args.append(self.arg())
        self.expect(")")
        _check_signature(head, sig, args, start)
        if head == "C" and args[0][1] < 1:
            raise ParseError("cyclic group order must be >= 1", args[0][0], "range")
        return GroupDescriptor(head, tuple(a for _, a in args))

    def elem(self) -> ElemLiteral:
        ch = self.peek()
        if ch == "#":
            self.pos += 1
            return ElemLiteral("index", self.integer())
        if ch == "[":
            return ElemLiteral("matrix", self.matrix())
        if ch == "{":
            return ElemLiteral("group", self.group_sum())
        if ch.isdigit() or ch == "-":
            return ElemLiteral("int", self.integer())
        self.error(f"expected an element literal, found {ch!r}" if ch else "expected an element literal")

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        self.expect("[")
        rows = [self.row()]
        while self.peek() == ",":
            self.pos += 1
            rows.append(self.row())
        self.expect("]")
        return tuple(rows)

    def row(self) -> tuple[int, ...]:
        self.expect("[")
        vals = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            vals.append(self.integer())
        self.expect("]")
        return tuple(vals)

    def group_sum(self) -> tuple[tuple[int, str], ...]:
        self.expect("{")
        terms = []
        while True:
            coeff = self.integer()
            self.expect("*")
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] not in "+}":
                self.pos += 1
            word = "".join(self.text[start:self.pos].split())
            if not word:
                self.error("expected a group element name")
            terms.append((coeff, word))
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                continue
            self.expect("}")
            return tuple(terms)


def _check_signature(head: str, sig: tuple, args: list, start: int) -> None:
    kinds = ["int" if isinstance(a, int) else "ring" if isinstance(a, RingDescriptor) else "group"
             for _, a in args]
    if sig == ("ring+",):
        expected = ["ring"] * len(args)
    else:
        expected = list(sig)
    if len(kinds) != len(expected):
        raise ParseError(f"{head} takes {len(expected)} argument(s), got {len(kinds)}", start, "arity")
    for (at, _), got, want in zip(args, kinds, expected):
        if got != want:
            raise ParseError(f"{head} expects a {want} here, got a {got}", at, "arity")


def _check_range(desc: RingDescriptor, offsets: list[int]) -> None:
    h, a = desc.head, desc.args

    def bad(i: int, message: str):
        raise ParseError(message, offsets[i], "range")

    if h == "Z" and a[0] < 2:
        bad(0, "Z(n) needs n >= 2")
    elif h == "B" and a[0] < 1:
        bad(0, "B(k) needs k >= 1")
    elif h == "GF":
        p, k = a
        if not rings._is_prime(p):
            bad(0, f"{p} is not prime")
        if k < 1 or p ** k > 16 or (k > 1 and (p, k) not in rings.IRREDUCIBLE):
            bad(1, f"GF({p},{k}) unsupported: field size must be at most 16")
    elif h in ("M", "T") and a[0] < 1:
        bad(0, "matrix size must be >= 1")
    elif h == "BT":
        for i in (1, 2):
            if a[i] < 1:
                bad(i, "block size must be >= 1")
    elif h == "TP" and a[1] < 1:
        bad(1, "truncation degree must be >= 1")
    elif h == "EX27":
        for i in (0, 1):
            if a[i] < 1:
                bad(i, "EX27 parameters must be >= 1")


def parse_ring_expr(text: str) -> RingDescriptor:
    """Parse the canonical text form into a :class:`RingDescriptor`."""
    p = _Parser(text)
    start = p.pos
    node = p.node() if p.peek().isalpha() else p.error("expected a ring expression")
    if isinstance(node, GroupDescriptor):
        raise ParseError("expected a ring expression, got a group", start, "syntax")
    if p.peek():
        p.error(f"trailing input {p.text[p.pos:]!r}")
    return node


def parse_element_literal(text: str) -> ElemLiteral:
    p = _Parser(text)
    lit = p.elem()
    if p.peek():
        p.error(f"trailing input {p.text[p.pos:]!r}")
    return lit


def render(desc: RingDescriptor) -> str:
    return str(desc)


# -- building ----------------------------------------------------------------


def build_group(desc: GroupDescriptor) -> grp.FiniteGroup:
    if desc.head == "C":
        return grp.cyclic(desc.args[0])
    if desc.head == "CP":
        return grp.direct_product(build_group(desc.args[0]), build_group(desc.args[1]))
    if desc.head == "D4":
        return grp.dihedral(4)
    if desc.head == "Q8":
        return grp.quaternion8()
    raise ValueError(f"unknown group {desc.head}")


def group_order(desc: GroupDescriptor) -> int:
    if desc.head == "C":
        return desc.args[0]
    if desc.head == "CP":
        return group_order(desc.args[0]) * group_order(desc.args[1])
    return 8


def cardinality_bound(desc: RingDescriptor) -> int:
    """Exact cardinality, or an upper bound for SUB and Q."""
    h, a = desc.head, desc.args
    if h == "Z":
        return a[0]
    if h == "B":
        return 2 ** a[0]
    if h == "GF":
        return a[0] ** a[1]
    if h == "M":
        return cardinality_bound(a[1]) ** (a[0] ** 2)
    if h == "T":
        return cardinality_bound(a[1]) ** (a[0] * (a[0] + 1) // 2)
    if h == "BT":
        n, m = a[1], a[2]
        return cardinality_bound(a[0]) ** (n * n + n * m + m * m)
    if h == "DS":
        out = 1
        for c in a:
            out *= cardinality_bound(c)
        return out
    if h == "TP":
        return cardinality_bound(a[0]) ** a[1]
    if h == "TE":
        return cardinality_bound(a[0]) ** 2
    if h == "GR":
        return cardinality_bound(a[0]) ** group_order(a[1])
    if h in WITH_ELEMENTS:
        return cardinality_bound(a[0])
    if h == "EX27":
        n, k = a
        return 2 ** (n * n + n * k + k)
    raise ValueError(f"unknown constructor {h}")


def resolve_element(R: FiniteRing, lit: ElemLiteral) -> int:
    """Map an element literal to an index of R."""
    if lit.kind == "index":
        if not 0 <= lit.value < R.cardinality:
            raise ValueError(f"#{lit.value} out of range for {R.label}")
        return lit.value
    return R.carrier.from_literal(lit)


def parse_element(R: FiniteRing, text: str) -> int:
    return resolve_element(R, parse_element_literal(text))


def build_ring(
    desc: RingDescriptor | str,
    *,
    backend: str = "auto",
    limits: Limits = DEFAULT_LIMITS,
    verify: bool = True,
) -> FiniteRing:
    """Construct, verify and seal the ring a descriptor denotes."""
    if isinstance(desc, str):
        desc = parse_ring_expr(desc)
    size = cardinality_bound(desc)
    if desc.head not in WITH_ELEMENTS and size > limits.structural:
        raise CardinalityError(f"{desc} would have {size} elements; limit is {limits.structural}")
    return _build(desc, backend, limits, verify)


def _child(desc: RingDescriptor, limits: Limits, verify: bool) -> FiniteRing:
    return build_ring(desc, limits=limits, verify=verify)


def _build(desc: RingDescriptor, backend: str, limits: Limits, verify: bool) -> FiniteRing:
    h, a = desc.head, desc.args
    kw = dict(backend=backend, limits=limits)
    if h == "Z":
        R = rings.zmod(a[0], **kw)
    elif h == "B":
        R = rings.boolean_power(a[0], **kw)
    elif h == "GF":
        R = rings.gf(a[0], a[1], **kw)
    elif h == "M":
        R = rings.matrix_ring(a[0], _child(a[1], limits, verify), **kw)
    elif h == "T":
        R = rings.triangular_ring(a[0], _child(a[1], limits, verify), **kw)
    elif h == "BT":
        R = rings.block_triangular(_child(a[0], limits, verify), a[1], a[2], **kw)
    elif h == "DS":
        R = rings.direct_sum([_child(c, limits, verify) for c in a], **kw)
    elif h == "TP":
        R = rings.truncated_poly(_child(a[0], limits, verify), a[1], **kw)
    elif h == "TE":
        R = rings.trivial_extension(_child(a[0], limits, verify), **kw)
    elif h == "GR":
        R = rings.group_ring(_child(a[0], limits, verify), build_group(a[1]), **kw)
    elif h == "SUB":
        parent = _child(a[0], limits, verify)
        gens = [resolve_element(parent, lit) for lit in desc.elems]
        return subring_generated(parent, gens, label=str(desc)).ring._relabel(desc)
    elif h == "Q":
        parent = _child(a[0], limits, verify)
        gens = [resolve_element(parent, lit) for lit in desc.elems]
        Q, _ = quotient(parent, ideal_generated(parent, gens), label=str(desc))
        return Q._relabel(desc)
    elif h == "EX27":
        R = rings.ex27(a[0], a[1], **kw)
    else:
        raise ValueError(f"unknown constructor {h}")
    return R._relabel(desc)
