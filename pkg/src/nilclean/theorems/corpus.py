"""Versioned ring corpora: the built-in default and plain-text corpus files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Union

from ..construct.descriptor import RingDescriptor, cardinality_bound, parse_ring_expr

DEFAULT_CORPUS_VERSION = "2"

U_3CYCLE = "[[0,0,1],[1,0,0],[0,1,0]]"

REQUIRED_ENTRIES = (
    "Z(2)", "Z(3)", "Z(4)", "Z(6)", "Z(8)", "Z(9)", "Z(12)", "Z(16)",
    "B(2)", "GF(2,2)", "GF(2,3)", "GF(3,2)",
    "M(2,Z(2))", "M(3,Z(2))", "M(2,Z(4))", "M(2,Z(3))", "M(2,Z(6))", "M(2,GF(2,2))",
    "T(2,Z(2))", "T(3,Z(2))", "T(2,Z(4))", "BT(Z(2),1,2)",
    "TP(Z(2),3)", "TP(Z(4),2)", "TE(Z(2))", "TE(Z(4))",
    "DS(Z(2),Z(3))", "DS(TP(Z(2),2),M(2,Z(2)))",
    "GR(Z(2),C(2))", "GR(Z(2),CP(C(2),C(2)))", "GR(Z(4),C(2))", "GR(Z(2),C(3))",
    "GR(Z(3),C(2))", "GR(Z(3),C(3))", "GR(Z(2),D4)", "GR(Z(2),Q8)",
    f"SUB(M(3,Z(2));{U_3CYCLE})", "Q(Z(12);4)", "EX27(2,2)",
)

# Extra rings: more odd characteristic, a mixed-characteristic group ring and
# bigger 2-groups, lifting the element total above 5000.
EXTENSION_ENTRIES = (
    "Z(5)", "B(3)", "GF(2,4)", "M(2,Z(5))", "T(2,GF(2,2))", "TP(Z(3),2)",
    "GR(Z(2),C(4))", "GR(Z(6),C(2))", "GR(Z(4),CP(C(2),C(2)))", "DS(Z(3),Z(3))",
    "EX27(1,1)",
)


@dataclass(frozen=True)
class CorpusEntry:
    descriptor: RingDescriptor
    cardinality: int

    @property
    def text(self) -> str:
        return str(self.descriptor)


@dataclass(frozen=True)
class Corpus:
    version: str
    entries: tuple[CorpusEntry, ...]

    def __iter__(self) -> Iterator[CorpusEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def total_elements(self) -> int:
        return sum(e.cardinality for e in self.entries)

    def largest(self) -> CorpusEntry:
        return max(self.entries, key=lambda e: e.cardinality)

    @classmethod
    def from_texts(cls, texts, version: str = "custom") -> "Corpus":
        entries = []
        for t in texts:
            d = parse_ring_expr(t) if isinstance(t, str) else t
            entries.append(CorpusEntry(d, _exact_cardinality(d)))
        return cls(version, tuple(entries))


def _exact_cardinality(d: RingDescriptor) -> int:
    if d.head in ("SUB", "Q"):
        from ..construct.descriptor import build_ring

        return build_ring(d).cardinality
    return cardinality_bound(d)


def default_corpus(extended: bool = True) -> Corpus:
    """The built-in corpus; ``extended=False`` gives only the required entries."""
    texts = REQUIRED_ENTRIES + (EXTENSION_ENTRIES if extended else ())
    return Corpus.from_texts(texts, DEFAULT_CORPUS_VERSION if extended else "required")


def load_corpus(source: Union[str, Path]) -> Corpus:
    """Read one ring expression per line; lines starting with '#' are comments."""
    path = Path(source)
    lines = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return Corpus.from_texts(lines, version=f"file:{path.name}")
