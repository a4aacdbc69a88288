"""Ring-level classification: every flag decided exhaustively with certificates."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Union

import numpy as np

from ..ring.core import FiniteRing
from ..ring.ideals import ideal_nil_index, quotient
from ..ring.structure import (
    center_mask,
    characteristic,
    idempotent_mask,
    idempotents,
    is_semipotent,
    jacobson_mask,
    jacobson_radical,
    nil_mask,
    unit_mask,
)
from . import witness as W

FLAG_ORDER = (
    "UU",
    "UNC",
    "nil_clean_ring",
    "strongly_nil_clean_ring",
    "UNII",
    "strong_UNII",
    "UII",
    "strong_UII",
    "strongly_2_nil_clean",
    "boolean",
    "reduced",
    "clean",
    "two_primal",
    "semipotent",
    "U_eq_1",
    "U_eq_1_plus_idem",
    "U_eq_1_plus_J",
    "J_card",
    "J_nil_index",
    "center_of_R_mod_J_boolean",
    "subdirect_Z3",
)
NUMERIC_FLAGS = ("J_card", "J_nil_index")
DEGENERATE = "degenerate"
UNKNOWN = "unknown"

# elementary operations allowed for a single quadratic-in-idempotents search
DEFAULT_WORK_LIMIT = 500_000_000
_CHUNK = 1 << 22

FlagValue = Union[bool, int, str]


@dataclass(frozen=True)
class FlagResult:
    value: FlagValue
    counterexample: Optional[dict] = None
    elapsed_ms: float = 0.0


@dataclass
class ClassificationReport:
    descriptor: str
    cardinality: int
    characteristic: int
    flags: dict[str, FlagValue]
    witnesses: dict[str, list] = field(default_factory=dict)
    counterexamples: dict[str, dict] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, name: str) -> FlagValue:
        return self.flags[name]

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "descriptor": self.descriptor,
            "cardinality": self.cardinality,
            "characteristic": self.characteristic,
            "flags": {k: self.flags[k] for k in FLAG_ORDER},
            "witnesses": {k: self.witnesses[k] for k in FLAG_ORDER if k in self.witnesses},
            "counterexamples": {k: self.counterexamples[k] for k in FLAG_ORDER
                                if k in self.counterexamples},
        }
        if timings:
            out["timings_ms"] = {k: round(self.timings[k], 3) for k in FLAG_ORDER
                                 if k in self.timings}
        return out


@dataclass(frozen=True)
class QuotientProfile:
    """Facts about R/J(R) used by the structure theorems."""

    cardinality: int
    radical_zero: bool
    center_boolean: bool
    subdirect_Z3: bool
    counterexample: Optional[dict] = None

    @property
    def product_of_F2_matrix_rings(self) -> bool:
        # semisimple with Boolean center: every simple factor is a matrix ring over F2
        return self.radical_zero and self.center_boolean


# -- helpers --------------------------------------------------------------------


def _ex(R: FiniteRing, a: int, **extra) -> dict:
    return {"element": W.element_json(R, a), **extra}


def _units(R: FiniteRing) -> np.ndarray:
    return np.flatnonzero(unit_mask(R))


def _first_failure(R: FiniteRing, domain: np.ndarray, test: Callable[[np.ndarray], np.ndarray],
                   width: int) -> Optional[int]:
    """First element of ``domain`` where the vectorized ``test`` is False."""
    step = max(1, _CHUNK // max(1, width))
    for start in range(0, len(domain), step):
        part = domain[start:start + step]
        bad = np.flatnonzero(~test(part))
        if bad.size:
            return int(part[bad[0]])
    return None


def _exists_idempotent(R: FiniteRing, domain: np.ndarray, target: np.ndarray) -> Optional[int]:
    """First a in domain with no idempotent e making a - e land in ``target``."""
    E = idempotents(R)
    return _first_failure(R, domain, lambda D: target[R.sub_vec(D[:, None], E[None, :])].any(axis=1),
                          len(E))


def _set_equal(R: FiniteRing, A: np.ndarray, B: np.ndarray) -> Optional[int]:
    diff = np.setxor1d(np.unique(A), np.unique(B))
    return int(diff[0]) if diff.size else None


# -- individual flags ------------------------------------------------------------


def _flag_UU(R):
    nil = nil_mask(R)
    bad = _first_failure(R, _units(R), lambda D: nil[R.sub_vec(D, R.one)], 1)
    return FlagResult(True) if bad is None else FlagResult(
        False, _ex(R, bad, reason="unit minus 1 is not nilpotent"))


def _flag_UNC(R):
    bad = _exists_idempotent(R, _units(R), nil_mask(R))
    return FlagResult(True) if bad is None else FlagResult(
        False, _ex(R, bad, reason="unit with no nil-clean decomposition"))


def _flag_nil_clean_ring(R):
    bad = _exists_idempotent(R, R.elements(), nil_mask(R))
    return FlagResult(True) if bad is None else FlagResult(
        False, _ex(R, bad, reason="element with no nil-clean decomposition"))


def _flag_strongly_nil_clean_ring(R):
    nil = nil_mask(R)
    x = R.elements()
    bad = np.flatnonzero(~nil[R.sub_vec(x, R.mul_vec(x, x))])
    return FlagResult(True) if not bad.size else FlagResult(
        False, _ex(R, int(bad[0]), reason="a - a^2 is not nilpotent"))


def _flag_UNII(R):
    _, sums, _ = W._idempotent_pairs(R)
    S = np.unique(sums)
    nil = nil_mask(R)
    bad = _first_failure(R, _units(R), lambda D: nil[R.sub_vec(D[:, None], S[None, :])].any(axis=1),
                         len(S))
    return FlagResult(True) if bad is None else FlagResult(
        False, _ex(R, bad, reason="unit is not nilpotent plus two idempotents"))


def _commuting_pair_search(R: FiniteRing, domain: np.ndarray, with_nilpotent: bool,
                           work_limit: int, what: str) -> FlagResult:
    m = len(idempotents(R))
    if len(domain) * m * m > work_limit:
        return FlagResult(UNKNOWN, {"reason": f"search exceeds work limit {work_limit}"})
    for a in domain:
        if not W._pair_mask(R, int(a), True, with_nilpotent).any():
            return FlagResult(False, _ex(R, int(a), reason=what))
    return FlagResult(True)


def _flag_strong_UNII(R, work_limit):
    return _commuting_pair_search(R, _units(R), True, work_limit,
                                  "unit is not nilpotent plus two idempotents, all commuting")


def _flag_strongly_2_nil_clean(R, work_limit):
    return _commuting_pair_search(R, R.elements(), True, work_limit,
                                  "element is not nilpotent plus two idempotents, all commuting")


def _flag_UII(R, commuting: bool):
    _, sums, commute = W._idempotent_pairs(R)
    attainable = np.zeros(R.cardinality, dtype=bool)
    attainable[sums[commute] if commuting else sums.ravel()] = True
    U = _units(R)
    bad = U[~attainable[U]]
    kind = "two commuting idempotents" if commuting else "two idempotents"
    return FlagResult(True) if not bad.size else FlagResult(
        False, _ex(R, int(bad[0]), reason=f"unit is not a sum of {kind}"))


def _flag_boolean(R):
    bad = np.flatnonzero(~idempotent_mask(R))
    return FlagResult(True) if not bad.size else FlagResult(
        False, _ex(R, int(bad[0]), reason="not idempotent"))


def _flag_reduced(R):
    nil = nil_mask(R).copy()
    nil[R.zero] = False
    bad = np.flatnonzero(nil)
    return FlagResult(True) if not bad.size else FlagResult(
        False, _ex(R, int(bad[0]), reason="nonzero nilpotent"))


def _flag_clean(R):
    bad = _exists_idempotent(R, R.elements(), unit_mask(R))
    return FlagResult(True) if bad is None else FlagResult(
        False, _ex(R, bad, reason="not a unit plus an idempotent"))


def _flag_two_primal(R):
    bad = np.flatnonzero(nil_mask(R) & ~jacobson_mask(R))
    return FlagResult(True) if not bad.size else FlagResult(
        False, _ex(R, int(bad[0]), reason="nilpotent outside J(R)"))


def _flag_semipotent(R):
    ok, a = is_semipotent(R)
    return FlagResult(True) if ok else FlagResult(
        False, _ex(R, a, reason="aR has no nonzero idempotent and a is not in J(R)"))


def _flag_U_eq_1(R):
    U = _units(R)
    bad = U[U != R.one]
    return FlagResult(True) if not bad.size else FlagResult(
        False, _ex(R, int(bad[0]), reason="unit other than 1"))


def _flag_U_eq(R, other: np.ndarray, what: str):
    bad = _set_equal(R, _units(R), R.add_vec(R.one, other))
    return FlagResult(True) if bad is None else FlagResult(
        False, _ex(R, bad, reason=f"in exactly one of U(R) and {what}"))


def _flag_subdirect_Z3(R):
    if characteristic(R) != 3:
        return FlagResult(False, {"reason": f"characteristic is {characteristic(R)}, not 3"})
    tri = np.zeros(R.cardinality, dtype=bool)
    tri[W.tripotents(R)] = True
    bad = np.flatnonzero(~tri)
    return FlagResult(True) if not bad.size else FlagResult(
        False, _ex(R, int(bad[0]), reason="x^3 != x"))


def radical_quotient(R: FiniteRing) -> FiniteRing:
    """R/J(R), built once per ring."""
    return R.cached("R_mod_J", lambda: quotient(R, jacobson_radical(R), label=f"{R.label}/J")[0])


def quotient_mod_J_profile(R: FiniteRing) -> QuotientProfile:
    """Build R/J(R) and report radical, center and tripotent facts about it."""
    def compute():
        Q = radical_quotient(R)
        rad = jacobson_mask(Q).copy()
        rad[Q.zero] = False
        cex = None
        if rad.any():
            cex = _ex(Q, int(np.flatnonzero(rad)[0]), reason="nonzero radical element of R/J")
        central = np.flatnonzero(center_mask(Q))
        non_idem = central[~idempotent_mask(Q)[central]]
        if cex is None and non_idem.size:
            cex = _ex(Q, int(non_idem[0]), reason="central element of R/J that is not idempotent")
        return QuotientProfile(
            cardinality=Q.cardinality,
            radical_zero=not rad.any(),
            center_boolean=not non_idem.size,
            subdirect_Z3=_flag_subdirect_Z3(Q).value is True,
            counterexample=cex,
        )
    return R.cached("classify.quotient_mod_J", compute)


def _flag_center_mod_J(R):
    prof = quotient_mod_J_profile(R)
    return FlagResult(True) if prof.product_of_F2_matrix_rings else FlagResult(
        False, prof.counterexample)


# -- evaluation ---------------------------------------------------------------------


def _evaluators(work_limit: int) -> dict[str, Callable[[FiniteRing], FlagResult]]:
    return {
        "UU": _flag_UU,
        "UNC": _flag_UNC,
        "nil_clean_ring": _flag_nil_clean_ring,
        "strongly_nil_clean_ring": _flag_strongly_nil_clean_ring,
        "UNII": _flag_UNII,
        "strong_UNII": lambda R: _flag_strong_UNII(R, work_limit),
        "UII": lambda R: _flag_UII(R, False),
        "strong_UII": lambda R: _flag_UII(R, True),
        "strongly_2_nil_clean": lambda R: _flag_strongly_2_nil_clean(R, work_limit),
        "boolean": _flag_boolean,
        "reduced": _flag_reduced,
        "clean": _flag_clean,
        "two_primal": _flag_two_primal,
        "semipotent": _flag_semipotent,
        "U_eq_1": _flag_U_eq_1,
        "U_eq_1_plus_idem": lambda R: _flag_U_eq(R, idempotents(R), "1 + idem(R)"),
        "U_eq_1_plus_J": lambda R: _flag_U_eq(R, jacobson_radical(R).members, "1 + J(R)"),
        "J_card": lambda R: FlagResult(len(jacobson_radical(R))),
        "J_nil_index": lambda R: FlagResult(ideal_nil_index(jacobson_radical(R))),
        "center_of_R_mod_J_boolean": _flag_center_mod_J,
        "subdirect_Z3": _flag_subdirect_Z3,
    }


def ring_flag(R: FiniteRing, name: str, work_limit: int = DEFAULT_WORK_LIMIT) -> FlagResult:
    """Evaluate (and cache) a single classification flag."""
    if name not in FLAG_ORDER:
        raise KeyError(f"unknown flag {name!r}")

    def compute():
        if R.is_zero_ring():
            return FlagResult(1 if name in NUMERIC_FLAGS else DEGENERATE)
        t0 = time.perf_counter()
        res = _evaluators(work_limit)[name](R)
        return FlagResult(res.value, res.counterexample, (time.perf_counter() - t0) * 1e3)

    key = f"flag.{name}" if work_limit == DEFAULT_WORK_LIMIT else f"flag.{name}.{work_limit}"
    return R.cached(key, compute)


def flag_value(R: FiniteRing, name: str) -> FlagValue:
    return ring_flag(R, name).value


# -- witness listings for true flags --------------------------------------------------


def _witness_listing(R: FiniteRing, name: str, cap: int) -> Optional[list]:
    U = _units(R)
    x = R.elements()
    finders: dict[str, tuple[np.ndarray, Callable[[int], Any]]] = {
        "UU": (U, lambda a: W.strongly_nil_clean_elem(R, a)),
        "UNC": (U, lambda a: (W.nil_clean_witnesses(R, a, 1) or [None])[0]),
        "nil_clean_ring": (x, lambda a: (W.nil_clean_witnesses(R, a, 1) or [None])[0]),
        "strongly_nil_clean_ring": (x, lambda a: W.strongly_nil_clean_elem(R, a)),
        "UNII": (U, lambda a: W.sum_nilpotent_two_idem(R, a, False)),
        "strong_UNII": (U, lambda a: W.sum_nilpotent_two_idem(R, a, True)),
        "UII": (U, lambda a: W.sum_two_idem(R, a, False)),
        "strong_UII": (U, lambda a: W.sum_two_idem(R, a, True)),
        "strongly_2_nil_clean": (x, lambda a: W.sum_nilpotent_two_idem(R, a, True)),
    }
    if name not in finders:
        return None
    domain, find = finders[name]
    out = []
    for a in domain[:cap]:
        w = find(int(a))
        out.append({"element": W.element_json(R, int(a)), "witness": w.as_dict(R)})
    return out


def ring_class_flags(
    R: FiniteRing,
    *,
    witnesses: bool = False,
    witness_cap: int = 16,
    work_limit: int = DEFAULT_WORK_LIMIT,
) -> ClassificationReport:
    """Classify R against every flag; false flags carry a counterexample."""
    results = {name: ring_flag(R, name, work_limit) for name in FLAG_ORDER}
    report = ClassificationReport(
        descriptor=R.label,
        cardinality=R.cardinality,
        characteristic=characteristic(R),
        flags={k: r.value for k, r in results.items()},
        counterexamples={k: r.counterexample for k, r in results.items()
                         if r.counterexample is not None},
        timings={k: r.elapsed_ms for k, r in results.items()},
    )
    if witnesses and not R.is_zero_ring():
        for name, r in results.items():
            if r.value is True:
                listing = _witness_listing(R, name, witness_cap)
                if listing is not None:
                    report.witnesses[name] = listing
    return report
