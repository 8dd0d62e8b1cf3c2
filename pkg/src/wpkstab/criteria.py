"""Delta-invariant lower bounds, K-stability verdicts and smooth-case classifiers.

Everything is exact.  The central quantity is the bound

    delta(O_X(1)) >= (n+1) * a_r / d

available whenever some weight ``a_r > 1`` divides ``d``.  Rescaling to the
anticanonical class divides by the Fano index: ``delta(-K_X) >= bound / iota``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Optional

from wpkstab.core import (
    HypersurfaceFamily,
    fano_index,
    is_linear_cone,
    is_wellformed_ambient,
    smoothness_necessary,
)

__all__ = [
    "PreconditionError",
    "LinearConeError",
    "FanoIndexError",
    "BoundError",
    "DeltaBound",
    "VerdictTag",
    "Verdict",
    "Bound1Check",
    "RatioSearch",
    "SmoothCase",
    "ExceptionRow",
    "EXCEPTION_ROWS",
    "SmoothClassification",
    "delta_lower_bound",
    "projective_space_bound",
    "best_bound",
    "kstability_verdict",
    "johnson_kollar",
    "lemma_bound1_check",
    "ratio_extremum_search",
    "matching_exception_rows",
    "is_item0_locus",
    "classify_smooth",
    "corollary3_verdict",
]


class PreconditionError(ValueError):
    """A hypothesis of a criterion fails; ``failed`` lists which ones."""

    def __init__(self, failed):
        self.failed = tuple(failed)
        super().__init__("precondition failed: " + "; ".join(self.failed))


class LinearConeError(PreconditionError):
    pass


class FanoIndexError(PreconditionError):
    pass


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class DeltaBound:
    """Lower bound ``(n+1) * witness_weight / d`` for ``delta(O_X(1))``.

    ``witness_r`` indexes the ascending weights.  ``projective`` marks the
    all-weights-one case, where the bound ``(n+1)/d`` comes from the smooth
    hypersurface in ordinary projective space rather than from a weight > 1.
    """

    witness_r: int
    witness_weight: int
    bound: Fraction
    projective: bool = False


class VerdictTag(str, enum.Enum):
    NOT_APPLICABLE = "NotApplicable"
    NOT_FANO = "NotFano"
    KSTABLE = "KStable"
    DELTA_GE_ONE = "DeltaGeOne"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    tag: VerdictTag
    detail: Optional[DeltaBound] = None
    delta_anticanonical_bound: Optional[Fraction] = None
    reason: Optional[str] = None
    equality: bool = False
    shape: Optional[str] = None

    @property
    def certified(self) -> bool:
        """True when the verdict certifies ``delta(-K_X) >= 1``."""
        return self.tag in (VerdictTag.KSTABLE, VerdictTag.DELTA_GE_ONE)


def delta_lower_bound(f: HypersurfaceFamily) -> Optional[DeltaBound]:
    """Best bound from a weight ``a_r > 1`` dividing ``d``, or ``None``.

    Ties between equal maximal weights go to the smallest ascending index.
    Raises :class:`LinearConeError` when ``d`` equals a weight.
    """
    if is_linear_cone(f):
        raise LinearConeError([f"linear cone: d={f.degree} is a weight"])
    d = f.degree
    best = None
    for r, a in enumerate(f.weights):
        if a > 1 and d % a == 0 and (best is None or a > f.weights[best]):
            best = r
    if best is None:
        return None
    a = f.weights[best]
    return DeltaBound(best, a, Fraction((f.dim + 1) * a, d))


def projective_space_bound(f: HypersurfaceFamily) -> Optional[DeltaBound]:
    """Bound ``(n+1)/d`` for a hypersurface in ordinary projective space.

    Applies only when every weight is 1 and the family is not a hyperplane.
    """
    if any(a != 1 for a in f.weights) or is_linear_cone(f):
        return None
    return DeltaBound(len(f.weights) - 1, 1, Fraction(f.dim + 1, f.degree), True)


def best_bound(f: HypersurfaceFamily) -> Optional[DeltaBound]:
    """:func:`delta_lower_bound`, falling back to :func:`projective_space_bound`."""
    return delta_lower_bound(f) or projective_space_bound(f)


def kstability_verdict(f: HypersurfaceFamily) -> Verdict:
    """Verdict from the bound: K-stable when ``bound >= iota`` and ``n >= 3``.

    For ``n < 3`` the same inequality only yields ``delta(-K_X) >= 1``,
    reported as ``DeltaGeOne``.
    """
    if is_linear_cone(f):
        return Verdict(VerdictTag.NOT_APPLICABLE, reason="LinearCone")
    iota = fano_index(f)
    if iota <= 0:
        return Verdict(VerdictTag.NOT_FANO)
    b = best_bound(f)
    if b is None:
        return Verdict(VerdictTag.INCONCLUSIVE, reason="no weight > 1 divides d")
    anti = b.bound / iota
    if b.bound >= iota:
        tag = VerdictTag.KSTABLE if f.dim >= 3 else VerdictTag.DELTA_GE_ONE
        return Verdict(tag, b, anti, equality=b.bound == iota)
    return Verdict(VerdictTag.INCONCLUSIVE, b, anti, reason="bound below index")


def johnson_kollar(f: HypersurfaceFamily) -> bool:
    """Johnson-Kollár criterion ``n d < (n+1) a_0 a_1`` for index-1 families."""
    iota = fano_index(f)
    if iota != 1:
        raise FanoIndexError([f"index is {iota}, criterion needs index 1"])
    n = f.dim
    a0, a1 = f.weights[0], f.weights[1]
    return n * f.degree < (n + 1) * a0 * a1


@dataclass(frozen=True)
class Bound1Check:
    holds: bool
    equality: bool
    a0_gt1_on_equality: bool
    ratio: Fraction


def lemma_bound1_check(f: HypersurfaceFamily) -> Bound1Check:
    """Check ``(n+1) a_{n+1} / d >= 1`` and that equality forces ``a_0 > 1``.

    Hypotheses: index 1, quasi-smooth flag set, well-formed ambient and
    ``a_{n+1} | d``.  All failing hypotheses are listed in the error.
    """
    failed = []
    top = f.weights[-1]
    if f.degree % top:
        failed.append(f"a_(n+1)={top} does not divide d={f.degree}")
    iota = fano_index(f)
    if iota != 1:
        failed.append(f"index is {iota}, not 1")
    if f.quasi_smooth is not True:
        failed.append("quasi_smooth flag not set")
    if not is_wellformed_ambient(f.ambient):
        failed.append("ambient not well-formed")
    if failed:
        raise PreconditionError(failed)
    ratio = Fraction((f.dim + 1) * top, f.degree)
    equality = ratio == 1
    return Bound1Check(
        holds=ratio >= 1,
        equality=equality,
        a0_gt1_on_equality=(not equality) or f.weights[0] > 1,
        ratio=ratio,
    )


@dataclass
class RatioSearch:
    """Result of the exhaustive sweep of ``sum(b) / prod(b)``."""

    max_ratio: Fraction
    argmax: tuple[int, ...]
    argmax_all: list[tuple[int, ...]]
    violations: list[tuple[tuple[int, ...], Fraction]]
    visited: int = 0
    pruned: int = 0

    def ratio_of(self, b) -> Fraction:
        return Fraction(sum(b), prod(b))


_THIRD = Fraction(1, 3)


def ratio_extremum_search(k_min: int = 3, k_max: int = 6, b_max: int = 60) -> RatioSearch:
    """Sweep pairwise-coprime ``1 < b_1 < ... < b_k <= b_max``, ``k_min <= k <= k_max``.

    Returns the maximum of ``sum(b)/prod(b)``, every tuple attaining it and
    every tuple exceeding 1/3.  This is a finite check only.

    Pruning: appending ``c >= 2`` to a prefix with sum ``S >= 2`` and product
    ``P`` never raises the ratio, and ``(S + c)/(P c)`` decreases in ``c``.
    So ``S/(P (b_last + 1)) + 1/P`` bounds every completion of the prefix;
    the prefix is cut when that bound is below both the running maximum and
    1/3, which keeps every violation and every tie for the maximum.
    """
    if not (3 <= k_min <= k_max) or b_max < 5:
        raise BoundError(
            f"need 3 <= k_min <= k_max and b_max >= 5, got "
            f"k_min={k_min}, k_max={k_max}, b_max={b_max}"
        )
    best: Optional[Fraction] = None
    argmax_all: list[tuple[int, ...]] = []
    violations = []
    visited = pruned = 0
    stack: list[int] = []

    def descend(s: int, p: int):
        nonlocal best, visited, pruned
        k = len(stack)
        if k >= k_min:
            visited += 1
            ratio = Fraction(s, p)
            t = tuple(stack)
            if best is None or ratio > best:
                best, argmax_all[:] = ratio, [t]
            elif ratio == best:
                argmax_all.append(t)
            if ratio > _THIRD:
                violations.append((t, ratio))
        if k == k_max:
            return
        last = stack[-1] if stack else 1
        for c in range(last + 1, b_max + 1):
            if any(gcd(c, b) != 1 for b in stack):
                continue
            if k >= 1:
                ub = Fraction(s, p * c) + Fraction(1, p)
                if best is not None and ub < best and ub <= _THIRD:
                    # every larger c gives a smaller bound as well
                    pruned += 1
                    break
            stack.append(c)
            descend(s + c, p * c)
            stack.pop()

    descend(0, 1)
    return RatioSearch(best, argmax_all[0], argmax_all, violations, visited, pruned)


class SmoothCase(str, enum.Enum):
    AN_EQUALS_1 = "AnEquals1"
    AN1_EQUALS_1_AN_GT_1 = "An1Equals1AnGt1"
    AN1_GT_1 = "An1Gt1"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ExceptionRow:
    """One row of the smooth-case exception tables (gamma <= 1 outcomes)."""

    tag: str
    case: SmoothCase
    iota: int
    a_n: Optional[int]
    a_top: int
    degree: Optional[int]
    description: str

    def predicate(self, f: HypersurfaceFamily, case: SmoothCase) -> bool:
        ws = f.weights
        if case is not self.case or fano_index(f) != self.iota or ws[-1] != self.a_top:
            return False
        if self.a_n is not None and ws[-2] != self.a_n:
            return False
        if self.degree is not None and f.degree != self.degree:
            return False
        return True

    def gamma(self, f: HypersurfaceFamily) -> Fraction:
        """Closed-form gamma the table records for this row."""
        d = f.degree
        if self.tag == "1b":
            k = d // 2
            return Fraction(2, 3) + Fraction(1, 3 * k)
        if self.tag == "2b":
            return 1 - Fraction(1, d)
        return Fraction(1)


EXCEPTION_ROWS = (
    ExceptionRow("1a", SmoothCase.AN_EQUALS_1, 2, None, 2, None, "iota=2, a_{n+1}=2, gamma=1"),
    ExceptionRow("1b", SmoothCase.AN_EQUALS_1, 3, None, 2, None, "iota=3, d=2k, a_{n+1}=2, gamma=2/3+1/(3k)"),
    ExceptionRow("1c", SmoothCase.AN_EQUALS_1, 3, None, 3, None, "iota=3, a_{n+1}=3, gamma=1"),
    ExceptionRow("2a", SmoothCase.AN1_EQUALS_1_AN_GT_1, 2, 2, 3, 6, "iota=2, d=6, a_n=2, a_{n+1}=3, gamma=1"),
    ExceptionRow("2b", SmoothCase.AN1_EQUALS_1_AN_GT_1, 3, 2, 3, None, "iota=3, a_n=2, a_{n+1}=3, gamma=1-1/d"),
    ExceptionRow("2c", SmoothCase.AN1_EQUALS_1_AN_GT_1, 3, 3, 4, 12, "iota=3, d=12, a_n=3, a_{n+1}=4, gamma=1"),
)


@dataclass(frozen=True)
class SmoothClassification:
    case_label: SmoothCase
    gamma: Fraction
    exception: Optional[ExceptionRow]
    item0_equality: bool
    matches: tuple[ExceptionRow, ...] = field(default=(), repr=False)


def _smooth_preconditions(f: HypersurfaceFamily) -> None:
    failed = []
    if not smoothness_necessary(f):
        failed.append("weights do not all divide d or are not pairwise coprime")
    if fano_index(f) < 1:
        failed.append(f"index {fano_index(f)} < 1")
    if f.weights[-1] <= 1:
        failed.append("a_(n+1) must exceed 1")
    if is_linear_cone(f):
        failed.append("linear cone")
    if failed:
        raise PreconditionError(failed)


def _smooth_case(f: HypersurfaceFamily) -> SmoothCase:
    ws = f.weights
    if ws[-2] == 1:
        return SmoothCase.AN_EQUALS_1
    if ws[-3] == 1:
        return SmoothCase.AN1_EQUALS_1_AN_GT_1
    return SmoothCase.AN1_GT_1


def matching_exception_rows(f: HypersurfaceFamily, case: SmoothCase, gamma: Fraction):
    """Rows whose shape predicate holds and whose recorded gamma equals ``gamma``."""
    return tuple(
        row for row in EXCEPTION_ROWS
        if row.predicate(f, case) and row.gamma(f) == gamma
    )


def is_item0_locus(f: HypersurfaceFamily) -> bool:
    """``X_{2(n+1)} ⊂ P(1^(n), 2, n+1)`` with ``n`` even."""
    n = f.dim
    return (
        n % 2 == 0
        and f.degree == 2 * (n + 1)
        and f.weights == (1,) * n + (2, n + 1)
    )


def classify_smooth(f: HypersurfaceFamily) -> SmoothClassification:
    """Case label, exact ``gamma = (n+1) a_{n+1} / (iota d)`` and exception row.

    ``exception`` is set only for ``iota <= 3`` and ``gamma <= 1`` and only
    when exactly one table row matches; ``matches`` keeps all matching rows
    so sweeps can detect zero or multiple matches.
    """
    _smooth_preconditions(f)
    iota = fano_index(f)
    top = f.weights[-1]
    gamma = Fraction((f.dim + 1) * top, iota * f.degree)
    case = _smooth_case(f)
    matches: tuple[ExceptionRow, ...] = ()
    if iota <= 3 and gamma <= 1:
        matches = matching_exception_rows(f, case, gamma)
    exception = matches[0] if len(matches) == 1 else None
    item0 = gamma == Fraction(top, 2 * iota)
    return SmoothClassification(case, gamma, exception, item0, matches)


def corollary3_verdict(f: HypersurfaceFamily) -> Verdict:
    """Smooth-case verdict for index 1, 2 or 3.

    ``gamma > 1`` gives ``delta(-K_X) > 1`` and hence K-stability in every
    dimension.  ``gamma == 1`` falls back on the equality case of the main
    bound (K-stable for ``n >= 3``).  ``gamma < 1`` occurs only on the two
    index-3 shapes ``X_{2k} ⊂ P(1,...,1,2)`` and ``X_{6k} ⊂ P(1,...,1,2,3)``,
    which stay inconclusive.
    """
    _smooth_preconditions(f)
    iota = fano_index(f)
    if iota > 3:
        raise FanoIndexError([f"index {iota} > 3"])
    cls = classify_smooth(f)
    b = delta_lower_bound(f)
    assert b is not None and b.witness_weight == f.weights[-1]
    if cls.gamma > 1:
        return Verdict(VerdictTag.KSTABLE, b, cls.gamma)
    if cls.gamma == 1:
        tag = VerdictTag.KSTABLE if f.dim >= 3 else VerdictTag.DELTA_GE_ONE
        return Verdict(tag, b, cls.gamma, equality=True)
    shape = None
    if cls.exception is not None and cls.exception.tag == "1b":
        shape = f"X_{{2k}} ⊂ P(1,...,1,2), k={f.degree // 2}"
    elif cls.exception is not None and cls.exception.tag == "2b":
        shape = f"X_{{6k}} ⊂ P(1,...,1,2,3), k={f.degree // 6}"
    return Verdict(
        VerdictTag.INCONCLUSIVE, b, cls.gamma,
        reason="gamma < 1 on an index-3 exception shape", shape=shape,
    )
