"""Domain types and the structural predicates on weights and degree.

Weights are always stored in ascending order, so ``weights[-1]`` is the
largest weight ``a_{n+1}``, ``weights[-2]`` is ``a_n`` and so on.  Rational
quantities are :class:`fractions.Fraction`, which is exact and reduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Optional

__all__ = [
    "InputError",
    "WeightSystem",
    "HypersurfaceFamily",
    "is_wellformed_ambient",
    "c1_count",
    "fano_index",
    "is_linear_cone",
    "smoothness_necessary",
    "fundamental_degree",
]


class InputError(ValueError):
    """Invalid weights or degree.  ``field`` names the offending input."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


@dataclass(frozen=True)
class WeightSystem:
    """Weights ``(a_0, ..., a_{n+1})`` of a weighted projective space.

    The constructor accepts any iterable of positive integers and stores
    them ascending; ``original`` keeps the input order and ``order`` is the
    permutation with ``original[order[k]] == weights[k]``.
    """

    weights: tuple[int, ...]
    original: tuple[int, ...] = field(init=False, repr=False, compare=False)
    order: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, weights: Iterable[int]):
        raw = tuple(weights)
        for w in raw:
            if isinstance(w, bool) or not isinstance(w, int):
                raise InputError(f"weight {w!r} is not an integer", "weights")
            if w < 1:
                raise InputError(f"weight {w} is not positive", "weights")
        if len(raw) < 3:
            raise InputError(
                f"need at least 3 weights, got {len(raw)}", "weights"
            )
        order = tuple(sorted(range(len(raw)), key=lambda i: (raw[i], i)))
        object.__setattr__(self, "weights", tuple(raw[i] for i in order))
        object.__setattr__(self, "original", raw)
        object.__setattr__(self, "order", order)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __str__(self) -> str:
        return "P(" + ",".join(map(str, self.weights)) + ")"


@dataclass(frozen=True)
class HypersurfaceFamily:
    """A family ``X_d ⊂ P(a_0, ..., a_{n+1})`` with optional database metadata.

    ``quasi_smooth`` and ``terminal`` are taken on trust from the source
    database; nothing here computes them.
    """

    ambient: WeightSystem
    degree: int
    id: Optional[int] = None
    quasi_smooth: Optional[bool] = None
    terminal: Optional[bool] = None

    def __post_init__(self):
        if not isinstance(self.ambient, WeightSystem):
            object.__setattr__(self, "ambient", WeightSystem(self.ambient))
        d = self.degree
        if isinstance(d, bool) or not isinstance(d, int):
            raise InputError(f"degree {d!r} is not an integer", "degree")
        if d < 1:
            raise InputError(f"degree {d} is not positive", "degree")

    @classmethod
    def of(cls, weights: Iterable[int], degree: int, **meta) -> "HypersurfaceFamily":
        return cls(WeightSystem(weights), degree, **meta)

    @property
    def weights(self) -> tuple[int, ...]:
        return self.ambient.weights

    @property
    def dim(self) -> int:
        """Dimension ``n`` of the hypersurface (number of weights minus 2)."""
        return len(self.ambient) - 2

    n = dim

    def __str__(self) -> str:
        return f"X_{self.degree} ⊂ {self.ambient}"


def _gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


def is_wellformed_ambient(w: WeightSystem) -> bool:
    """True iff every subfamily obtained by dropping one weight has gcd 1."""
    ws = w.weights
    return all(
        _gcd_all(ws[:i] + ws[i + 1:]) == 1 for i in range(len(ws))
    )


def c1_count(w: WeightSystem) -> int:
    """Number of weights equal to 1."""
    return sum(1 for a in w.weights if a == 1)


def fano_index(f: HypersurfaceFamily) -> int:
    """``sum(a_i) - d``; the family is Fano iff this is positive."""
    return sum(f.weights) - f.degree


def is_linear_cone(f: HypersurfaceFamily) -> bool:
    return f.degree in f.weights


def smoothness_necessary(f: HypersurfaceFamily) -> bool:
    """Every weight divides ``d`` and the weights > 1 are pairwise coprime.

    Two equal weights > 1 fail the coprimality test.
    """
    d = f.degree
    if any(d % a for a in f.weights):
        return False
    big = [a for a in f.weights if a > 1]
    return all(gcd(a, b) == 1 for a, b in combinations(big, 2))


def fundamental_degree(f: HypersurfaceFamily) -> Fraction:
    """Self-intersection ``O_X(1)^n = d / prod(a_i)``."""
    return Fraction(f.degree, prod(f.weights))
