"""Bounded brute-force generation of candidate families.

Degree is not enumerated: it is fixed by the index through
``d = sum(a_i) - iota``.  Tuples come out non-decreasing and in
lexicographic order, so the stream is duplicate-free and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Optional

from wpkstab.core import HypersurfaceFamily, WeightSystem, is_wellformed_ambient
from wpkstab.criteria import BoundError

__all__ = ["EnumSpec", "enumerate_candidates", "partition_leading"]


@dataclass(frozen=True)
class EnumSpec:
    dim: int
    index: int
    max_weight: int
    max_degree: int
    require_smooth_necessary: bool = False
    require_wellformed: bool = True

    def __post_init__(self):
        if self.dim < 1:
            raise BoundError(f"dim must be >= 1, got {self.dim}")
        if not 1 <= self.max_weight <= self.max_degree:
            raise BoundError(
                f"need 1 <= max_weight <= max_degree, got "
                f"{self.max_weight}, {self.max_degree}"
            )

    @property
    def length(self) -> int:
        return self.dim + 2


def enumerate_candidates(
    spec: EnumSpec, leading: Optional[range] = None
) -> Iterator[HypersurfaceFamily]:
    """Yield every family allowed by ``spec`` that is not a linear cone.

    ``leading`` restricts the first (smallest) weight; disjoint ranges give
    disjoint streams whose union is the full stream.

    With ``require_smooth_necessary`` the search only grows tuples whose
    weights above 1 are pairwise coprime and have product at most
    ``max_degree`` (all of them must divide ``d``).
    """
    length = spec.length
    iota = spec.index
    max_sum = spec.max_degree + iota
    smooth = spec.require_smooth_necessary
    first = leading if leading is not None else range(1, spec.max_weight + 1)
    tup: list[int] = []

    def emit(total: int):
        d = total - iota
        if d < 1 or d > spec.max_degree or d in tup:
            return None
        if smooth and any(d % a for a in tup):
            return None
        fam = HypersurfaceFamily(WeightSystem(tup), d)
        if spec.require_wellformed and not is_wellformed_ambient(fam.ambient):
            return None
        return fam

    def rec(total: int, big_prod: int) -> Iterator[HypersurfaceFamily]:
        k = len(tup)
        if k == length:
            fam = emit(total)
            if fam is not None:
                yield fam
            return
        lo = tup[-1] if tup else 1
        remaining = length - k
        choices = range(lo, spec.max_weight + 1) if tup else first
        for a in choices:
            if a < lo:
                continue
            # the rest of the tuple is at least a each
            if total + a * remaining > max_sum:
                break
            nxt = big_prod
            if smooth and a > 1:
                if any(gcd(a, b) != 1 for b in tup if b > 1):
                    continue
                nxt = big_prod * a
                if nxt > spec.max_degree:
                    break
            tup.append(a)
            yield from rec(total + a, nxt)
            tup.pop()

    yield from rec(0, 1)


def partition_leading(spec: EnumSpec, parts: int) -> list[range]:
    """Split the leading-weight range into ``parts`` contiguous pieces."""
    if parts < 1:
        raise BoundError("parts must be >= 1")
    n = spec.max_weight
    step, extra = divmod(n, parts)
    out, start = [], 1
    for i in range(parts):
        size = step + (1 if i < extra else 0)
        out.append(range(start, start + size))
        start += size
    return [r for r in out if len(r)]
