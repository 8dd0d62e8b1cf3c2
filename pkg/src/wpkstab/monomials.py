"""Weighted monomials, graded-piece dimensions and coordinate-point checks.

Exponent vectors index the ascending weights of the ambient space.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from wpkstab.core import HypersurfaceFamily, WeightSystem

__all__ = [
    "enumerate_monomials",
    "count_monomials",
    "graded_dimensions",
    "h0_hypersurface",
    "hilbert_function",
    "coordinate_point_avoidable",
    "PointWitness",
    "qs_at_Pr_witnesses",
]


def _weights(w) -> tuple[int, ...]:
    return w.weights if isinstance(w, WeightSystem) else tuple(w)


def enumerate_monomials(w: WeightSystem, k: int) -> list[tuple[int, ...]]:
    """All exponent vectors ``e`` with ``sum(e_i a_i) == k``.

    Ordered lexicographically from the largest vector down, so for weights
    ``(1, 1, 2)`` and ``k = 2`` the first vector is ``(2, 0, 0)``.
    Meant for small degrees; use :func:`count_monomials` for sizes.
    """
    ws = _weights(w)
    if k < 0:
        return []
    out: list[tuple[int, ...]] = []
    exps = [0] * len(ws)

    def rec(i: int, rest: int):
        if i == len(ws) - 1:
            if rest % ws[i] == 0:
                exps[i] = rest // ws[i]
                out.append(tuple(exps))
            return
        for e in range(rest // ws[i], -1, -1):
            exps[i] = e
            rec(i + 1, rest - e * ws[i])
        exps[i] = 0

    rec(0, k)
    return out


def graded_dimensions(w, upto: int) -> list[int]:
    """``[|S_0|, ..., |S_upto|]`` for the polynomial ring with the given weights.

    Coin-change style dynamic programme; equals the coefficients of
    ``prod 1/(1 - t^a_i)`` up to ``t^upto``.
    """
    if upto < 0:
        return []
    counts = [0] * (upto + 1)
    counts[0] = 1
    for a in _weights(w):
        for m in range(a, upto + 1):
            counts[m] += counts[m - a]
    return counts


def count_monomials(w, k: int) -> int:
    """``|S_k|``, zero for negative ``k``."""
    if k < 0:
        return 0
    return graded_dimensions(w, k)[k]


def hilbert_function(f: HypersurfaceFamily, upto: int) -> list[int]:
    """``[h0(O_X(k)) for k in 0..upto]``, i.e. ``|S_k| - |S_{k-d}|``."""
    s = graded_dimensions(f.ambient, upto)
    d = f.degree
    return [s[k] - (s[k - d] if k >= d else 0) for k in range(upto + 1)]


def h0_hypersurface(f: HypersurfaceFamily, k: int) -> int:
    """Dimension of the degree-``k`` piece of ``S/(F)``; zero for ``k < 0``."""
    if k < 0:
        return 0
    return hilbert_function(f, k)[k]


def _check_index(f: HypersurfaceFamily, r: int) -> None:
    if not 0 <= r < len(f.weights):
        raise IndexError(f"weight index {r} out of range for {len(f.weights)} weights")


def coordinate_point_avoidable(f: HypersurfaceFamily, r: int) -> bool:
    """True iff ``a_r | d``, so ``z_r^(d/a_r)`` can appear and ``P_r`` can be moved off X."""
    _check_index(f, r)
    return f.degree % f.weights[r] == 0


class PointWitness(NamedTuple):
    """Monomial ``z_j z_r^c`` of degree ``d``; ``j is None`` for the pure power ``z_r^c``."""

    j: Optional[int]
    c: int


def qs_at_Pr_witnesses(f: HypersurfaceFamily, r: int) -> list[PointWitness]:
    """Monomial shapes of degree ``d`` certifying quasi-smoothness at ``P_r``.

    Pure power first (when ``a_r | d``), then every ``(j, c)`` with
    ``j != r``, ``c >= 1`` and ``d == a_j + c a_r``, in index order.
    """
    _check_index(f, r)
    ws, d = f.weights, f.degree
    ar = ws[r]
    out = []
    if d % ar == 0:
        out.append(PointWitness(None, d // ar))
    for j, aj in enumerate(ws):
        if j == r:
            continue
        rest = d - aj
        if rest >= ar and rest % ar == 0:
            out.append(PointWitness(j, rest // ar))
    return out

