"""The combinatorial bound ``B(M, N)`` and the Gorenstein index inequality.

For a composition ``L = (L_1, ..., L_J)`` put ``N_{-1} = N_0 = N`` and
``N_j = L_j N_{j-1} + N_{j-2}``; then ``B(L, N) = N_J`` and ``B(M, N)`` is the
maximum over compositions of ``M``.  The bound checked is

    index(X, x) <= B(D.D' + 1, n)

for general members ``D, D'`` of ``|nK|``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .fullsheaf import member_class_of_nK, nu
from .pairing import pair, toric_pair_oracle
from .slt_model import gorenstein_index

__all__ = [
    "Composition",
    "compositions",
    "B_of",
    "B_max",
    "B_max_enumerated",
    "ENUMERATION_CAP",
    "verify_index_bound",
]

ENUMERATION_CAP = 25


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError(f"a composition has positive parts, got {self.parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)


def compositions(M: int) -> Iterator[Composition]:
    """All ``2^(M-1)`` compositions of ``M``, from the cut points of ``1..M-1``."""
    if M < 1:
        raise ValueError("M >= 1")
    for mask in range(1 << (M - 1)):
        parts, run = [], 1
        for bit in range(M - 1):
            if mask >> bit & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(tuple(parts))


def B_of(L, N: int) -> int:
    """``N_J`` of the recursion for ``L``.

    >>> B_of((1, 2), 1)
    5
    """
    parts = L.parts if isinstance(L, Composition) else tuple(L)
    Composition(parts)
    if N < 1:
        raise ValueError("N >= 1")
    prev, cur = N, N
    for x in parts:
        prev, cur = cur, x * cur + prev
    return cur


def _pareto(pairs):
    # the step (cur, prev) -> (x cur + prev, cur) is monotone in both
    # coordinates, so dominated states never lead to the maximum
    out = []
    for c, p in sorted(pairs, reverse=True):
        if not out or p > out[-1][1]:
            out.append((c, p))
    return out


@lru_cache(maxsize=None)
def _best_unit(M: int) -> int:
    front = {M: [(1, 1)]}
    for rem in range(M, 0, -1):
        for c, p in _pareto(front.pop(rem, [])):
            for x in range(1, rem + 1):
                front.setdefault(rem - x, []).append((x * c + p, c))
    best = max(c for c, _ in front[0])
    return best


def B_max(M: int, N: int) -> int:
    """Maximum of ``B(L, N)`` over compositions of ``M``.  ``B(L, N)`` is
    linear in ``N``, so this is ``N`` times a frontier search at ``N = 1``.

    >>> [B_max(M, 1) for M in range(1, 6)]
    [2, 3, 5, 8, 13]
    """
    if M < 1 or N < 1:
        raise ValueError("M, N >= 1")
    return N * _best_unit(M)


def B_max_enumerated(M: int, N: int) -> int:
    if M > ENUMERATION_CAP:
        raise ValueError(f"enumeration is capped at M = {ENUMERATION_CAP}")
    return max(B_of(c, N) for c in compositions(M))


def verify_index_bound(model, n: int) -> dict:
    """Check ``index <= B(D.D' + 1, n)`` for general members of ``|nK|``.

    ``D.D'`` is ``nu(n*)^2`` with ``n* = -n mod m``; a non-integral value is
    flagged instead of being rounded.
    """
    if n < 1 or n % model.m == 0:
        raise ValueError(f"need n >= 1 and m not dividing n (m = {model.m})")
    idx = gorenstein_index(model)
    v = nu(model, member_class_of_nK(model, n))
    dd = pair(model, v, v)
    agree = dd == toric_pair_oracle(model, v, v)
    rep = {"index": idx, "n": n, "n_star": member_class_of_nK(model, n), "DDprime": dd,
           "routes_agree": agree, "integral": dd.denominator == 1}
    if not rep["integral"]:
        rep.update(B=None, ok=False)
        return rep
    B = B_max(int(dd) + 1, n)
    rep.update(B=B, ok=agree and idx <= B)
    return rep

