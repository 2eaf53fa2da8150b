"""Toric model of a cyclic quotient surface singularity of type (r, s).

The group acts by ``(z1, z2) -> (eta^s z1, eta z2)``.  If
``r/s = [[q_1, ..., q_k]]`` the minimal resolution is a chain of rational
curves ``E_1, ..., E_k`` with ``E_i^2 = -q_i``; in the lattice ``Z^2`` the
curve ``E_i`` is the ray ``(P_{i-1} - Q_{i-1}, P_{i-1})`` between ``(1, 0)``
and ``(r - s, r)``.

The curve ``C_i = (z1^{lambda_i} + z2^{mu_i} = 0)/G`` with
``lambda_i = P_{i-1}``, ``mu_i = r_i`` meets the exceptional locus once,
transversally, on ``E_i``.  Its pullback is ``C~_i + sum_j alpha^i_j E_j`` with

    alpha^i_j = lambda_{min(i,j)} * mu_{max(i,j)} / r.

All chain positions are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .contfrac import EuclidData, MinusCF, euclid_data, minus_expand

__all__ = [
    "CyclicQuotientSurface",
    "ResolutionChain",
    "PullbackMatrix",
    "resolve",
    "intersection_matrix",
    "pullback_coeffs",
    "pullback_oracle",
    "pair_divisors",
    "semi_invariant_weight",
]


@dataclass(frozen=True)
class CyclicQuotientSurface:
    r: int
    s: int
    minusCF: MinusCF
    euclid: EuclidData

    @property
    def k(self) -> int:
        return len(self.minusCF)

    def lam(self, i: int) -> int:
        """Exponent of ``z1`` in the curve through ``E_i``: ``P_{i-1}``."""
        return self.euclid.P(i - 1)

    def mu(self, i: int) -> int:
        """Exponent of ``z2`` in the curve through ``E_i``: ``r_i``."""
        return self.euclid.r(i)

    @property
    def lams(self) -> tuple[int, ...]:
        return tuple(self.lam(i) for i in range(1, self.k + 1))

    @property
    def mus(self) -> tuple[int, ...]:
        return tuple(self.mu(i) for i in range(1, self.k + 1))


@dataclass(frozen=True)
class ResolutionChain:
    rays: tuple[tuple[int, int], ...]  # v_0 .. v_{k+1}
    selfInt: tuple[int, ...]  # -q_1 .. -q_k

    @property
    def k(self) -> int:
        return len(self.selfInt)

    @property
    def curves(self) -> range:
        return range(1, self.k + 1)

    @property
    def exceptional_rays(self) -> tuple[tuple[int, int], ...]:
        return self.rays[1:-1]


@dataclass(frozen=True)
class PullbackMatrix:
    """``alpha[i-1][j-1]`` is the coefficient of ``E_j`` in ``p^* C_i``."""

    alpha: tuple[tuple[Fraction, ...], ...]

    def __call__(self, i: int, j: int) -> Fraction:
        return self.alpha[i - 1][j - 1]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.alpha[i - 1]

    @property
    def size(self) -> int:
        return len(self.alpha)


def _check_rs(r: int, s: int):
    if not (0 < s < r) or gcd(r, s) != 1:
        raise ValueError(f"need 0 < s < r and gcd(r, s) = 1, got r={r}, s={s}")


def resolve(r: int, s: int) -> tuple[CyclicQuotientSurface, ResolutionChain]:
    """Minimal resolution of the cyclic quotient of type ``(r, s)``.

    >>> _, chain = resolve(49, 34)
    >>> chain.selfInt
    (-2, -2, -5, -4)
    """
    r, s = int(r), int(s)
    _check_rs(r, s)
    cf = minus_expand(Fraction(r, s))
    eu = euclid_data(cf, (r, s))
    k = len(cf)
    rays = [(1, 0)]
    for i in range(1, k + 1):
        P, Q = eu.P(i - 1), eu.Q(i - 1)
        rays.append((P - Q, P))
    rays.append((r - s, r))
    surface = CyclicQuotientSurface(r, s, cf, eu)
    chain = ResolutionChain(tuple(rays), tuple(-q for q in cf.terms))
    _check_chain(chain)
    return surface, chain


def _check_chain(chain: ResolutionChain):
    v = chain.rays
    for i in range(1, chain.k + 1):
        q = -chain.selfInt[i - 1]
        if (v[i - 1][0] + v[i + 1][0], v[i - 1][1] + v[i + 1][1]) != (q * v[i][0], q * v[i][1]):
            raise AssertionError(f"chain relation fails at position {i}")
    for i in range(chain.k + 1):
        if abs(v[i][0] * v[i + 1][1] - v[i][1] * v[i + 1][0]) != 1:
            raise AssertionError(f"rays {i}, {i + 1} do not span a smooth cone")


def intersection_matrix(chain: ResolutionChain) -> np.ndarray:
    """Tridiagonal matrix of ``E_i . E_j`` (object dtype keeps exact ints)."""
    k = chain.k
    mat = np.zeros((k, k), dtype=object)
    for i in range(k):
        mat[i, i] = chain.selfInt[i]
        if i + 1 < k:
            mat[i, i + 1] = mat[i + 1, i] = 1
    return mat


def pullback_coeffs(surface: CyclicQuotientSurface) -> PullbackMatrix:
    r, k = surface.r, surface.k
    lam, mu = surface.lams, surface.mus
    rows = []
    for i in range(k):
        rows.append(tuple(
            Fraction(mu[i] * lam[j], r) if j <= i else Fraction(lam[i] * mu[j], r)
            for j in range(k)
        ))
    return PullbackMatrix(tuple(rows))


def _solve_tridiagonal(diag: Sequence[int], rhs: Sequence) -> list[Fraction]:
    # Thomas algorithm over Q for a symmetric tridiagonal matrix with unit
    # off-diagonal entries (the shape of every resolution chain)
    n = len(diag)
    c, d = [Fraction(0)] * n, [Fraction(0)] * n
    for i in range(n):
        den = Fraction(diag[i]) - (c[i - 1] if i else 0)
        if den == 0:
            raise ArithmeticError("intersection matrix is singular")
        c[i] = 1 / den
        d[i] = (Fraction(rhs[i]) - (d[i - 1] if i else 0)) / den
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        x[i] = d[i] - (c[i] * x[i + 1] if i + 1 < n else 0)
    return x


def pullback_oracle(surface: CyclicQuotientSurface, i: int, chain: ResolutionChain | None = None):
    """Coefficients ``x`` with ``(C~_i + sum_j x_j E_j) . E_h = 0`` for all h.

    Solved from the self-intersections alone, independently of the closed
    form used by :func:`pullback_coeffs`.
    """
    if chain is None:
        chain = resolve(surface.r, surface.s)[1]
    k = chain.k
    if not 1 <= i <= k:
        raise IndexError(i)
    rhs = [-1 if h == i - 1 else 0 for h in range(k)]
    return tuple(_solve_tridiagonal(chain.selfInt, rhs))


def pair_divisors(surface_or_alpha, nu: Sequence[int], nu2: Sequence[int]) -> Fraction:
    """Local intersection number ``sum_{i,j} nu_i nu2_j alpha^i_j``.

    ``nu`` and ``nu2`` are multiplicities of the curves ``C_1..C_k`` indexed
    by chain position.
    """
    alpha = surface_or_alpha
    if isinstance(alpha, CyclicQuotientSurface):
        alpha = pullback_coeffs(alpha)
    total = Fraction(0)
    for i, x in enumerate(nu):
        if not x:
            continue
        row = alpha.alpha[i]
        for j, y in enumerate(nu2):
            if y:
                total += x * y * row[j]
    return total


def semi_invariant_weight(surface: CyclicQuotientSurface, exponents: tuple[int, int]) -> int:
    """Weight of ``z1^p z2^q`` under the generator, as a residue mod r."""
    p, q = exponents
    return (surface.s * p + q) % surface.r
