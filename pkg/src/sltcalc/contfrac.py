"""Exact rationals and the two flavours of continued fractions.

``[q_1, ..., q_k]`` denotes the ordinary (plus) continued fraction
``q_1 + 1/(q_2 + ...)`` and ``[[q_1, ..., q_k]]`` the Hirzebruch-Jung (minus)
one ``q_1 - 1/(q_2 - ...)``.  Rationals are :class:`fractions.Fraction`, which
is always kept in lowest terms.

Besides the expansions themselves this module carries the two symbolic
transformation rules used to read off resolution chains of class T
singularities:

* :func:`riemenschneider_transform` turns the plus expansion of ``a/b`` into
  the minus expansions of ``m/a`` and ``m/b`` (``m = a + b``);
* :func:`classT_cf` predicts the plus expansion of ``(dma-1)/(dmb+1)``.

Both return the ground truth computed by direct expansion next to the
symbolic prediction, together with the positions where they disagree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

__all__ = [
    "Fraction",
    "PlusCF",
    "MinusCF",
    "EuclidData",
    "Transform",
    "as_fraction",
    "plus_expand",
    "minus_expand",
    "eval_plus",
    "eval_minus",
    "euclid_data",
    "tables",
    "riemenschneider_transform",
    "riemenschneider_prediction",
    "classT_cf",
    "classT_prediction",
]


@dataclass(frozen=True)
class PlusCF:
    """Plus expansion ``[q_1, ..., q_k]`` in canonical form."""

    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(int(q) for q in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("a continued fraction needs at least one term")
        if any(q < 1 for q in terms):
            raise ValueError(f"plus continued fraction terms must be >= 1: {terms}")
        if len(terms) >= 2 and terms[-1] < 2:
            raise ValueError(f"canonical plus form needs a last term >= 2: {terms}")

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def q(self, i: int) -> int:
        """1-based access, matching the usual ``q_i`` notation."""
        if not 1 <= i <= len(self.terms):
            raise IndexError(i)
        return self.terms[i - 1]

    def value(self) -> Fraction:
        return eval_plus(self)


@dataclass(frozen=True)
class MinusCF:
    """Hirzebruch-Jung expansion ``[[q_1, ..., q_k]]``, every term >= 2."""

    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(int(q) for q in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("a continued fraction needs at least one term")
        if any(q < 2 for q in terms):
            raise ValueError(f"minus continued fraction terms must be >= 2: {terms}")

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def q(self, i: int) -> int:
        if not 1 <= i <= len(self.terms):
            raise IndexError(i)
        return self.terms[i - 1]

    def value(self) -> Fraction:
        return eval_minus(self)


@dataclass(frozen=True)
class EuclidData:
    """Remainders and convergents of a Euclidean run.

    ``remainders[i]`` is ``r_i`` for ``i = 0..k+1``; ``convP[i + 1]`` is
    ``P_i`` and ``convQ[i + 1]`` is ``Q_i`` for ``i = -1..k`` (the lists are
    shifted by one so that index 0 holds ``P_{-1}``).  Use :meth:`P`,
    :meth:`Q` and :meth:`r` for the natural indexing.
    """

    kind: str
    terms: tuple[int, ...]
    remainders: tuple[int, ...]
    convP: tuple[int, ...]
    convQ: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.terms)

    def q(self, i: int) -> int:
        return self.terms[i - 1]

    def r(self, i: int) -> int:
        return self.remainders[i]

    def P(self, i: int) -> int:
        return self.convP[i + 1]

    def Q(self, i: int) -> int:
        return self.convQ[i + 1]

    def PQ(self, i: int) -> int:
        """``P_i + Q_i``; this sum shows up in almost every weight formula."""
        return self.convP[i + 1] + self.convQ[i + 1]


def as_fraction(value, den: int | None = None) -> Fraction:
    if den is not None:
        return Fraction(int(value), int(den))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, tuple) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    return Fraction(value)


def plus_expand(f) -> PlusCF:
    """Canonical plus expansion of a rational ``f >= 1``.

    >>> plus_expand(Fraction(5, 2)).terms
    (2, 2)
    """
    f = as_fraction(f)
    if f <= 0:
        raise ValueError(f"plus_expand needs a positive rational, got {f}")
    if f < 1:
        raise ValueError(f"plus_expand expects num >= den, got {f}")
    a, b = f.numerator, f.denominator
    terms = []
    while b:
        q, rem = divmod(a, b)
        terms.append(q)
        a, b = b, rem
    return PlusCF(tuple(terms))


def minus_expand(f) -> MinusCF:
    """Hirzebruch-Jung expansion of a rational ``f > 1``.

    >>> minus_expand(Fraction(49, 34)).terms
    (2, 2, 5, 4)
    """
    f = as_fraction(f)
    if f <= 1:
        raise ValueError(f"minus_expand needs num > den, got {f}")
    a, b = f.numerator, f.denominator
    terms = []
    while b:
        q = -(-a // b)
        terms.append(q)
        a, b = b, q * b - a
    return MinusCF(tuple(terms))


def _terms(cf) -> tuple[int, ...]:
    if isinstance(cf, (PlusCF, MinusCF)):
        return cf.terms
    return tuple(int(q) for q in cf)


def eval_plus(cf) -> Fraction:
    terms = _terms(cf)
    if not terms:
        raise ValueError("empty continued fraction")
    value = Fraction(terms[-1])
    for q in reversed(terms[:-1]):
        value = q + 1 / value
    return value


def eval_minus(cf) -> Fraction:
    terms = _terms(cf)
    if not terms:
        raise ValueError("empty continued fraction")
    if any(q <= 1 for q in terms):
        raise ValueError(f"minus continued fraction terms must be >= 2: {terms}")
    value = Fraction(terms[-1])
    for q in reversed(terms[:-1]):
        value = q - 1 / value
    return value


def euclid_data(cf, seed: tuple[int, int] | None = None) -> EuclidData:
    """Remainder and convergent tables for ``cf`` started from ``(r_0, r_1)``.

    The seed defaults to (numerator, denominator) of the value of ``cf``.
    """
    if isinstance(cf, PlusCF):
        kind, value = "plus", eval_plus(cf)
    elif isinstance(cf, MinusCF):
        kind, value = "minus", eval_minus(cf)
    else:
        raise TypeError("euclid_data needs a PlusCF or MinusCF")
    if seed is None:
        seed = (value.numerator, value.denominator)
    r0, r1 = int(seed[0]), int(seed[1])
    if r1 == 0 or Fraction(r0, r1) != value:
        raise ValueError(f"seed {seed} is inconsistent with {kind} expansion {cf.terms}")
    return tables(kind, cf.terms, (r0, r1))


def tables(kind: str, terms: Sequence[int], seed: tuple[int, int]) -> EuclidData:
    """Build the recurrence tables for raw ``terms``.

    Unlike :func:`euclid_data` this accepts non-canonical expansions (a
    trailing 1 in a plus expansion), which the odd-length class T models use.
    """
    if kind not in ("plus", "minus"):
        raise ValueError(kind)
    terms = tuple(int(q) for q in terms)
    sign = 1 if kind == "plus" else -1
    rem = [int(seed[0]), int(seed[1])]
    for q in terms:
        rem.append(sign * (rem[-2] - q * rem[-1]))
    if rem[-1] != 0 or rem[-2] != 1:
        raise ValueError(f"seed {tuple(seed)} does not terminate on {terms}")
    P = [0, 1]
    Q = [1, 0] if kind == "plus" else [-1, 0]
    for q in terms:
        P.append(q * P[-1] + sign * P[-2])
        Q.append(q * Q[-1] + sign * Q[-2])
    return EuclidData(kind, terms, tuple(rem), tuple(P), tuple(Q))


# ---------------------------------------------------------------------------
# symbolic transforms


@dataclass(frozen=True)
class Transform:
    """Ground truth next to a symbolic prediction.

    ``mismatches`` lists 0-based positions where the two sequences differ
    (a length difference shows up as the positions past the shorter one).
    ``supported`` is False when the symbolic rule does not apply (degenerate
    index ranges); the prediction is then ``None``.
    """

    truth: tuple[int, ...]
    predicted: tuple[int, ...] | None
    supported: bool = True
    mismatches: tuple[int, ...] = field(default=())

    @property
    def agrees(self) -> bool:
        return self.supported and not self.mismatches


def _compare(truth, predicted, supported=True) -> Transform:
    truth = tuple(truth)
    if predicted is None:
        return Transform(truth, None, False, ())
    predicted = tuple(predicted)
    n = max(len(truth), len(predicted))
    bad = tuple(
        i for i in range(n)
        if i >= len(truth) or i >= len(predicted) or truth[i] != predicted[i]
    )
    return Transform(truth, predicted, supported, bad)


def riemenschneider_prediction(q: Sequence[int], tail: str = "printed"):
    """Symbolic minus expansions of ``m/a`` and ``m/b`` from ``a/b = [q]``.

    ``(2, c)`` stands for ``c`` consecutive 2's.  For even ``k`` the last
    block of ``m/b`` is ``(2, q_k + 1)`` as printed; ``tail="corrected"``
    uses ``(2, q_k - 1)``, which is what direct expansion produces.
    """
    q = tuple(q)
    k = len(q)
    ma: list[int] = []
    mb: list[int] = []
    for i in range(1, k + 1):
        qi = q[i - 1]
        last = i == k
        if i % 2 == 1:
            ma += [2] * (qi if i == 1 else qi - 1)
            mb.append(qi + 1 if last else qi + 2)
        else:
            ma.append(qi + 1 if last else qi + 2)
            if last:
                mb += [2] * (qi + 1 if tail == "printed" else qi - 1)
            else:
                mb += [2] * (qi - 1)
    return tuple(ma), tuple(mb)


def riemenschneider_transform(a: int, m: int, tail: str = "printed"):
    """Minus expansions of ``m/a`` and ``m/b`` for ``m/2 < a < m``.

    Returns a pair of :class:`Transform`; ``truth`` is always the direct
    expansion.
    """
    a, m = int(a), int(m)
    if gcd(a, m) != 1 or not (2 * a > m and a < m):
        raise ValueError(f"need gcd(a, m) = 1 and m/2 < a < m, got a={a}, m={m}")
    b = m - a
    q = plus_expand(Fraction(a, b)).terms
    ma, mb = riemenschneider_prediction(q, tail)
    return (
        _compare(minus_expand(Fraction(m, a)).terms, ma),
        _compare(minus_expand(Fraction(m, b)).terms, mb),
    )


def classT_prediction(q: Sequence[int], d: int):
    """Symbolic plus expansion of ``(dma-1)/(dmb+1)`` from ``a/b = [q]``.

    Returns ``None`` for ``k = 1``, where the case ranges overlap.
    """
    q = tuple(q)
    k = len(q)
    if k == 1:
        return None

    def Q(i):
        return q[i - 1]

    out = []
    if d == 1:
        for i in range(1, 2 * k + 1):
            if i == 1:
                v = Q(1)
            elif i <= k - 1:
                v = Q(i)
            elif i == k:
                v = Q(k) + 1 if k % 2 == 0 else Q(k) - 1
            elif i == k + 1:
                v = Q(k) - 1 if k % 2 == 0 else Q(k) + 1
            elif i <= 2 * k - 1:
                v = Q(2 * k - i + 1)
            else:
                v = Q(1) + 1
            out.append(v)
        return tuple(out)
    for i in range(1, 2 * k + 3):
        if i == 1:
            v = Q(1)
        elif i == 2 * k + 2:
            v = Q(1) + 1
        elif k % 2 == 0:
            if i <= k:
                v = Q(i)
            elif i == k + 1:
                v = d - 1
            elif i == k + 2:
                v = 1
            elif i == k + 3:
                v = Q(k) - 1
            else:
                v = Q(2 * k + 3 - i)
        else:
            if i <= k - 1:
                v = Q(i)
            elif i == k:
                v = Q(k) - 1
            elif i == k + 1:
                v = 1
            elif i == k + 2:
                v = d - 1
            else:
                v = Q(2 * k + 3 - i)
        out.append(v)
    return tuple(out)


def classT_cf(a: int, b: int, d: int, m: int | None = None) -> Transform:
    """Plus expansion of ``(dma-1)/(dmb+1)`` by Euclid, with the prediction."""
    a, b, d = int(a), int(b), int(d)
    if m is None:
        m = a + b
    if m != a + b or not a > b >= 1 or gcd(a, b) != 1 or d < 1:
        raise ValueError(f"need m = a + b, a > b >= 1, gcd(a, b) = 1, d >= 1: {(a, b, d, m)}")
    truth = plus_expand(Fraction(d * m * a - 1, d * m * b + 1)).terms
    q = plus_expand(Fraction(a, b)).terms
    return _compare(truth, classT_prediction(q, d))
