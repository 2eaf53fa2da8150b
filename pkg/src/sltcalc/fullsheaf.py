"""Degrees of the full sheaf ``F(-nK)`` on the exceptional curves.

``nu(model, n)`` assembles the degree vector from the lambda- and
mu-expansions of ``n``; the odd part comes from the lambda side, the even
part from the mu side, and both are kept because the intersection formulas
of :mod:`sltcalc.pairing` depend on the split.

The independent route is :func:`fullsheaf_oracle`.  A general member of
``|M|`` realizes the componentwise minimum of the pullback coefficients
``alpha(nu)_eta = sum_iota alpha^iota_eta nu_iota`` over all effective
``nu`` in the class, so the oracle

1. computes, for every curve ``eta``, the minimum of ``alpha(nu)_eta`` over
   ``{nu >= 0 : class congruence, sum(nu) <= bound}`` by a dynamic program
   over residues (one pass per added curve, ``bound`` passes);
2. reads off the unique candidate from the minimum vector, using
   ``alpha = -M^{-1}`` for the intersection matrix ``M`` (so
   ``nu_h = -sum_j alpha_j M_{jh}``);
3. checks the candidate is effective, integral, of the right class and
   inside the bound.  If that fails the minimum is not attained by a single
   vector and :class:`OracleFailure` is raised.

``enumerate_class`` is the plain brute force over the same bounded set; it
is used to cross-check the dynamic program on small models.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .contfrac import plus_expand, tables
from .cyclic_quotient import intersection_matrix
from .expansions import lambda_expand, mu_expand, mu_index

__all__ = [
    "DivisorVector",
    "TPair",
    "OracleFailure",
    "alpha_vector",
    "nu",
    "fullsheaf_degrees",
    "fullsheaf_oracle",
    "enumerate_class",
    "brute_force_minimum",
    "chart_anchor",
    "nonnormal_degrees",
    "nonnormal_oracle",
    "t_min_bruteforce",
    "t_min_closed_form",
    "in_T",
    "s_t_of",
    "literal_congruence",
    "weight_congruence",
    "general_member_report",
    "member_class_of_nK",
    "member_weight_check",
]

Index = tuple[int, int]


@dataclass(frozen=True)
class DivisorVector:
    """An element of ``L`` with its odd/even split.  ``odd`` lives on
    ``I_o``, ``even`` on ``I_e`` (plus ``(k+1, d)`` in the class T case)."""

    odd: Mapping[Index, int] = field(default_factory=dict)
    even: Mapping[Index, int] = field(default_factory=dict)

    @property
    def total(self) -> dict[Index, int]:
        out = Counter()
        for part in (self.odd, self.even):
            for idx, v in part.items():
                out[idx] += v
        return {idx: v for idx, v in out.items() if v}

    def dense(self, model) -> tuple[int, ...]:
        tot = self.total
        return tuple(tot.get(idx, 0) for idx in model.index)

    @property
    def is_effective(self) -> bool:
        return all(v >= 0 for part in (self.odd, self.even) for v in part.values())

    def __add__(self, other: "DivisorVector") -> "DivisorVector":
        return _combine(self, other, 1)

    def __sub__(self, other: "DivisorVector") -> "DivisorVector":
        return _combine(self, other, -1)

    def scaled(self, c: int) -> "DivisorVector":
        return DivisorVector({i: c * v for i, v in self.odd.items() if v},
                             {i: c * v for i, v in self.even.items() if v})

    def same_as(self, other: "DivisorVector") -> bool:
        return _clean(self.odd) == _clean(other.odd) and _clean(self.even) == _clean(other.even)


def _clean(d):
    return {i: v for i, v in d.items() if v}


def _combine(x, y, c):
    o, e = Counter(x.odd), Counter(x.even)
    for i, v in y.odd.items():
        o[i] += c * v
    for i, v in y.even.items():
        e[i] += c * v
    return DivisorVector(_clean(o), _clean(e))


class TPair(NamedTuple):
    s: int
    t: int


class OracleFailure(RuntimeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report or {}


def _check_n(model, n):
    if not 1 <= n <= model.m - 1:
        raise ValueError(f"need 1 <= n <= m - 1 = {model.m - 1}, got {n}")


# ---------------------------------------------------------------------------
# the combinatorial degree vector


def nu(model, n: int) -> DivisorVector:
    """Degree vector read off the lambda- and mu-expansions of ``n``.

    >>> from sltcalc.slt_model import build_classT
    >>> nu(build_classT(5, 1, 7), 6).dense(build_classT(5, 1, 7))
    (0, 0, 2, 3)
    """
    _check_n(model, n)
    k = model.k
    L = lambda_expand(model, n).entries
    U = mu_expand(model, n).entries
    odd, even = Counter(), Counter()
    if L[0]:
        odd[(1, L[0])] += 1
    for i in range(3, k, 2):
        if L[i - 2]:
            odd[(i, 1)] += L[i - 2]
        if L[i - 1]:
            odd[(i, L[i - 1])] += 1
    if L[k - 1]:
        odd[(k + 1, 1)] += L[k - 1]
    for i in range(2, k + 1, 2):
        if U[i - 2]:
            even[mu_index(model, i, 1)] += U[i - 2]
        if U[i - 1]:
            even[mu_index(model, i, U[i - 1])] += 1
    return DivisorVector(dict(odd), dict(even))


def fullsheaf_degrees(model, n: int) -> dict[Index, int]:
    _need_normal(model)
    v = nu(model, n).total
    return {idx: v.get(idx, 0) for idx in model.index}


def alpha_vector(model, vec) -> dict[Index, Fraction]:
    """``alpha(nu)_eta`` for every ``eta`` of the ambient (chart of) index set."""
    tot = vec.total if isinstance(vec, DivisorVector) else dict(vec)
    idxs = model.index if model.normal else _chart_indices(model, _chart_guess(model, tot))
    return {eta: sum((c * model.alpha_at(iota, eta) for iota, c in tot.items()), Fraction(0))
            for eta in idxs}


def _chart_guess(model, tot):
    charts = {model.chart_of(i) for i in tot}
    if len(charts) > 1:
        raise ValueError("vector spans both charts; take alpha chart by chart")
    return charts.pop() if charts else "o"


def _chart_indices(model, chart):
    return model.indexO if chart == "o" else model.indexE


# ---------------------------------------------------------------------------
# class congruences


def _dprime_split(model):
    dp = -(-model.d // 2)
    k = model.k
    odd = [i for i in model.index if (i[0] % 2 == 1 and i[0] <= k) or (i[0] == k + 1 and i[1] <= dp)]
    even = [i for i in model.index if i not in odd]
    return odd, even


def s_t_of(model, vec) -> TPair:
    """``s(nu) = sum_{I'_o} nu lambda``, ``t(nu) = sum_{I'_e} nu mu`` with the
    ``(k+1)`` block split at ``d' = ceil(d/2)``."""
    _need_normal(model)
    tot = vec.total if isinstance(vec, DivisorVector) else dict(vec)
    odd, even = _dprime_split(model)
    return TPair(sum(tot.get(i, 0) * model.lam(i) for i in odd),
                 sum(tot.get(i, 0) * model.mu(i) for i in even))


def literal_congruence(model, vec, n: int) -> bool:
    s, t = s_t_of(model, vec)
    c = model.d * model.m * model.b
    return (s + (c - 1) * t - c * n) % model.order == 0


def weight_congruence(model, vec, n: int) -> bool:
    """Same class condition through semi-invariant weights:
    ``sum nu mu = -dmb n (mod dm^2)``.  Equivalent to the literal form because
    ``lambda = (dmb - 1) mu`` on every curve and ``(dmb-1)(dma-1) = 1``."""
    tot = vec.total if isinstance(vec, DivisorVector) else dict(vec)
    w = sum(v * model.mu(i) for i, v in tot.items())
    return (w + model.d * model.m * model.b * n) % model.order == 0


# ---------------------------------------------------------------------------
# the alpha-minimality oracle

_BIG = np.iinfo(np.int64).max // 4


def _dp_min(steps: list[int], modulus: int, scaled_alpha: np.ndarray, bound: int) -> np.ndarray:
    """``f[res, eta]`` = least ``sum nu_i A[i, eta]`` over ``nu >= 0``,
    ``sum nu <= bound`` and ``sum nu_i steps_i = res (mod modulus)``."""
    f = np.full((modulus, scaled_alpha.shape[1]), _BIG, dtype=np.int64)
    f[0, :] = 0
    for _ in range(bound):
        g = f.copy()
        for i, st in enumerate(steps):
            np.minimum(g, np.roll(f, st % modulus, axis=0) + scaled_alpha[i], out=g)
        if np.array_equal(g, f):
            break
        f = g
    return f


def _alpha_argmin(idxs, pos, chain, weights, modulus, target, scale, alpha_at, bound):
    if scale * scale * (bound + 1) >= _BIG:
        raise OverflowError("alpha table too large for the int64 dynamic program")
    A = np.array([[int(alpha_at(i, j) * scale) for j in idxs] for i in idxs], dtype=np.int64)
    f = _dp_min(weights, modulus, A, bound)
    best = f[target % modulus]
    if (best >= _BIG).any():
        return None, best
    Mint = intersection_matrix(chain)
    npos = len(idxs)
    al = [0] * npos
    for val, idx in zip(best.tolist(), idxs):
        al[pos[idx] - 1] = val
    cand = {}
    for idx in idxs:
        h = pos[idx] - 1
        num = -sum(al[j] * int(Mint[j, h]) for j in range(npos))
        if num % scale:
            return None, best
        cand[idx] = num // scale
    if min(cand.values()) < 0 or sum(cand.values()) > bound:
        return None, best
    if (sum(cand[i] * w for i, w in zip(idxs, weights)) - target) % modulus:
        return None, best
    return cand, best


def fullsheaf_oracle(model, n: int, slack: int = 4, retry: int = 8, bound: int | None = None) -> dict[Index, int]:
    """Componentwise alpha-minimal effective vector in the class of ``-nK``.

    The search is bounded by ``sum(nu) <= sum(nu(n)) + slack`` (or by
    ``bound``); on failure the bound is widened once by ``retry``.
    """
    _need_normal(model)
    _check_n(model, n)
    idxs = model.index
    weights = [model.mu(i) for i in idxs]
    target = -model.d * model.m * model.b * n
    base = bound if bound is not None else sum(nu(model, n).total.values()) + slack
    for b in (base, base + retry):
        cand, best = _alpha_argmin(idxs, model.chainPosition, model.chain, weights, model.order,
                                   target, model.order, model.alpha_at, b)
        if cand is not None:
            return cand
    raise OracleFailure(f"{model.label}, n={n}: no dominated minimum within sum <= {base + retry}",
                        {"model": model.label, "n": n, "bound": base + retry,
                         "alpha_min": [str(Fraction(int(x), model.order)) for x in best]})


def enumerate_class(model, n: int, bound: int, chart: str | None = None) -> list[dict[Index, int]]:
    """Brute force: every ``nu >= 0`` with ``sum(nu) <= bound`` in the class of
    ``-nK`` (or, on a chart, with ``sigma``/``tau`` congruent to ``n`` mod ``m``)."""
    if model.normal:
        idxs, w, mod, target = model.index, [model.mu(i) for i in model.index], model.order, \
            -model.d * model.m * model.b * n
    else:
        idxs = _chart_indices(model, chart)
        w = [model.lam(i) if chart == "o" else model.mu(i) for i in idxs]
        mod, target = model.m, n
    out = []
    for vec in _compositions(len(idxs), bound):
        if (sum(x * y for x, y in zip(vec, w)) - target) % mod == 0:
            out.append(dict(zip(idxs, vec)))
    return out


def _compositions(n_parts: int, bound: int) -> Iterable[tuple[int, ...]]:
    for total in range(bound + 1):
        for cut in itertools.combinations(range(total + n_parts - 1), n_parts - 1):
            prev, vec = -1, []
            for c in cut:
                vec.append(c - prev - 1)
                prev = c
            vec.append(total + n_parts - 1 - prev - 1)
            yield tuple(vec)


def brute_force_minimum(model, n: int, bound: int, chart: str | None = None):
    """The dominated minimum among :func:`enumerate_class`, or None."""
    cands = enumerate_class(model, n, bound, chart)
    if not cands:
        return None
    alphas = [alpha_vector(model, c) if model.normal else _chart_alpha(model, c, chart) for c in cands]
    keys = list(alphas[0])
    low = {e: min(a[e] for a in alphas) for e in keys}
    hits = [c for c, a in zip(cands, alphas) if all(a[e] == low[e] for e in keys)]
    return hits[0] if len(hits) == 1 else None


def _chart_alpha(model, vec, chart):
    return {eta: sum((c * model.alpha_at(iota, eta) for iota, c in vec.items()), Fraction(0))
            for eta in _chart_indices(model, chart)}


# ---------------------------------------------------------------------------
# non-normal charts


def nonnormal_degrees(model, n: int, chart: str) -> dict[Index, int]:
    """Chart-wise degrees: the odd part of ``nu(n)`` on ``X_o``, the even part on ``X_e``."""
    _need_nonnormal(model)
    _check_n(model, n)
    v = nu(model, n)
    part = v.odd if chart == "o" else v.even
    return {idx: part.get(idx, 0) for idx in _chart_indices(model, chart)}


def nonnormal_oracle(model, n: int, chart: str, slack: int = 4, retry: int = 8) -> dict[Index, int]:
    """alpha-minimal vector on one chart with ``sigma(nu) = n`` (chart o) or
    ``tau(nu) = n`` (chart e) mod ``m``."""
    _need_nonnormal(model)
    _check_n(model, n)
    if chart not in ("o", "e"):
        raise ValueError(chart)
    idxs = _chart_indices(model, chart)
    chain = model.chainO if chart == "o" else model.chainE
    weights = [model.lam(i) if chart == "o" else model.mu(i) for i in idxs]
    base = sum(nonnormal_degrees(model, n, chart).values()) + slack
    for b in (base, base + retry):
        cand, best = _alpha_argmin(idxs, model.chainPosition, chain, weights, model.m, n, model.m,
                                   model.alpha_at, b)
        if cand is not None:
            return cand
    raise OracleFailure(f"{model.label} chart {chart}, n={n}: no dominated minimum",
                        {"model": model.label, "n": n, "chart": chart})


def chart_anchor(model, vec: Mapping[Index, int]) -> bool:
    """``m alpha(nu)^{k+1}_1 = sigma(nu)`` on chart o."""
    top = (model.k + 1, 1)
    a = sum((c * model.alpha_at(i, top) for i, c in vec.items()), Fraction(0))
    return model.m * a == sum(c * model.lam(i) for i, c in vec.items())


# ---------------------------------------------------------------------------
# T and T_min


def in_T(model_or_params, n: int, s: int, t: int) -> bool:
    a, d, m = _adm(model_or_params)
    c = d * m * (m - a)
    return s >= 0 and t >= 0 and (s + (c - 1) * t - c * n) % (d * m * m) == 0


def _adm(x):
    if hasattr(x, "order"):
        return x.a, x.d, x.m
    return tuple(int(v) for v in x)


def t_min_bruteforce(model_or_params, n: int) -> set[TPair]:
    """Scan ``0 <= t <= 2n`` with the least admissible ``s`` for each ``t``;
    ``(n, n)`` is always admissible, so the minimum of ``s + t`` is at most ``2n``."""
    a, d, m = _adm(model_or_params)
    r, c = d * m * m, d * m * (m - a)
    best, out = None, set()
    for t in range(2 * n + 1):
        s = (c * n - (c - 1) * t) % r
        if best is None or s + t < best:
            best, out = s + t, {TPair(s, t)}
        elif s + t == best:
            out.add(TPair(s, t))
    return out


def t_min_closed_form(model_or_params, n: int) -> set[TPair]:
    """Closed form of ``T_min``.  The class only depends on ``n mod m``
    (``dm(m - a) m = 0 mod dm^2``), so ``n`` is reduced first."""
    a, d, m = _adm(model_or_params)
    b = m - a
    n %= m
    if n == 0:
        return {TPair(0, 0)}
    q = plus_expand(Fraction(a, b)).terms  # canonical length decides the parity
    k = len(q)
    pq = tables("plus", q, (a, b)).PQ(k - 1)
    if d >= 2 or n < m - pq:
        return {TPair(n, n)}
    if k % 2 == 0:
        return {TPair(n + pq, n - m + pq)}
    return {TPair(n - m + pq, n + pq)}


# ---------------------------------------------------------------------------
# members


def general_member_report(model, n: int) -> list[dict]:
    """Curves of the general member of ``|-nK|``, one record per curve.

    The ``c`` generic curves through one ``E_iota`` are numbered ``1..c``
    and get distinct coefficients ``c_h``; ``side`` says which part of the
    decomposition charges the copy.
    """
    v = nu(model, n)
    tot = v.total
    out = []
    for idx in sorted(tot):
        lam, mu = model.lam(idx), model.mu(idx)
        sides = ["o"] * v.odd.get(idx, 0) + ["e"] * v.even.get(idx, 0)
        for h, side in enumerate(sides, start=1):
            eq = f"z1^{lam} + c{h}*z2^{mu}" if len(sides) > 1 else f"z1^{lam} + z2^{mu}"
            out.append({"curve": idx, "copy": h, "side": side, "exponents": (lam, mu), "equation": eq})
    return out


def member_class_of_nK(model, n: int) -> int:
    """Residue ``n*`` with ``|nK|`` general members given by ``nu(n*)``.
    Returns 0 when ``m | n`` (``nK`` is Cartier, the member is a unit)."""
    if n < 1:
        raise ValueError("n >= 1")
    return (-n) % model.m


def member_weight_check(model, n: int) -> bool:
    """The general member of ``|nK|`` has total semi-invariant weight
    ``-n (s + 1)`` mod ``r`` in the class T case (``s + 1 = dma`` is the
    weight of ``dz1 ^ dz2``); on the charts the congruences mod ``m``."""
    ns = member_class_of_nK(model, n)
    if ns == 0:
        return True
    v = nu(model, ns)
    if model.normal:
        w = sum(c * model.mu(i) for i, c in v.total.items())
        return (w + n * (model.weight_s + 1)) % model.order == 0
    so = sum(c * model.lam(i) for i, c in v.odd.items())
    te = sum(c * model.mu(i) for i, c in v.even.items())
    return (so + n) % model.m == 0 and (te + n) % model.m == 0


def _need_normal(model):
    if not model.normal:
        raise TypeError("class T model required; use the chart-wise functions")


def _need_nonnormal(model):
    if model.normal:
        raise TypeError("non-normal model required")

